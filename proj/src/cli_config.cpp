#include "decosim/cli/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace decosim::cli {

namespace {

ParamSpec p_int(std::string name, std::string def, double min, double max, std::string desc) {
  return {std::move(name), ParamType::integer, std::move(def), min, max, {}, std::move(desc)};
}
ParamSpec p_real(std::string name, std::string def, std::optional<double> min,
                 std::optional<double> max, std::string desc) {
  return {std::move(name), ParamType::real, std::move(def), min, max, {}, std::move(desc)};
}
ParamSpec p_text(std::string name, std::string def, std::vector<std::string> choices,
                 std::string desc) {
  return {std::move(name),    ParamType::text, std::move(def), std::nullopt, std::nullopt,
          std::move(choices), std::move(desc)};
}

std::vector<CommandSpec> build_specs() {
  std::vector<CommandSpec> specs;

  specs.push_back(
      {"squid-spectrum",
       "double-well flux spectrum, splitting and localized states",
       {
           p_real("capacitance", "100", 1e-9, std::nullopt, "effective mass C (reduced units)"),
           p_real("critical_current", "2", 1e-9, std::nullopt, "i_c (reduced units)"),
           p_real("phi_ext", "0.5", std::nullopt, std::nullopt, "external flux in Phi_0"),
           p_real("phi_min", "auto", std::nullopt, std::nullopt, "grid start (default phi_ext - 1.5)"),
           p_real("phi_max", "auto", std::nullopt, std::nullopt, "grid end (default phi_ext + 1.5)"),
           p_int("n_points", "1024", 256, 65536, "flux grid points (minimum 256)"),
           p_int("n_levels", "6", 2, 64, "levels to report"),
       }});

  specs.push_back(
      {"squid-tunnel",
       "two-level tunneling with flux-basis pure dephasing",
       {
           p_real("delta_e", "1", 0.0, std::nullopt, "splitting (reduced energy)"),
           p_real("gamma", "0", 0.0, std::nullopt, "pure-dephasing rate"),
           p_real("t_max", "auto", std::nullopt, std::nullopt, "end time (default two periods)"),
           p_int("n_times", "257", 2, 100000, "sample count"),
           p_text("initial", "L", {"L", "R", "cat"}, "initial state"),
       }});

  specs.push_back(
      {"squid-wigner",
       "Wigner snapshots of a dephasing flux cat",
       {
           p_real("capacitance", "300", 1e-9, std::nullopt, "effective mass C"),
           p_real("critical_current", "2", 1e-9, std::nullopt, "i_c"),
           p_real("phi_ext", "0.5", std::nullopt, std::nullopt, "external flux in Phi_0"),
           p_real("phi_min", "auto", std::nullopt, std::nullopt, "grid start"),
           p_real("phi_max", "auto", std::nullopt, std::nullopt, "grid end"),
           p_int("n_points", "512", 256, 8192, "flux grid points"),
           p_real("gamma", "0.2", 0.0, std::nullopt, "pure-dephasing rate"),
           p_real("t_max", "auto", std::nullopt, std::nullopt, "last snapshot (default 5/gamma)"),
           p_int("n_snapshots", "5", 1, 64, "snapshot count"),
           p_int("nx", "0", 0, 4096, "x cells (0 = auto)"),
           p_int("np", "0", 0, 4096, "p cells (0 = auto)"),
       }});

  specs.push_back(
      {"talbot-scan",
       "three-grating fringe scan (wave or ray model)",
       {
           p_real("mass_amu", "840", 1e-9, std::nullopt, "molecule mass [amu]"),
           p_real("velocity", "100", 1e-9, std::nullopt, "beam velocity [m/s]"),
           p_real("period", "1e-6", 1e-12, std::nullopt, "grating period d [m]"),
           p_real("open_fraction", "0.5", 1e-6, 1.0 - 1e-6, "slit open fraction"),
           p_int("n_slits", "16", 16, 256, "aperture slit count"),
           p_real("separation", "auto", std::nullopt, std::nullopt,
                  "grating separation L [m] (default one Talbot length)"),
           p_int("n_scan", "64", 4, 4096, "scan points over one period"),
           p_int("n_angles", "32", 1, 1024, "incoherent fan size"),
           p_real("angular_spread", "auto", std::nullopt, std::nullopt,
                  "fan width [rad] (default d/L)"),
           p_text("model", "wave", {"wave", "ray"}, "wave optics or geometric shadow"),
       }});

  specs.push_back(
      {"talbot-visibility",
       "collisional visibility decay V0 e^{-p/p0}",
       {
           p_real("v0", "1", 0.0, 1.0, "zero-pressure visibility"),
           p_real("temperature", "300", 1e-9, std::nullopt, "gas temperature [K]"),
           p_real("separation", "0.38", 1e-9, std::nullopt, "grating separation L [m]"),
           p_real("sigma_eff", "1e-17", 1e-30, std::nullopt, "effective cross section [m^2]"),
           p_real("p_max", "auto", std::nullopt, std::nullopt, "sweep end (default 5 p0)"),
           p_int("n_points", "101", 2, 100000, "sweep points"),
       }});

  specs.push_back(
      {"bec-cat",
       "two-mode cat under phase damping",
       {
           p_int("n_atoms", "100", 1, 10000, "total atom number N"),
           p_int("n_first", "0", 0, 10000, "first-mode occupation n (<= N/2)"),
           p_real("phase", "0", std::nullopt, std::nullopt, "relative phase phi"),
           p_real("kappa", "1e-3", 0.0, std::nullopt, "phase-damping rate [1/s]"),
           p_real("omega", "0", std::nullopt, std::nullopt, "mode-frequency difference [rad/s]"),
           p_real("t_max", "auto", std::nullopt, std::nullopt,
                  "end time (default 5 coherence times)"),
           p_int("n_times", "101", 2, 100000, "sample count"),
       }});

  specs.push_back(
      {"bec-tau",
       "atom-loss decoherence-time calibration and prediction",
       {
           p_real("scattering_length", "5.3e-9", 1e-15, std::nullopt, "a [m]"),
           p_real("ref_n_noncondensed", "10", 1e-9, std::nullopt, "reference N_nc"),
           p_real("ref_n_atoms", "1e3", 1e-9, std::nullopt, "reference N"),
           p_real("ref_tau", "1e-3", 1e-30, std::nullopt, "reference tau_d [s]"),
           p_real("n_noncondensed", "1e4", 1e-9, std::nullopt, "target N_nc"),
           p_real("n_atoms", "1e7", 1e-9, std::nullopt, "target N"),
           p_int("n_sweep", "25", 2, 1000, "points in the N sweep series"),
       }});

  specs.push_back(
      {"envariance",
       "equal-amplitude certification and Born weights by counting",
       {
           p_int("n_terms", "2", 2, 16, "Schmidt branches (equal-amplitude mode)"),
           p_text("weights", "", {},
                  "rational weights 'm1:m2:...' for fine graining (empty = equal)"),
       }});

  specs.push_back(
      {"darwinism",
       "mutual-information redundancy profile over fragment subsets",
       {
           p_int("n_fragments", "8", 1, 10, "environment fragments"),
           p_real("record_overlap", "0", 0.0, 1.0, "per-fragment branch overlap"),
           p_int("max_fragment_size", "0", 0, 10, "profile up to this size (0 = all)"),
       }});

  specs.push_back(
      {"chain",
       "object-photon-rhodopsin-neuron branching chain",
       {
           p_real("eps_photon", "0", 0.0, 1.0, "photon-stage branch overlap"),
           p_real("eps_rhodopsin", "0", 0.0, 1.0, "rhodopsin-stage branch overlap"),
           p_real("eps_neuron", "0", 0.0, 1.0, "neuron-pattern overlap"),
           p_real("time", "1e-18", 0.0, std::nullopt, "elapsed time [s]"),
           p_real("tau", "1e-20", 1e-40, std::nullopt, "neuronal decoherence time [s]"),
       }});

  specs.push_back({"macro-table", "the built-in macroscopicity catalog", {}});

  return specs;
}

bool parse_integer(const std::string& s, long long& out) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') return false;
  out = v;
  return true;
}

bool parse_real(const std::string& s, double& out) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') return false;
  out = v;
  return true;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

const ParamSpec* CommandSpec::find_param(const std::string& key) const {
  for (const auto& p : params)
    if (p.name == key) return &p;
  return nullptr;
}

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = build_specs();
  return specs;
}

const CommandSpec* find_command(const std::string& name) {
  for (const auto& s : command_specs())
    if (s.name == name) return &s;
  return nullptr;
}

OutputFormat format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw std::invalid_argument("format must be csv or json, got '" + s + "'");
}

std::string to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

double RunConfig::real(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw std::invalid_argument("missing parameter " + key);
  double v = 0.0;
  if (!parse_real(it->second, v))
    throw std::invalid_argument("parameter " + key + " is not a number: " + it->second);
  return v;
}

long long RunConfig::integer(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw std::invalid_argument("missing parameter " + key);
  long long v = 0;
  if (!parse_integer(it->second, v))
    throw std::invalid_argument("parameter " + key + " is not an integer: " + it->second);
  return v;
}

const std::string& RunConfig::text(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw std::invalid_argument("missing parameter " + key);
  return it->second;
}

bool RunConfig::is_auto(const std::string& key) const { return text(key) == "auto"; }

void RunConfig::resolve_auto(const std::string& key, double value) {
  if (!is_auto(key)) return;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  values[key] = buf;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " is not 'key = value': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + " has an empty key");
    if (out.count(key))
      throw std::invalid_argument("duplicate config key " + key);
    out[key] = value;
  }
  return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::vector<Diagnostic> validate_params(const CommandSpec& spec,
                                        const std::map<std::string, std::string>& params) {
  std::vector<Diagnostic> out;
  for (const auto& [key, value] : params) {
    if (key == "command") continue;  // routing key, checked by the caller
    const ParamSpec* p = spec.find_param(key);
    if (p == nullptr) {
      out.push_back({key, "unknown key '" + key + "' for command " + spec.name});
      continue;
    }
    if (value == "auto" && p->default_value == "auto") continue;
    if (p->type == ParamType::text) {
      if (!p->choices.empty() &&
          std::find(p->choices.begin(), p->choices.end(), value) == p->choices.end())
        out.push_back({key, key + " must be one of the documented choices, got '" + value + "'"});
      continue;
    }
    double numeric = 0.0;
    bool ok = false;
    if (p->type == ParamType::integer) {
      long long v = 0;
      ok = parse_integer(value, v);
      numeric = double(v);
    } else {
      ok = parse_real(value, numeric);
    }
    if (!ok) {
      out.push_back({key, key + " is not a valid " +
                              (p->type == ParamType::integer ? std::string("integer")
                                                             : std::string("number")) +
                              ": '" + value + "'"});
      continue;
    }
    if (p->min && numeric < *p->min)
      out.push_back({key, key + " = " + value + " is below the minimum " +
                              std::to_string(*p->min)});
    if (p->max && numeric > *p->max)
      out.push_back({key, key + " = " + value + " is above the maximum " +
                              std::to_string(*p->max)});
  }
  return out;
}

RunConfig resolve_config(const std::string& command,
                         const std::map<std::string, std::string>& file_params,
                         const std::vector<std::pair<std::string, std::string>>& overrides,
                         const std::string& out_path, OutputFormat format, std::uint64_t seed) {
  const CommandSpec* spec = find_command(command);
  if (spec == nullptr) throw std::invalid_argument("unknown command " + command);

  if (auto it = file_params.find("command");
      it != file_params.end() && it->second != command)
    throw std::invalid_argument("config file is for command '" + it->second +
                                "' but '" + command + "' was requested");

  std::map<std::string, std::string> merged = file_params;
  merged.erase("command");
  for (const auto& [k, v] : overrides) merged[k] = v;  // overrides win

  const auto diagnostics = validate_params(*spec, merged);
  if (!diagnostics.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& d : diagnostics) msg += "\n  " + d.message;
    throw std::invalid_argument(msg);
  }

  RunConfig config;
  config.command = command;
  config.out_path = out_path;
  config.format = format;
  config.seed = seed;
  for (const auto& p : spec->params) config.values[p.name] = p.default_value;
  for (const auto& [k, v] : merged) config.values[k] = v;
  return config;
}

}  // namespace decosim::cli
