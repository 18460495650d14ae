#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "decosim/cli/config.hpp"
#include "decosim/cli/envelope.hpp"
#include "decosim/cli/run.hpp"

using namespace decosim::cli;

namespace {

RunConfig resolved(const std::string& command,
                   const std::vector<std::pair<std::string, std::string>>& overrides = {}) {
  return resolve_config(command, {}, overrides, "", OutputFormat::csv, 0);
}

}  // namespace

TEST_CASE("config files parse key = value lines with comments") {
  const auto params = parse_config_text(
      "# tunneling run\n"
      "command = squid-tunnel\n"
      "delta_e = 0.5   # reduced units\n"
      "\n"
      "gamma = 0\n");
  CHECK(params.at("command") == "squid-tunnel");
  CHECK(params.at("delta_e") == "0.5");
  CHECK(params.at("gamma") == "0");
  CHECK_THROWS_AS(parse_config_text("no equals sign here\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("a = 1\na = 2\n"), std::invalid_argument);
}

TEST_CASE("unknown keys are rejected by name") {
  const CommandSpec* spec = find_command("squid-tunnel");
  REQUIRE(spec != nullptr);
  const auto diagnostics = validate_params(*spec, {{"delta_eee", "0.5"}});
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].key == "delta_eee");
  CHECK(diagnostics[0].message.find("delta_eee") != std::string::npos);
}

TEST_CASE("range violations cite the limit") {
  const CommandSpec* spec = find_command("squid-spectrum");
  REQUIRE(spec != nullptr);
  const auto diagnostics = validate_params(*spec, {{"n_points", "10"}});
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].message.find("256") != std::string::npos);

  CHECK_THROWS_WITH_AS(resolved("squid-spectrum", {{"n_points", "10"}}),
                       doctest::Contains("256"), std::invalid_argument);
}

TEST_CASE("config file command must match the requested command") {
  CHECK_THROWS_AS(
      resolve_config("squid-tunnel", {{"command", "bec-cat"}}, {}, "", OutputFormat::csv, 0),
      std::invalid_argument);
}

TEST_CASE("overrides win over defaults and the echo contains resolved values") {
  RunConfig config = resolved("squid-tunnel", {{"delta_e", "2"}});
  CHECK(config.real("delta_e") == 2.0);
  const ResultEnvelope env = run_command(config);
  bool saw_t_max = false;
  for (const auto& [k, v] : env.config_echo) {
    CHECK(v != "auto");  // every auto default resolved before emission
    if (k == "param.t_max") saw_t_max = true;
  }
  CHECK(saw_t_max);
}

TEST_CASE("squid-tunnel emits p_l matching the closed form at gamma = 0") {
  const ResultEnvelope env =
      run_command(resolved("squid-tunnel", {{"gamma", "0"}, {"n_times", "33"}}));
  const std::vector<double>*p_l = nullptr, *closed = nullptr;
  for (const auto& c : env.columns) {
    if (c.name == "p_l") p_l = &c.reals;
    if (c.name == "p_l_closed_form") closed = &c.reals;
  }
  REQUIRE(p_l != nullptr);
  REQUIRE(closed != nullptr);
  for (std::size_t i = 0; i < p_l->size(); ++i)
    CHECK(std::abs((*p_l)[i] - (*closed)[i]) < 1e-6);
}

TEST_CASE("talbot-visibility hits 1/e at the decoherence pressure") {
  const ResultEnvelope env = run_command(resolved("talbot-visibility"));
  const std::vector<double>*pressure = nullptr, *ratio = nullptr;
  double p0 = 0.0;
  for (const auto& c : env.columns) {
    if (c.name == "pressure") pressure = &c.reals;
    if (c.name == "visibility_ratio") ratio = &c.reals;
  }
  for (const auto& [k, v] : env.summary)
    if (k == "p0") p0 = v;
  REQUIRE(pressure != nullptr);
  REQUIRE(ratio != nullptr);
  REQUIRE(p0 > 0.0);
  // default sweep: 101 points over [0, 5 p0]; index 20 is exactly p0
  CHECK(std::abs((*pressure)[20] - p0) < 1e-25);
  CHECK(std::abs((*ratio)[20] - std::exp(-1.0)) < 1e-12);
}

TEST_CASE("macro-table CSV embeds the catalog") {
  RunConfig config = resolved("macro-table");
  const ResultEnvelope env = run_command(config);
  const std::string csv = env.to_csv();
  CHECK(csv.find("SQUID,1.00000000000000e+10,1.00000000000000e+09,1.00000000000000e+19") !=
        std::string::npos);
  CHECK(csv.find("name,s_ext,s_ent,product,status,basis,notes") != std::string::npos);
}

TEST_CASE("envelope JSON is valid and carries series plus summary") {
  const ResultEnvelope env = run_command(resolved("chain", {{"eps_photon", "0.5"},
                                                            {"eps_rhodopsin", "0.2"},
                                                            {"eps_neuron", "1"}}));
  const auto j = nlohmann::json::parse(env.to_json());
  CHECK(j.at("tool_version").get<std::string>() == "0.1.0");
  CHECK(j.at("summary").at("coherence_abs").get<double>() == doctest::Approx(0.05));
  CHECK(j.at("summary").at("product_law").get<double>() == doctest::Approx(0.05));
  CHECK(j.at("labels").at("fragment").size() == 5);
}

TEST_CASE("every command renders deterministically") {
  for (const auto& spec : command_specs()) {
    std::vector<std::pair<std::string, std::string>> overrides;
    if (spec.name == "squid-spectrum" || spec.name == "squid-wigner")
      overrides.push_back({"n_points", "256"});
    if (spec.name == "darwinism") overrides.push_back({"n_fragments", "5"});
    RunConfig config = resolve_config(spec.name, {}, overrides, "", OutputFormat::csv, 7);
    const std::string a = run_command(config).render(OutputFormat::csv);
    const std::string b = run_command(config).render(OutputFormat::csv);
    CHECK(a == b);
    const std::string ja = run_command(config).render(OutputFormat::json);
    const std::string jb = run_command(config).render(OutputFormat::json);
    CHECK(ja == jb);
  }
}

TEST_CASE("atomic writes land complete files") {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "decosim_test_output.csv";
  write_atomic(path.string(), "hello\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "hello\n");
  std::filesystem::remove(path);
}

TEST_CASE("bec-cat series follows the closed-form coherence") {
  const ResultEnvelope env = run_command(
      resolved("bec-cat", {{"n_atoms", "100"}, {"kappa", "0.001"}, {"n_times", "11"}}));
  const std::vector<double>*ts = nullptr, *coh = nullptr;
  for (const auto& c : env.columns) {
    if (c.name == "t") ts = &c.reals;
    if (c.name == "coherence_abs") coh = &c.reals;
  }
  REQUIRE(ts != nullptr);
  REQUIRE(coh != nullptr);
  for (std::size_t i = 0; i < ts->size(); ++i)
    CHECK(std::abs((*coh)[i] - 0.5 * std::exp(-1e4 * 0.001 * (*ts)[i])) < 1e-12);
}

TEST_CASE("envariance command counts rational weights") {
  const ResultEnvelope env = run_command(resolved("envariance", {{"weights", "1:4"}}));
  double denom = 0.0, certified = 0.0;
  for (const auto& [k, v] : env.summary) {
    if (k == "denominator") denom = v;
    if (k == "certified") certified = v;
  }
  CHECK(denom == 5.0);
  CHECK(certified == 1.0);
  const std::vector<double>* probs = nullptr;
  for (const auto& c : env.columns)
    if (c.name == "probability") probs = &c.reals;
  REQUIRE(probs != nullptr);
  CHECK((*probs)[0] == 1.0 / 5.0);
  CHECK((*probs)[1] == 4.0 / 5.0);

  CHECK_THROWS_AS(run_command(resolved("envariance", {{"weights", "1:x"}})),
                  std::invalid_argument);
}
