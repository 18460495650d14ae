#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "decosim/cli/config.hpp"
#include "decosim/cli/envelope.hpp"
#include "decosim/cli/run.hpp"
#include "decosim/errors.hpp"
#include "decosim/version.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "key = value configuration file");
  cmd->add_option("--set", opt.sets, "override, key=value (repeatable; wins over the file)");
  cmd->add_option("--out", opt.out_path, "output path (default: stdout)");
  cmd->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", opt.seed, "seed for sampled subsets");
}

std::vector<std::pair<std::string, std::string>> parse_overrides(
    const std::vector<std::string>& sets) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--set expects key=value, got '" + s + "'");
    out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  return out;
}

int execute(const std::string& command, const CommonOptions& opt) {
  std::map<std::string, std::string> file_params;
  if (!opt.config_path.empty())
    file_params = decosim::cli::parse_config_file(opt.config_path);

  decosim::cli::RunConfig config = decosim::cli::resolve_config(
      command, file_params, parse_overrides(opt.sets), opt.out_path,
      decosim::cli::format_from_string(opt.format), opt.seed);

  const decosim::cli::ResultEnvelope env = decosim::cli::run_command(std::move(config));
  const std::string rendered = env.render(decosim::cli::format_from_string(opt.format));
  if (opt.out_path.empty())
    std::cout << rendered;
  else
    decosim::cli::write_atomic(opt.out_path, rendered);
  return 0;
}

int execute_validate(const CommonOptions& opt) {
  if (opt.config_path.empty())
    throw std::invalid_argument("validate requires --config");
  const auto params = decosim::cli::parse_config_file(opt.config_path);
  const auto it = params.find("command");
  if (it == params.end())
    throw std::invalid_argument("config file must name its command (command = ...)");
  const decosim::cli::CommandSpec* spec = decosim::cli::find_command(it->second);
  if (spec == nullptr)
    throw std::invalid_argument("unknown command " + it->second);
  const auto diagnostics = decosim::cli::validate_params(*spec, params);
  if (!diagnostics.empty()) {
    for (const auto& d : diagnostics) std::cerr << "error: " << d.message << "\n";
    return 2;
  }
  std::cout << "ok: " << it->second << " configuration is valid\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decosim: decoherence and macroscopic-superposition models"};
  app.set_version_flag("--version", std::string(decosim::kToolVersion));
  app.require_subcommand(1);

  std::map<const CLI::App*, CommonOptions> options;
  std::vector<CLI::App*> run_commands;
  for (const auto& spec : decosim::cli::command_specs()) {
    CLI::App* cmd = app.add_subcommand(spec.name, spec.description);
    add_common(cmd, options[cmd]);
    run_commands.push_back(cmd);
  }
  CLI::App* validate = app.add_subcommand("validate", "schema-check a config file");
  add_common(validate, options[validate]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return execute_validate(options[validate]);
    for (CLI::App* cmd : run_commands)
      if (cmd->parsed()) return execute(cmd->get_name(), options[cmd]);
    std::cerr << "error: no command given\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
