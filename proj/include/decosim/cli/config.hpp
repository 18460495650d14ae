#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace decosim::cli {

enum class ParamType { integer, real, text };

struct ParamSpec {
  std::string name;
  ParamType type = ParamType::real;
  std::string default_value;  // textual; "auto" means resolved by the handler
  std::optional<double> min;
  std::optional<double> max;
  std::vector<std::string> choices;  // for text params; empty = free-form
  std::string description;
};

struct CommandSpec {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;

  const ParamSpec* find_param(const std::string& key) const;
};

const std::vector<CommandSpec>& command_specs();
const CommandSpec* find_command(const std::string& name);

enum class OutputFormat { csv, json };
OutputFormat format_from_string(const std::string& s);
std::string to_string(OutputFormat format);

/// A fully resolved run: every schema parameter has a value ("auto" ones
/// are finalized by the command handler before anything is emitted).
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> values;
  std::string out_path;  // empty writes to stdout
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 0;

  double real(const std::string& key) const;
  long long integer(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  bool is_auto(const std::string& key) const;
  /// Fills an "auto" value with the handler-computed default.
  void resolve_auto(const std::string& key, double value);
};

struct Diagnostic {
  std::string key;
  std::string message;
};

/// `key = value` lines, '#' comments, blank lines ignored.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Schema check: unknown keys, unparsable numbers, range violations.
std::vector<Diagnostic> validate_params(const CommandSpec& spec,
                                        const std::map<std::string, std::string>& params);

/// Defaults, then file values, then --set overrides; throws
/// std::invalid_argument naming the offending key on any diagnostic.
RunConfig resolve_config(const std::string& command,
                         const std::map<std::string, std::string>& file_params,
                         const std::vector<std::pair<std::string, std::string>>& overrides,
                         const std::string& out_path, OutputFormat format, std::uint64_t seed);

}  // namespace decosim::cli
