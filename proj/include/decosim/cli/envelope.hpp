#pragma once

#include <string>
#include <utility>
#include <vector>

#include "decosim/cli/config.hpp"

namespace decosim::cli {

/// One output column; either reals (formatted %.14e) or text labels.
struct Column {
  enum class Kind { real, text };
  std::string name;
  Kind kind = Kind::real;
  std::vector<double> reals;
  std::vector<std::string> texts;

  std::size_t size() const { return kind == Kind::real ? reals.size() : texts.size(); }
};

/// Everything a run emits: the resolved config echo (so any result file
/// can reproduce itself), named series, and scalar summaries. Rendering
/// is byte-deterministic for a fixed (config, seed, version).
struct ResultEnvelope {
  std::string tool_version;
  std::string command;
  std::vector<std::pair<std::string, std::string>> config_echo;  // sorted by key
  std::vector<Column> columns;
  std::vector<std::pair<std::string, double>> summary;

  void add_series(std::string name, std::vector<double> values);
  void add_labels(std::string name, std::vector<std::string> values);
  void add_summary(std::string key, double value);

  void validate() const;  // equal column lengths
  std::string to_csv() const;
  std::string to_json() const;
  std::string render(OutputFormat format) const;
};

ResultEnvelope make_envelope(const RunConfig& config);

/// Formats with 15 significant digits, scientific notation.
std::string format_real(double v);

/// Writes via a temp file plus rename so readers never see partial output.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace decosim::cli
