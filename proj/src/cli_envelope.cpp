#include "decosim/cli/envelope.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "decosim/version.hpp"

namespace decosim::cli {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

ResultEnvelope make_envelope(const RunConfig& config) {
  ResultEnvelope env;
  env.tool_version = kToolVersion;
  env.command = config.command;
  env.config_echo.emplace_back("command", config.command);
  env.config_echo.emplace_back("format", to_string(config.format));
  env.config_echo.emplace_back("seed", std::to_string(config.seed));
  for (const auto& [k, v] : config.values)  // std::map iterates sorted
    env.config_echo.emplace_back("param." + k, v);
  return env;
}

void ResultEnvelope::add_series(std::string name, std::vector<double> values) {
  Column c;
  c.name = std::move(name);
  c.kind = Column::Kind::real;
  c.reals = std::move(values);
  columns.push_back(std::move(c));
}

void ResultEnvelope::add_labels(std::string name, std::vector<std::string> values) {
  Column c;
  c.name = std::move(name);
  c.kind = Column::Kind::text;
  c.texts = std::move(values);
  columns.push_back(std::move(c));
}

void ResultEnvelope::add_summary(std::string key, double value) {
  summary.emplace_back(std::move(key), value);
}

void ResultEnvelope::validate() const {
  if (columns.empty()) return;
  const std::size_t rows = columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows)
      throw std::logic_error("column " + c.name + " has mismatched length");
}

std::string ResultEnvelope::to_csv() const {
  validate();
  std::ostringstream os;
  os << "# decosim " << tool_version << "\n";
  for (const auto& [k, v] : config_echo) os << "# " << k << " = " << v << "\n";
  for (const auto& [k, v] : summary) os << "# summary." << k << " = " << format_real(v) << "\n";
  if (columns.empty()) return os.str();

  for (std::size_t i = 0; i < columns.size(); ++i)
    os << (i ? "," : "") << columns[i].name;
  os << "\n";
  const std::size_t rows = columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) os << ",";
      if (columns[i].kind == Column::Kind::real)
        os << format_real(columns[i].reals[r]);
      else
        os << columns[i].texts[r];
    }
    os << "\n";
  }
  return os.str();
}

std::string ResultEnvelope::to_json() const {
  validate();
  nlohmann::ordered_json j;
  j["tool_version"] = tool_version;
  j["command"] = command;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config_echo) cfg[k] = v;
  j["config"] = std::move(cfg);
  nlohmann::ordered_json series = nlohmann::ordered_json::object();
  nlohmann::ordered_json labels = nlohmann::ordered_json::object();
  for (const auto& c : columns) {
    if (c.kind == Column::Kind::real)
      series[c.name] = c.reals;
    else
      labels[c.name] = c.texts;
  }
  j["series"] = std::move(series);
  if (!labels.empty()) j["labels"] = std::move(labels);
  nlohmann::ordered_json sum = nlohmann::ordered_json::object();
  for (const auto& [k, v] : summary) sum[k] = v;
  j["summary"] = std::move(sum);
  return j.dump(2) + "\n";
}

std::string ResultEnvelope::render(OutputFormat format) const {
  return format == OutputFormat::csv ? to_csv() : to_json();
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace decosim::cli
