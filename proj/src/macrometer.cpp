#include "decosim/macrometer.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace decosim::macrometer {

std::string to_string(ExperimentalStatus status) {
  return status == ExperimentalStatus::achieved ? "achieved" : "proposed";
}

ExperimentalStatus status_from_string(const std::string& s) {
  if (s == "achieved") return ExperimentalStatus::achieved;
  if (s == "proposed") return ExperimentalStatus::proposed;
  throw std::invalid_argument("unknown experimental status: " + s);
}

double s_ext(double extensive_difference, double reference, const std::string& unit_difference,
             const std::string& unit_reference) {
  if (reference <= 0.0) throw std::invalid_argument("reference must be > 0");
  if (extensive_difference <= 0.0)
    throw std::invalid_argument("extensive difference must be > 0");
  if (!unit_difference.empty() && !unit_reference.empty() && unit_difference != unit_reference)
    throw std::invalid_argument("unit mismatch: " + unit_difference + " vs " + unit_reference);
  return extensive_difference / reference;
}

double s_ent(double constituent_count) {
  if (constituent_count < 1.0) throw std::invalid_argument("constituent count must be >= 1");
  return constituent_count;
}

MacroscopicityRecord make_record(std::string name, double s_ext_value, std::string s_ext_basis,
                                 double s_ent_value, ExperimentalStatus status,
                                 std::string notes) {
  if (s_ext_value <= 0.0 || s_ent_value <= 0.0)
    throw std::invalid_argument("measures must be positive");
  MacroscopicityRecord r;
  r.name = std::move(name);
  r.s_ext = s_ext_value;
  r.s_ext_basis = std::move(s_ext_basis);
  r.s_ent = s_ent_value;
  r.product = s_ext_value * s_ent_value;
  r.status = status;
  r.notes = std::move(notes);
  return r;
}

std::vector<MacroscopicityRecord> builtin_catalog() {
  std::vector<MacroscopicityRecord> out;
  out.push_back(make_record("SQUID", 1e10, "total magnetic moment / Bohr magneton", 1e9,
                            ExperimentalStatus::achieved,
                            "flux states differ by 2-3 uA; ~1e9 Cooper pairs"));
  out.push_back(make_record("C70", 1e6, "path separation ~1 mm / molecule size ~1 nm", 1e3,
                            ExperimentalStatus::achieved,
                            "constituents 3 x 6 x 70 ~ 1e3"));
  out.push_back(make_record("Bose-Einstein", 1e7, "angular momentum difference / hbar", 1e9,
                            ExperimentalStatus::proposed,
                            "two-species 87Rb; s_ent = 100 N at N = 1e7"));
  out.push_back(make_record("neuron", 1e2, "membrane thickness ~10 nm / ion size ~0.1 nm", 3e7,
                            ExperimentalStatus::proposed,
                            "s_ext range 1e2-1e3; lower bound stored"));
  return out;
}

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::string catalog_to_csv(const std::vector<MacroscopicityRecord>& records) {
  std::ostringstream os;
  os << "name,s_ext,s_ent,product,status,basis,notes\n";
  for (const auto& r : records) {
    // Fields are comma-free by construction; keep the format trivially parseable.
    os << r.name << ',' << format_value(r.s_ext) << ',' << format_value(r.s_ent) << ','
       << format_value(r.product) << ',' << to_string(r.status) << ',' << r.s_ext_basis << ','
       << r.notes << '\n';
  }
  return os.str();
}

std::vector<MacroscopicityRecord> catalog_from_csv(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line) || line != "name,s_ext,s_ent,product,status,basis,notes")
    throw std::invalid_argument("unexpected catalog CSV header");
  std::vector<MacroscopicityRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() != 7) throw std::invalid_argument("bad catalog row: " + line);
    MacroscopicityRecord r;
    r.name = f[0];
    r.s_ext = std::stod(f[1]);
    r.s_ent = std::stod(f[2]);
    r.product = std::stod(f[3]);
    r.status = status_from_string(f[4]);
    r.s_ext_basis = f[5];
    r.notes = f[6];
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace decosim::macrometer
