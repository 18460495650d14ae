#pragma once

#include <string>
#include <vector>

namespace decosim::macrometer {

enum class ExperimentalStatus { achieved, proposed };

std::string to_string(ExperimentalStatus status);
ExperimentalStatus status_from_string(const std::string& s);

/// One "how big a cat" bookkeeping row: the extensive difference between
/// the two superposed states (relative to a microscopic reference), the
/// entanglement measure (constituent count), and their product.
struct MacroscopicityRecord {
  std::string name;
  double s_ext = 0.0;
  std::string s_ext_basis;  // which quantity, against which reference unit
  double s_ent = 0.0;
  double product = 0.0;  // s_ext * s_ent
  ExperimentalStatus status = ExperimentalStatus::proposed;
  std::string notes;
};

/// Ratio of an extensive difference to a microscopic reference in the
/// same units. The unit labels, when given, must agree.
double s_ext(double extensive_difference, double reference, const std::string& unit_difference = "",
             const std::string& unit_reference = "");

/// Constituent count, kept as an operation so callers log provenance.
double s_ent(double constituent_count);

MacroscopicityRecord make_record(std::string name, double s_ext_value, std::string s_ext_basis,
                                 double s_ent_value, ExperimentalStatus status,
                                 std::string notes = "");

/// The four catalogued instances: SQUID and C70 (achieved), the two-mode
/// condensate (proposed), and the firing/resting neuron estimate.
/// Order-of-magnitude entries are stored as exact powers of ten; ranges
/// collapse to their lower bound with the range kept in the notes.
std::vector<MacroscopicityRecord> builtin_catalog();

/// CSV with columns name,s_ext,s_ent,product,status,basis,notes.
std::string catalog_to_csv(const std::vector<MacroscopicityRecord>& records);
std::vector<MacroscopicityRecord> catalog_from_csv(const std::string& csv);

}  // namespace decosim::macrometer
