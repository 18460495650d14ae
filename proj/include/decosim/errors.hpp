#pragma once

#include <stdexcept>
#include <string>

namespace decosim {

/// Numerical failure inside a solver or integrator (non-convergence,
/// trace drift, ...). Distinct from argument errors so the CLI can map
/// it to its own exit code.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// The requested parameters fall outside the regime the model is built
/// for (e.g. the potential has no double well, no bound doublet).
class ModelRegimeError : public std::runtime_error {
 public:
  explicit ModelRegimeError(const std::string& what) : std::runtime_error(what) {}
};

/// Spatial or spectral sampling cannot resolve the requested physics.
class ResolutionError : public std::runtime_error {
 public:
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

/// An initial state has too much weight outside the retained modes.
class TruncationError : public NumericError {
 public:
  TruncationError(const std::string& what, double residual_weight)
      : NumericError(what), residual_weight(residual_weight) {}
  double residual_weight;
};

/// Dimension product exceeds the configured hard cap.
class SizeError : public std::invalid_argument {
 public:
  explicit SizeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Factor dimensions do not match the matrix they describe.
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// The state is not expressed in a basis the transform supports.
class UnsupportedBasisError : public std::invalid_argument {
 public:
  explicit UnsupportedBasisError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace decosim
