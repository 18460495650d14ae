#pragma once

namespace decosim {

/// SI values (CODATA 2018; h, e and k_B are exact by definition).
struct PhysicalConstants {
  double h = 6.62607015e-34;             // Planck constant [J s]
  double hbar = 1.054571817e-34;         // reduced Planck constant [J s]
  double k_B = 1.380649e-23;             // Boltzmann constant [J/K]
  double amu = 1.66053906660e-27;        // atomic mass unit [kg]
  double mu_B = 9.2740100783e-24;        // Bohr magneton [J/T]
  double elementary_charge = 1.602176634e-19;  // [C]
  double Phi_0 = 2.067833848461929e-15;  // flux quantum h/2e [Wb]
};

inline constexpr PhysicalConstants constants{};

}  // namespace decosim
