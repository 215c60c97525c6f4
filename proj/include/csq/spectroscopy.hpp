#pragma once

// Diatomic vibrational term values (cm^-1), band frequencies and isotopic
// displacements under three conventions:
//   QuantumMechanical  G(n + 1/2)
//   BohrSommerfeld     no half quantum, constants referred to the lowest level
//   CoherentState      QM plus gamma * omega_e, gamma = omega_e / (16 mu c^2)

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace csq {

struct ElectronicState {
  double omega_e = 0.0;
  double omega_e_x_e = 0.0;
  double omega_e_y_e = 0.0;
  double T_min = 0.0;

  /// Violations of omega_e > 0 and omega_e >> omega_e x_e >> |omega_e y_e|.
  std::vector<std::string> warnings() const;
};

/// Reduced masses in u.
struct IsotopePair {
  double mu = 1.0;
  double mu_iso = 1.0;

  IsotopePair(double mu, double mu_iso);
  static IsotopePair from_atoms(double m1, double m2, double m1_iso, double m2_iso);

  double rho() const;
};

double reduced_mass(double m1, double m2);

struct QuantumMechanical {};
struct BohrSommerfeld {};
struct CoherentState {
  double reduced_mass_u = 1.0;
};
using Convention = std::variant<QuantumMechanical, BohrSommerfeld, CoherentState>;

struct BandSystem {
  ElectronicState ground;
  ElectronicState excited;
  Convention convention = QuantumMechanical{};
};

/// u c^2 expressed in cm^-1.
double atomic_mass_unit_wavenumber();

/// gamma = omega_e / (16 mu c^2) with mu in u.
double cs_gamma(double omega_e, double reduced_mass_u);

/// G(v) = omega_e v - omega_e x_e v^2 + omega_e y_e v^3; the CS convention adds gamma omega_e.
double term_value(const ElectronicState& s, double v, const Convention& conv);

struct ZeroReferenced {
  double omega0 = 0.0;
  double omega0_x0 = 0.0;
  double omega0_y0 = 0.0;
};

/// omega0 = we - wexe + 3/4 weye, omega0 x0 = wexe - 3/2 weye, omega0 y0 = weye.
ZeroReferenced zero_referenced_constants(const ElectronicState& s);
ElectronicState from_zero_referenced(const ZeroReferenced& z, double T_min);

/// G(n + 1/2) - G(1/2) = omega0 n - omega0 x0 n^2 + omega0 y0 n^3.
double zero_referenced_level(const ElectronicState& s, int n);

/// T_min plus the vibrational energy of level n under the convention.
double level(const ElectronicState& s, int n, const Convention& conv);

double band_frequency(const BandSystem& sys, int n_upper, int n_lower, const Convention& conv);
double band_frequency(const BandSystem& sys, int n_upper, int n_lower);

/// omega_e -> rho omega_e, omega_e x_e -> rho^2 omega_e x_e, omega_e y_e -> rho^3 omega_e y_e.
ElectronicState isotope_scaled_state(const ElectronicState& s, double rho);
ElectronicState isotope_scaled_state(const ElectronicState& s, const IsotopePair& pair);
BandSystem isotopologue(const BandSystem& sys, const IsotopePair& pair);

/// nu_iso(n', n) - nu(n', n). Under Bohr-Sommerfeld the zero-referenced
/// constants are the ones scaled by rho, rho^2, rho^3; under CS the
/// isotopologue's gamma uses mu_iso.
double isotopic_displacement(const BandSystem& sys, const IsotopePair& pair, int n_upper,
                             int n_lower, const Convention& conv);

struct ProgressionFit {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double rho = 1.0;
  double max_residual = 0.0;
  std::vector<double> residuals;

  /// A (n' + 1/2) + B (n' + 1/2)^2 + C.
  double predict_qm(double n_upper) const;
  /// Same constants without half quanta: (A + B/(1 + rho)) n' + B n'^2.
  double predict_bs(double n_upper) const;
  /// Upper-state constants implied by A and B.
  double omega_e_upper() const;
  double omega_e_x_e_upper() const;
  /// Lower-state omega_e consistent with C for a chosen omega_e x_e.
  double omega_e_lower(double omega_e_x_e_lower) const;
};

/// Least squares of value = A (n' + 1/2) + B (n' + 1/2)^2 + C over (n', value)
/// points; needs at least three distinct n'.
ProgressionFit fit_progression_constants(const std::vector<std::pair<int, double>>& points,
                                         double rho);

}  // namespace csq
