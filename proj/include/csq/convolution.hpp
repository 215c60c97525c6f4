#pragma once

// Coherent-state quantization of functions of one canonical variable, where it
// reduces to a Gaussian convolution followed by spectral calculus:
//   A_{f(q)} = f~(Q) smoothed at ell,  A_{f(p)} = f~(P) smoothed at hbar/ell,
// and the Hamiltonians assembled from these pieces.

#include <functional>
#include <optional>
#include <vector>

#include "csq/fock.hpp"
#include "csq/potential.hpp"

namespace csq {

namespace codata {
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
inline constexpr double c = 299792458.0;               // m / s
inline constexpr double electron_rest_energy_eV = 510998.95;
}  // namespace codata

/// Scales with ell = ell_C / 2 = hbar / (2 m c), so wp = 2 m c.
PhaseSpaceScales compton_scales(double m, double c, double hbar = codata::hbar);

/// g(X) on the leading block, with X = Q (or P) of the Fock basis of length
/// `basis_length` assembled at trunc.assembled().
FockOperator function_of_position(const std::function<double(double)>& g,
                                  const TruncationSpec& trunc, double hbar, double basis_length);
FockOperator function_of_momentum(const std::function<double(double)>& g,
                                  const TruncationSpec& trunc, double hbar, double basis_length);

/// f~(Q) with f~ = gaussian_smooth(f, ell). The basis length defaults to ell.
FockOperator operator_of_position_function(const Potential1D& f, const TruncationSpec& trunc,
                                           const PhaseSpaceScales& scales,
                                           std::optional<double> basis_length = {});
/// f~(P) with f~ = gaussian_smooth(f, hbar/ell).
FockOperator operator_of_momentum_function(const Potential1D& f, const TruncationSpec& trunc,
                                           const PhaseSpaceScales& scales,
                                           std::optional<double> basis_length = {});

enum class MixedForm { p_times_f_of_q, q_times_f_of_p };

/// (P f~(Q) + f~(Q) P)/2 or (Q f~(P) + f~(P) Q)/2.
FockOperator quantize_mixed(const Potential1D& f, MixedForm which, const TruncationSpec& trunc,
                            const PhaseSpaceScales& scales,
                            std::optional<double> basis_length = {});

struct SemiclassicalReport {
  double residual = 0.0;  // sup_q |f~ - f - (ell^2/4) f''|
  bool valid = true;      // false when f has no second derivative
  double ell = 0.0;
};

/// Residual of the second-order expansion of the smoothing on `grid`
/// (default: 201 points spanning the natural scale of f).
SemiclassicalReport semiclassical_residual(const Potential1D& f, double ell,
                                           std::vector<double> grid = {});

/// Successive ratios residual(ell / 2^k) / residual(ell / 2^{k+1}), k < halvings.
std::vector<double> darwin_scaling_ratios(const Potential1D& f, double ell, int halvings);

struct VectorPotential1D {
  Potential1D shape;
  double charge = 1.0;
};

struct HamiltonianSpec {
  double mass = 1.0;
  PhaseSpaceScales scales = PhaseSpaceScales::dimensionless();
  std::optional<Potential1D> potential;
  std::optional<VectorPotential1D> vector_potential;
  double classical_proper_energy = 0.0;
  bool include_rest_mass = true;
  /// Length of the Fock basis used for Q and P; defaults to scales.ell().
  std::optional<double> basis_length;
};

/// Throws ConfigError for m <= 0, or for include_rest_mass without c or with
/// ell != hbar/(2 m c).
void validate(const HamiltonianSpec& spec);

/// (P - e A~(Q))^2/2m + V~(Q) + (e^2/2m)((A^2)~ - A~^2)(Q) + hbar^2/(4 m ell^2) + E0.
FockOperator build_hamiltonian(const HamiltonianSpec& spec, const TruncationSpec& trunc);
FockOperator build_hamiltonian(const HamiltonianSpec& spec, int dim);

/// Canonical counterpart (P - e A(Q))^2/2m + V(Q) + E0, no smoothing.
FockOperator build_canonical_hamiltonian(const HamiltonianSpec& spec, const TruncationSpec& trunc);
FockOperator build_canonical_hamiltonian(const HamiltonianSpec& spec, int dim);

/// hbar^2/(4 m ell^2) + E0: the constant the CS Hamiltonian carries on top of
/// the canonical one apart from the potential smoothing.
double proper_energy(const HamiltonianSpec& spec);

}  // namespace csq
