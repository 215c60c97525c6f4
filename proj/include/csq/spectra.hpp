#pragma once

// Low-lying spectra of truncated Hamiltonians with an N -> 2N convergence check,
// the analytic CS harmonic-oscillator levels, and canonical-vs-CS comparisons.

#include <functional>
#include <utility>
#include <vector>

#include "csq/convolution.hpp"
#include "csq/fock.hpp"

namespace csq {

using HamiltonianBuilder = std::function<FockOperator(int dim)>;

struct SpectrumResult {
  std::vector<double> eigenvalues;  // lowest k at the larger truncation, ascending
  int converged_count = 0;
  std::pair<int, int> dims{0, 0};   // (N, 2N) of the final comparison
  std::vector<double> deltas;       // |lambda_i(N) - lambda_i(2N)|
};

/// Starts at N = max(8k, 64) (or start_dim if larger) and doubles until the
/// lowest k eigenvalues move by less than tol. Throws ConvergenceError once
/// 2N would exceed max_dim.
SpectrumResult spectrum(const HamiltonianBuilder& build, int k, double tol, int start_dim = 0,
                        int max_dim = 4096);

/// Lowest k eigenvalues of one operator.
std::vector<double> lowest_eigenvalues(const FockOperator& h, int k);

struct HarmonicReference {
  double gamma = 0.0;        // hbar omega / (16 m c^2)
  double rest_energy = 0.0;  // m c^2
  std::vector<double> levels;
};

/// E_n = (n + 1/2 + gamma) hbar omega + m c^2, n < count. Needs c in scales.
HarmonicReference harmonic_reference(double m, double omega, const PhaseSpaceScales& scales,
                                     int count);

struct CanonicalComparison {
  std::vector<double> canonical;     // lowest k levels
  std::vector<double> coherent;
  std::vector<double> spacing_canonical;
  std::vector<double> spacing_coherent;
  double offset = 0.0;               // E0(CS) - E0(canonical)
  double expected_offset = 0.0;      // hbar^2/(4 m ell^2); E0^(C) enters both sides
  double max_relative_spacing_discrepancy = 0.0;
};

/// Both Hamiltonians at the same truncation. Spectra are computed with the
/// constant parts removed and added back afterwards.
CanonicalComparison compare_canonical_cs(const HamiltonianSpec& spec, const TruncationSpec& trunc,
                                         int k);

}  // namespace csq
