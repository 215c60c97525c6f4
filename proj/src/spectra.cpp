#include "csq/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "csq/errors.hpp"

namespace csq {

std::vector<double> lowest_eigenvalues(const FockOperator& h, int k) {
  if (k < 1 || k > h.dim()) throw InvalidDimension("level count out of range");
  const Matrix sym = 0.5 * (h.entries() + h.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("eigensolver failed");
  std::vector<double> out(k);
  for (int i = 0; i < k; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

SpectrumResult spectrum(const HamiltonianBuilder& build, int k, double tol, int start_dim,
                        int max_dim) {
  if (k < 1) throw DomainError("level count must be >= 1");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  int n = std::max({8 * k, 64, start_dim});
  if (2 * n > max_dim) throw ConvergenceError("initial truncation already exceeds the maximum");
  std::vector<double> prev = lowest_eigenvalues(build(n), k);
  std::vector<double> deltas(k);
  while (2 * n <= max_dim) {
    const std::vector<double> cur = lowest_eigenvalues(build(2 * n), k);
    double worst = 0.0;
    for (int i = 0; i < k; ++i) {
      deltas[i] = std::abs(cur[i] - prev[i]);
      worst = std::max(worst, deltas[i]);
    }
    if (worst < tol) {
      SpectrumResult r;
      r.eigenvalues = cur;
      r.converged_count = k;
      r.dims = {n, 2 * n};
      r.deltas = deltas;
      return r;
    }
    prev = cur;
    n *= 2;
  }
  std::ostringstream msg;
  msg << "lowest " << k << " eigenvalues not converged to " << tol << " at N = " << n
      << "; largest change " << *std::max_element(deltas.begin(), deltas.end());
  throw ConvergenceError(msg.str());
}

HarmonicReference harmonic_reference(double m, double omega, const PhaseSpaceScales& scales,
                                     int count) {
  if (!(m > 0.0) || !(omega > 0.0)) throw DomainError("mass and frequency must be positive");
  if (!scales.c()) throw DomainError("harmonic reference needs c for the rest energy");
  HarmonicReference ref;
  const double c = *scales.c();
  const double hw = scales.hbar() * omega;
  ref.rest_energy = m * c * c;
  ref.gamma = hw / (16.0 * ref.rest_energy);
  for (int n = 0; n < count; ++n) ref.levels.push_back((n + 0.5 + ref.gamma) * hw + ref.rest_energy);
  return ref;
}

CanonicalComparison compare_canonical_cs(const HamiltonianSpec& spec, const TruncationSpec& trunc,
                                         int k) {
  if (k < 2) throw DomainError("comparison needs at least two levels");
  CanonicalComparison out;
  const double e0 = spec.classical_proper_energy;
  const double cs_const = proper_energy(spec);
  HamiltonianSpec bare = spec;
  bare.classical_proper_energy = 0.0;
  const std::vector<double> can = lowest_eigenvalues(build_canonical_hamiltonian(bare, trunc), k);
  bare.classical_proper_energy = -(cs_const - e0);
  const std::vector<double> coh = lowest_eigenvalues(build_hamiltonian(bare, trunc), k);
  for (int i = 0; i < k; ++i) {
    out.canonical.push_back(can[i] + e0);
    out.coherent.push_back(coh[i] + cs_const);
  }
  out.offset = (coh[0] - can[0]) + (cs_const - e0);
  out.expected_offset = cs_const - e0;
  for (int i = 0; i + 1 < k; ++i) {
    const double sc = can[i + 1] - can[i];
    const double ss = coh[i + 1] - coh[i];
    out.spacing_canonical.push_back(sc);
    out.spacing_coherent.push_back(ss);
    out.max_relative_spacing_discrepancy =
        std::max(out.max_relative_spacing_discrepancy, std::abs(ss - sc) / std::abs(sc));
  }
  return out;
}

}  // namespace csq
