#pragma once

// Gauss rules for the Laguerre weight e^{-t} on [0, inf) and the Hermite weight
// e^{-x^2} on the real line, plus the polar phase-space rule built on the
// Laguerre one.

#include <vector>

namespace csq {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weights;  // exact even where weights underflow
};

/// Nodes from the Jacobi matrix, polished by Newton steps on the recurrence;
/// weights from the Christoffel sum 1 / sum_k p_k(x)^2 in log space.
GaussRule gauss_laguerre(int n);
GaussRule gauss_hermite(int n);

/// Discretizes d^2z/pi = (1/2pi) dt dtheta with t = |z|^2: Gauss-Laguerre in t
/// and M equispaced angles theta_j = 2 pi j / M.
struct QuadratureRule {
  GaussRule radial;
  int angular_count = 0;

  QuadratureRule(int radial_count, int angular_count);

  /// n_r = N + degree + 1, M = 2(N + harmonic) + 1.
  static QuadratureRule sized_for(int dim, int max_degree, int max_harmonic);

  int radial_count() const { return static_cast<int>(radial.nodes.size()); }
  double angle(int j) const;
};

}  // namespace csq
