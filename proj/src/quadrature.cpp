#include "csq/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "csq/errors.hpp"

namespace csq {

namespace {

// Orthonormal three-term recurrence p_{k+1} = (x - a_k) p_k / b_{k+1} - b_k p_{k-1} / b_{k+1}
// evaluated with a running rescale. Returns log of sum_{k<n} p_k^2, the ratio
// p_n / p_n' is obtained by the caller from p_n, p_{n-1}.
struct RecurrenceEval {
  double log_sum_sq = 0.0;
  double pn = 0.0;    // scaled p_n
  double pnm1 = 0.0;  // scaled p_{n-1}
};

template <typename Diag, typename Off>
RecurrenceEval evaluate(int n, double x, double p0, Diag diag, Off off) {
  constexpr double big = 1e100;
  double prev = 0.0;
  double cur = p0;
  double sum = 0.0;
  double log_scale = 0.0;  // values are stored divided by exp(log_scale)
  for (int k = 0; k < n; ++k) {
    sum += cur * cur;
    const double bnext = off(k + 1);
    const double next = ((x - diag(k)) * cur - (k > 0 ? off(k) : 0.0) * prev) / bnext;
    prev = cur;
    cur = next;
    if (std::abs(cur) > big) {
      prev /= big;
      cur /= big;
      sum /= big * big;
      log_scale += std::log(big);
    }
  }
  return {std::log(sum) + 2.0 * log_scale, cur, prev};
}

template <typename Diag, typename Off, typename Deriv>
GaussRule golub_welsch(int n, double p0, Diag diag, Off off, Deriv newton_ratio) {
  if (n < 1) throw DomainError("Gauss rule needs at least one node");
  Eigen::VectorXd d(n), e(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) d(k) = diag(k);
  for (int k = 0; k + 1 < n; ++k) e(k) = off(k + 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.log_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()(i);
    for (int it = 0; it < 4; ++it) {
      const RecurrenceEval ev = evaluate(n, x, p0, diag, off);
      const double step = newton_ratio(x, ev.pn, ev.pnm1);
      if (!std::isfinite(step)) break;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    const RecurrenceEval ev = evaluate(n, x, p0, diag, off);
    rule.nodes[i] = x;
    rule.log_weights[i] = -ev.log_sum_sq;
    rule.weights[i] = std::exp(rule.log_weights[i]);
  }
  return rule;
}

}  // namespace

GaussRule gauss_laguerre(int n) {
  // Orthonormal Laguerre polynomials: diag 2k+1, off-diagonal k, p_0 = 1.
  auto diag = [](int k) { return 2.0 * k + 1.0; };
  auto off = [](int k) { return static_cast<double>(k); };
  // Recurrence in the sign convention above gives p_k = (-1)^k L_k;
  // L_n' = n (L_n - L_{n-1}) / x, so p_n / p_n' = x p_n / (n (p_n + p_{n-1})).
  auto ratio = [n](double x, double pn, double pnm1) { return x * pn / (n * (pn + pnm1)); };
  return golub_welsch(n, 1.0, diag, off, ratio);
}

GaussRule gauss_hermite(int n) {
  // Orthonormal Hermite: diag 0, off-diagonal sqrt(k/2), p_0 = pi^{-1/4}.
  auto diag = [](int) { return 0.0; };
  auto off = [](int k) { return std::sqrt(0.5 * k); };
  // p_n' = sqrt(2n) p_{n-1}.
  auto ratio = [n](double, double pn, double pnm1) { return pn / (std::sqrt(2.0 * n) * pnm1); };
  return golub_welsch(n, std::pow(std::numbers::pi, -0.25), diag, off, ratio);
}

QuadratureRule::QuadratureRule(int radial_count, int angular)
    : radial(gauss_laguerre(radial_count)), angular_count(angular) {
  if (angular < 1) throw DomainError("angular count must be at least 1");
}

QuadratureRule QuadratureRule::sized_for(int dim, int max_degree, int max_harmonic) {
  return QuadratureRule(dim + max_degree + 1, 2 * (dim + max_harmonic) + 1);
}

double QuadratureRule::angle(int j) const {
  return 2.0 * std::numbers::pi * j / angular_count;
}

}  // namespace csq
