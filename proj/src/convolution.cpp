#include "csq/convolution.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "csq/errors.hpp"

namespace csq {

namespace {

// Spectral data of the dimensionless X = (a + a^dag)/sqrt2, a real Jacobi matrix.
struct JacobiSpectrum {
  Eigen::VectorXd x;
  Eigen::MatrixXd v;
};

JacobiSpectrum jacobi_spectrum(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 0; k + 1 < n; ++k) sub(k) = std::sqrt(0.5 * (k + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw NumericError("eigensolver failed on the position matrix");
  return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::MatrixXd real_function(const JacobiSpectrum& js, double scale, int block,
                              const std::function<double(double)>& g) {
  const Eigen::Index n = js.x.size();
  Eigen::VectorXd gv(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    gv(k) = g(scale * js.x(k));
    if (!std::isfinite(gv(k))) throw NumericError("function of operator is non-finite");
  }
  const auto top = js.v.topRows(block);
  Eigen::MatrixXd out = top * gv.asDiagonal() * top.transpose();
  return 0.5 * (out + out.transpose());
}

// P = (hbar/L^2) U Q U^dag with U = diag(i^n).
Matrix rotate_to_momentum(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  Matrix out(n, n);
  static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) out(r, c) = ipow[((r - c) % 4 + 4) % 4] * m(r, c);
  return out;
}

double length_of(const PhaseSpaceScales& scales, std::optional<double> basis_length) {
  const double l = basis_length.value_or(scales.ell());
  if (!(l > 0.0)) throw DomainError("basis length must be positive");
  return l;
}

}  // namespace

PhaseSpaceScales compton_scales(double m, double c, double hbar) {
  if (!(m > 0.0) || !(c > 0.0)) throw DomainError("mass and speed of light must be positive");
  return PhaseSpaceScales(hbar, hbar / (2.0 * m * c), m, c);
}

FockOperator function_of_position(const std::function<double(double)>& g,
                                  const TruncationSpec& trunc, double hbar, double basis_length) {
  (void)hbar;
  if (!(basis_length > 0.0)) throw DomainError("basis length must be positive");
  const JacobiSpectrum js = jacobi_spectrum(trunc.assembled());
  return FockOperator(real_function(js, basis_length, trunc.dim, g).cast<cplx>(), true);
}

FockOperator function_of_momentum(const std::function<double(double)>& g,
                                  const TruncationSpec& trunc, double hbar, double basis_length) {
  if (!(basis_length > 0.0)) throw DomainError("basis length must be positive");
  const JacobiSpectrum js = jacobi_spectrum(trunc.assembled());
  return FockOperator(rotate_to_momentum(real_function(js, hbar / basis_length, trunc.dim, g)),
                      true);
}

FockOperator operator_of_position_function(const Potential1D& f, const TruncationSpec& trunc,
                                           const PhaseSpaceScales& scales,
                                           std::optional<double> basis_length) {
  const Smoothed sm = gaussian_smooth(f, scales.ell());
  return function_of_position(sm.function(), trunc, scales.hbar(),
                              length_of(scales, basis_length));
}

FockOperator operator_of_momentum_function(const Potential1D& f, const TruncationSpec& trunc,
                                           const PhaseSpaceScales& scales,
                                           std::optional<double> basis_length) {
  const Smoothed sm = gaussian_smooth(f, scales.wp());
  return function_of_momentum(sm.function(), trunc, scales.hbar(),
                              length_of(scales, basis_length));
}

FockOperator quantize_mixed(const Potential1D& f, MixedForm which, const TruncationSpec& trunc,
                            const PhaseSpaceScales& scales, std::optional<double> basis_length) {
  const double len = length_of(scales, basis_length);
  const TruncationSpec full(trunc.assembled(), 0);
  const auto [Q, P] = position_momentum(full.dim, scales.hbar(), len);
  FockOperator out;
  if (which == MixedForm::p_times_f_of_q) {
    const FockOperator fq = operator_of_position_function(f, full, scales, len);
    out = symmetrized_product(P, fq);
  } else {
    const FockOperator fp = operator_of_momentum_function(f, full, scales, len);
    out = symmetrized_product(Q, fp);
  }
  return out.leading_block(trunc.dim);
}

SemiclassicalReport semiclassical_residual(const Potential1D& f, double ell,
                                           std::vector<double> grid) {
  SemiclassicalReport rep;
  rep.ell = ell;
  const Smoothed sm = gaussian_smooth(f, ell);
  if (grid.empty()) {
    double scale = 1.0;
    if (const auto* g = std::get_if<GaussianWell>(&f.shape())) scale = g->width;
    if (const auto* m = std::get_if<Morse>(&f.shape())) scale = 1.0 / m->alpha;
    for (int i = 0; i <= 200; ++i) grid.push_back(scale * (-4.0 + 8.0 * i / 200.0));
  }
  if (!f.second_derivative(grid.front())) {
    rep.valid = false;
    rep.residual = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }
  for (double q : grid)
    rep.residual =
        std::max(rep.residual, std::abs(sm(q) - f(q) - 0.25 * ell * ell * *f.second_derivative(q)));
  return rep;
}

std::vector<double> darwin_scaling_ratios(const Potential1D& f, double ell, int halvings) {
  std::vector<double> ratios;
  double prev = semiclassical_residual(f, ell).residual;
  for (int k = 0; k < halvings; ++k) {
    ell *= 0.5;
    const double cur = semiclassical_residual(f, ell).residual;
    ratios.push_back(prev / cur);
    prev = cur;
  }
  return ratios;
}

void validate(const HamiltonianSpec& spec) {
  if (!(spec.mass > 0.0)) throw ConfigError("mass must be positive");
  if (!std::isfinite(spec.classical_proper_energy))
    throw ConfigError("classical proper energy must be finite");
  if (spec.basis_length && !(*spec.basis_length > 0.0))
    throw ConfigError("basis length must be positive");
  if (spec.include_rest_mass) {
    if (!spec.scales.c()) throw ConfigError("include_rest_mass needs the speed of light c");
    const double want = spec.scales.hbar() / (2.0 * spec.mass * *spec.scales.c());
    if (std::abs(spec.scales.ell() - want) > 1e-12 * want)
      throw ConfigError("include_rest_mass requires ell = hbar/(2 m c)");
  }
}

double proper_energy(const HamiltonianSpec& spec) {
  const double hb = spec.scales.hbar();
  const double l = spec.scales.ell();
  return hb * hb / (4.0 * spec.mass * l * l) + spec.classical_proper_energy;
}

namespace {

FockOperator kinetic(const HamiltonianSpec& spec, const TruncationSpec& trunc, bool smoothed) {
  const double len = spec.basis_length.value_or(spec.scales.ell());
  const int na = trunc.assembled();
  const auto [Q, P] = position_momentum(na, spec.scales.hbar(), len);
  (void)Q;
  const double inv2m = 0.5 / spec.mass;
  if (!spec.vector_potential) return (inv2m * (P * P)).leading_block(trunc.dim);

  const auto& vp = *spec.vector_potential;
  const TruncationSpec full(na, 0);
  std::function<double(double)> a_fn = [s = vp.shape](double q) { return s(q); };
  std::function<double(double)> extra;
  if (smoothed) {
    const Smoothed a_s = gaussian_smooth(vp.shape, spec.scales.ell());
    const Smoothed a2_s = gaussian_smooth(vp.shape.squared(), spec.scales.ell());
    a_fn = a_s.function();
    extra = [a_s, a2_s](double q) {
      const double a = a_s(q);
      return a2_s(q) - a * a;
    };
  }
  const FockOperator A = function_of_position(a_fn, full, spec.scales.hbar(), len);
  const FockOperator pi = P - vp.charge * A;
  FockOperator out = inv2m * (pi * pi);
  if (extra)
    out += (vp.charge * vp.charge * inv2m) * function_of_position(extra, full, spec.scales.hbar(), len);
  return out.leading_block(trunc.dim);
}

FockOperator finish(FockOperator h, double constant) {
  Matrix m = h.entries();
  m.diagonal().array() += constant;
  m = 0.5 * (m + m.adjoint()).eval();
  return FockOperator(std::move(m), true, h.warnings());
}

}  // namespace

FockOperator build_hamiltonian(const HamiltonianSpec& spec, const TruncationSpec& trunc) {
  validate(spec);
  const double len = spec.basis_length.value_or(spec.scales.ell());
  FockOperator h = kinetic(spec, trunc, true);
  if (spec.potential) h += operator_of_position_function(*spec.potential, trunc, spec.scales, len);
  return finish(std::move(h), proper_energy(spec));
}

FockOperator build_hamiltonian(const HamiltonianSpec& spec, int dim) {
  return build_hamiltonian(spec, TruncationSpec::with_default_guard(dim));
}

FockOperator build_canonical_hamiltonian(const HamiltonianSpec& spec, const TruncationSpec& trunc) {
  validate(spec);
  const double len = spec.basis_length.value_or(spec.scales.ell());
  FockOperator h = kinetic(spec, trunc, false);
  if (spec.potential) {
    const Potential1D v = *spec.potential;
    h += function_of_position([v](double q) { return v(q); }, trunc, spec.scales.hbar(), len);
  }
  return finish(std::move(h), spec.classical_proper_energy);
}

FockOperator build_canonical_hamiltonian(const HamiltonianSpec& spec, int dim) {
  return build_canonical_hamiltonian(spec, TruncationSpec::with_default_guard(dim));
}

}  // namespace csq
