#include "csq/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "csq/errors.hpp"

namespace csq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Angular moments F(d) = (1/M) sum_j f(r, theta_j) e^{i d theta_j}, d in (-dim, dim).
std::vector<cplx> angular_moments(const PhaseSpaceFunction& f, double r, int dim,
                                  const QuadratureRule& rule) {
  const int m = rule.angular_count;
  std::vector<cplx> samples(m);
  for (int j = 0; j < m; ++j) {
    samples[j] = f.eval_polar(r, rule.angle(j));
    if (!std::isfinite(samples[j].real()) || !std::isfinite(samples[j].imag()))
      throw NumericError("non-finite sample of the classical function");
  }
  std::vector<cplx> mom(2 * dim - 1);
  for (int d = -(dim - 1); d <= dim - 1; ++d) {
    cplx s{0.0, 0.0};
    for (int j = 0; j < m; ++j) s += samples[j] * std::polar(1.0, d * rule.angle(j));
    mom[d + dim - 1] = s / static_cast<double>(m);
  }
  return mom;
}

bool undersized(const PhaseSpaceFunction& f, int dim, const QuadratureRule& rule) {
  return rule.radial_count() < dim + f.degree() ||
         rule.angular_count <= 2 * (dim + f.max_harmonic());
}

void check_dim(int dim) {
  if (dim < 1) throw InvalidDimension("dimension must be positive");
}

// log|R| and sign of the radial factor of e^{kappa t} <m|D(z) rho_s D(z)^dag|n>
// for m = n + alpha, i.e.
//   kappa (-1)^m (-kappa)^alpha |z|^alpha sqrt(n!/m!) mu^n L_n^{(alpha)}(kappa^2 t / mu),
// with mu^n L_n evaluated through the mu-scaled Laguerre recurrence (finite at mu = 0).
struct RadialFactor {
  std::vector<double> log_abs;  // indexed by n
  std::vector<double> sign;
};

RadialFactor kernel_radial(int alpha, int nmax, double t, double kappa, double mu) {
  RadialFactor out;
  out.log_abs.resize(nmax + 1);
  out.sign.resize(nmax + 1);
  constexpr double big = 1e150;
  const double x = kappa * kappa * t;
  double scale = 0.0;
  double prev = 0.0;
  double cur = 1.0;
  const double log_kz = alpha > 0 ? alpha * (std::log(kappa) + 0.5 * std::log(t)) : 0.0;
  for (int n = 0; n <= nmax; ++n) {
    if (n > 0) {
      const int j = n - 1;
      const double next =
          (((2.0 * j + 1.0 + alpha) * mu - x) * cur - (j + alpha) * mu * mu * prev) / (j + 1.0);
      prev = cur;
      cur = next;
      if (std::abs(cur) > big) {
        prev /= big;
        cur /= big;
        scale += std::log(big);
      }
    }
    const int m = n + alpha;
    // (-1)^m (-1)^alpha = (-1)^n
    const double sgn = ((n % 2 == 0) ? 1.0 : -1.0) * (cur < 0 ? -1.0 : 1.0);
    out.sign[n] = sgn;
    out.log_abs[n] = cur == 0.0 ? kNegInf
                                : std::log(kappa) + log_kz +
                                      0.5 * (log_factorial(n) - log_factorial(m)) +
                                      std::log(std::abs(cur)) + scale;
  }
  return out;
}

double kernel_kappa(double s) { return 2.0 / (1.0 - s); }
double kernel_mu(double s) { return (1.0 + s) / (1.0 - s); }

}  // namespace

namespace {

// top! / sqrt(n! np!), by direct products while they stay representable.
double moment_ratio(int n, int np, int top) {
  if (2 * top - n - np > 40)
    return std::exp(log_factorial(top) - 0.5 * (log_factorial(n) + log_factorial(np)));
  long double prod = 1.0L;
  for (int j = n + 1; j <= top; ++j) prod *= j;
  for (int j = np + 1; j <= top; ++j) prod *= j;
  return static_cast<double>(std::sqrt(prod));
}

}  // namespace

FockOperator cs_quantize_polynomial(const Polynomial& f, int dim) {
  check_dim(dim);
  Matrix m = Matrix::Zero(dim, dim);
  std::vector<std::string> warnings;
  for (const auto& t : f.terms()) {
    if (std::max(t.z_power, t.zbar_power) >= dim)
      warnings.push_back("monomial power reaches the truncation size: operator truncated");
    // <e_n|A|e_n'> = (n+a)! / sqrt(n! n'!) when n + a = n' + b.
    for (int n = 0; n < dim; ++n) {
      const int np = n + t.z_power - t.zbar_power;
      if (np < 0 || np >= dim) continue;
      m(n, np) += t.coeff * moment_ratio(n, np, n + t.z_power);
    }
  }
  const bool herm = f.is_real();
  if (herm) m = 0.5 * (m + m.adjoint()).eval();
  std::sort(warnings.begin(), warnings.end());
  warnings.erase(std::unique(warnings.begin(), warnings.end()), warnings.end());
  return FockOperator(std::move(m), herm, std::move(warnings));
}

FockOperator cs_quantize_quadrature(const PhaseSpaceFunction& f, int dim,
                                    const QuadratureRule& rule) {
  check_dim(dim);
  std::vector<std::string> warnings;
  if (undersized(f, dim, rule))
    warnings.push_back("quadrature rule undersized for this dimension: accuracy not guaranteed");
  Matrix m = Matrix::Zero(dim, dim);
  std::vector<double> lf(dim);
  for (int n = 0; n < dim; ++n) lf[n] = log_factorial(n);
  for (int k = 0; k < rule.radial_count(); ++k) {
    const double t = rule.radial.nodes[k];
    const double logw = rule.radial.log_weights[k];
    const double logt = std::log(t);
    const auto mom = angular_moments(f, std::sqrt(t), dim, rule);
    for (int np = 0; np < dim; ++np)
      for (int n = 0; n < dim; ++n) {
        const double lg = logw + 0.5 * (n + np) * logt - 0.5 * (lf[n] + lf[np]);
        m(n, np) += std::exp(lg) * mom[n - np + dim - 1];
      }
  }
  const bool herm = f.is_real();
  if (herm) m = 0.5 * (m + m.adjoint()).eval();
  return FockOperator(std::move(m), herm, std::move(warnings));
}

LowerSymbol lower_symbol(const FockOperator& a, cplx z) {
  const Vector v = coherent_vector(z, a.dim());
  const cplx val = v.dot(a.entries() * v);  // v^dag A v
  return {val, std::norm(z) > a.dim() / 4.0};
}

QuantizerKernel quantizer_kernel(double s, int dim) {
  check_dim(dim);
  if (!(s < 1.0)) throw DomainError("quantizer kernel requires s < 1");
  const double lambda = (s + 1.0) / (s - 1.0);
  Matrix k = Matrix::Zero(dim, dim);
  double v = 2.0 / (1.0 - s);
  for (int n = 0; n < dim; ++n) {
    k(n, n) = v;
    v *= lambda;
  }
  return {s, FockOperator(std::move(k), true)};
}

Matrix displaced_kernel(cplx z, double s, int dim) {
  check_dim(dim);
  if (s < -1.0 || s > 0.0) throw DomainError("displaced kernel implemented for s in [-1, 0]");
  const double kappa = kernel_kappa(s);
  const double mu = kernel_mu(s);
  const double t = std::norm(z);
  const double phase = std::arg(z);
  Matrix k = Matrix::Zero(dim, dim);
  for (int alpha = 0; alpha < dim; ++alpha) {
    if (alpha > 0 && t == 0.0) break;
    const RadialFactor rf = kernel_radial(alpha, dim - 1 - alpha, t, kappa, mu);
    for (int n = 0; n + alpha < dim; ++n) {
      const cplx v = rf.sign[n] * std::exp(rf.log_abs[n] - kappa * t) *
                     std::polar(1.0, alpha * phase);
      k(n + alpha, n) = v;
      k(n, n + alpha) = std::conj(v);
    }
  }
  return k;
}

FockOperator integral_quantize(const PhaseSpaceFunction& f, double s, int dim,
                               const QuadratureRule& rule) {
  check_dim(dim);
  if (!(s >= -1.0 && s <= 0.0))
    throw DomainError("integral quantization supported only for s in [-1, 0]");
  std::vector<std::string> warnings;
  if (undersized(f, dim, rule))
    warnings.push_back("quadrature rule undersized for this dimension: accuracy not guaranteed");
  const double kappa = kernel_kappa(s);
  const double mu = kernel_mu(s);
  Matrix m = Matrix::Zero(dim, dim);
  for (int k = 0; k < rule.radial_count(); ++k) {
    const double u = rule.radial.nodes[k];
    const double t = u / kappa;
    const double logw = rule.radial.log_weights[k] - std::log(kappa);
    const auto mom = angular_moments(f, std::sqrt(t), dim, rule);
    for (int alpha = 0; alpha < dim; ++alpha) {
      const RadialFactor rf = kernel_radial(alpha, dim - 1 - alpha, t, kappa, mu);
      for (int n = 0; n + alpha < dim; ++n) {
        const double w = rf.sign[n] * std::exp(logw + rf.log_abs[n]);
        m(n + alpha, n) += w * mom[alpha + dim - 1];
        if (alpha > 0) m(n, n + alpha) += w * mom[-alpha + dim - 1];
      }
    }
  }
  const bool herm = f.is_real();
  if (herm) m = 0.5 * (m + m.adjoint()).eval();
  return FockOperator(std::move(m), herm, std::move(warnings));
}

PositivityReport povm_positivity_check(double s, int dim) {
  const QuantizerKernel k = quantizer_kernel(s, dim);
  double mn = std::numeric_limits<double>::infinity();
  for (int n = 0; n < dim; ++n) mn = std::min(mn, k.kernel(n, n).real());
  return {mn >= -1e-12, mn};
}

cplx symplectic_fourier_gaussian(double alpha, cplx z) {
  if (!(alpha > 0.0)) throw DomainError("Gaussian exponent alpha must be positive");
  return std::exp(-std::norm(z) / alpha) / alpha;
}

FockOperator weight_route_gaussian(double alpha, double s, int dim) {
  if (!(alpha > 0.0)) throw DomainError("Gaussian exponent alpha must be positive");
  const double s_eff = s - 2.0 / alpha;
  if (!(s_eff < 0.0)) throw DomainError("weight-function route needs s - 2/alpha < 0");
  FockOperator k = quantizer_kernel(s_eff, dim).kernel;
  return (1.0 / alpha) * k;
}

FockOperator displacement_average(double s, int dim, const QuadratureRule& rule) {
  check_dim(dim);
  if (!(s < 0.0)) throw DomainError("Gaussian average of D(z) evaluated for s < 0 only");
  // e^{s t/2} D(z) decays as e^{-kappa t}, kappa = (1 - s)/2.
  const double kappa = 0.5 * (1.0 - s);
  std::vector<cplx> ang(2 * dim - 1);
  for (int d = -(dim - 1); d <= dim - 1; ++d) {
    cplx acc{0.0, 0.0};
    for (int j = 0; j < rule.angular_count; ++j) acc += std::polar(1.0, d * rule.angle(j));
    ang[d + dim - 1] = acc / static_cast<double>(rule.angular_count);
  }
  Matrix m = Matrix::Zero(dim, dim);
  for (int k = 0; k < rule.radial_count(); ++k) {
    const double t = rule.radial.nodes[k] / kappa;
    // e^{kappa t} e^{s t/2} D = e^{t/2} D along the positive real axis.
    const Matrix d =
        displacement_entries(cplx(std::sqrt(t), 0.0), dim, dim,
                             0.5 * t + rule.radial.log_weights[k] - std::log(kappa));
    for (int c = 0; c < dim; ++c)
      for (int r = 0; r < dim; ++r) m(r, c) += d(r, c) * ang[r - c + dim - 1];
  }
  std::vector<std::string> warnings;
  if (rule.radial_count() < dim || rule.angular_count <= 2 * dim)
    warnings.push_back("quadrature rule undersized for this dimension: accuracy not guaranteed");
  return FockOperator(std::move(m), false, std::move(warnings));
}

}  // namespace csq
