#include "csq/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "csq/errors.hpp"

namespace csq {

namespace {

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

std::vector<std::string> merged(std::vector<std::string> a, const std::vector<std::string>& b) {
  for (const auto& w : b)
    if (std::find(a.begin(), a.end(), w) == a.end()) a.push_back(w);
  return a;
}

}  // namespace

FockOperator::FockOperator(Matrix entries, bool hermitian, std::vector<std::string> warnings)
    : entries_(std::move(entries)), hermitian_(hermitian), warnings_(std::move(warnings)) {
  if (entries_.rows() != entries_.cols())
    throw InvalidDimension("FockOperator requires a square matrix");
  if (!all_finite(entries_)) throw NumericError("FockOperator has non-finite entries");
  if (hermitian_ && entries_.size() > 0) {
    const double scale = entries_.cwiseAbs().maxCoeff();
    const double dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 1e-12 * (1.0 + scale))
      throw NumericError("operator flagged Hermitian deviates by " + std::to_string(dev));
  }
}

void FockOperator::add_warning(std::string w) {
  if (std::find(warnings_.begin(), warnings_.end(), w) == warnings_.end())
    warnings_.push_back(std::move(w));
}

FockOperator FockOperator::leading_block(int n) const {
  if (n < 1 || n > dim()) throw InvalidDimension("leading block size out of range");
  return FockOperator(entries_.topLeftCorner(n, n), hermitian_, warnings_);
}

FockOperator FockOperator::adjoint() const {
  return FockOperator(entries_.adjoint(), hermitian_, warnings_);
}

FockOperator& FockOperator::operator+=(const FockOperator& o) {
  if (o.dim() != dim()) throw InvalidDimension("operator dimensions differ");
  entries_ += o.entries_;
  hermitian_ = hermitian_ && o.hermitian_;
  warnings_ = merged(std::move(warnings_), o.warnings_);
  return *this;
}

FockOperator& FockOperator::operator-=(const FockOperator& o) {
  if (o.dim() != dim()) throw InvalidDimension("operator dimensions differ");
  entries_ -= o.entries_;
  hermitian_ = hermitian_ && o.hermitian_;
  warnings_ = merged(std::move(warnings_), o.warnings_);
  return *this;
}

FockOperator operator+(FockOperator a, const FockOperator& b) { return a += b; }
FockOperator operator-(FockOperator a, const FockOperator& b) { return a -= b; }

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  if (a.dim() != b.dim()) throw InvalidDimension("operator dimensions differ");
  return FockOperator(a.entries() * b.entries(), false, merged(a.warnings(), b.warnings()));
}

FockOperator operator*(cplx s, const FockOperator& a) {
  return FockOperator(s * a.entries(), a.hermitian_hint() && s.imag() == 0.0, a.warnings());
}

FockOperator operator*(double s, const FockOperator& a) {
  return FockOperator(s * a.entries(), a.hermitian_hint(), a.warnings());
}

FockOperator identity_op(int n) {
  if (n < 1) throw InvalidDimension("dimension must be positive");
  return FockOperator(Matrix::Identity(n, n), true);
}

FockOperator symmetrized_product(const FockOperator& a, const FockOperator& b) {
  Matrix ab = a.entries() * b.entries();
  Matrix sym = 0.5 * (ab + b.entries() * a.entries());
  const bool herm = a.hermitian_hint() && b.hermitian_hint();
  if (herm) sym = 0.5 * (sym + sym.adjoint()).eval();
  return FockOperator(std::move(sym), herm, merged(a.warnings(), b.warnings()));
}

double max_abs_diff(const Matrix& a, const Matrix& b, int block) {
  const Eigen::Index n = block > 0 ? block : std::min(a.rows(), b.rows());
  if (n > a.rows() || n > b.rows()) throw InvalidDimension("comparison block exceeds operator size");
  return (a.topLeftCorner(n, n) - b.topLeftCorner(n, n)).cwiseAbs().maxCoeff();
}

double max_abs_diff(const FockOperator& a, const FockOperator& b, int block) {
  return max_abs_diff(a.entries(), b.entries(), block);
}

int default_guard(int dim) { return std::max(8, dim / 8); }

TruncationSpec::TruncationSpec(int dim_, int guard_) : dim(dim_), guard(guard_) {
  if (dim < 2) throw InvalidDimension("truncation dimension must be at least 2");
  if (guard < 0) throw InvalidDimension("guard must be non-negative");
}

TruncationSpec TruncationSpec::with_default_guard(int dim) {
  return TruncationSpec(dim, default_guard(dim));
}

PhaseSpaceScales::PhaseSpaceScales(double hbar, double ell, std::optional<double> mass,
                                   std::optional<double> c)
    : hbar_(hbar), ell_(ell), mass_(mass), c_(c) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("hbar must be positive");
  if (!(ell > 0.0) || !std::isfinite(ell)) throw DomainError("ell must be positive");
  if (mass && !(*mass > 0.0)) throw DomainError("mass must be positive");
  if (c && !(*c > 0.0)) throw DomainError("c must be positive");
}

PhaseSpaceScales PhaseSpaceScales::dimensionless() { return PhaseSpaceScales(1.0, 1.0); }

std::optional<double> PhaseSpaceScales::compton_length() const {
  if (!mass_ || !c_) return std::nullopt;
  return hbar_ / (*mass_ * *c_);
}

cplx PhaseSpaceScales::z_of(double q, double p) const {
  return {q / (ell_ * std::sqrt(2.0)), p / (wp() * std::sqrt(2.0))};
}

std::pair<double, double> PhaseSpaceScales::qp_of(cplx z) const {
  return {std::sqrt(2.0) * ell_ * z.real(), std::sqrt(2.0) * wp() * z.imag()};
}

LadderPair ladder_ops(int n) {
  if (n < 2) throw InvalidDimension("ladder operators need N >= 2");
  Matrix a = Matrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
  Matrix ad = a.adjoint();
  return {FockOperator(std::move(a)), FockOperator(std::move(ad))};
}

QuadraturePair position_momentum(int n, double hbar, double length) {
  if (!(length > 0.0)) throw DomainError("basis length must be positive");
  const auto [a, ad] = ladder_ops(n);
  const double s2 = std::sqrt(2.0);
  Matrix q = (length / s2) * (a.entries() + ad.entries());
  Matrix p = cplx(0.0, -hbar / (length * s2)) * (a.entries() - ad.entries());
  return {FockOperator(std::move(q), true), FockOperator(std::move(p), true)};
}

QuadraturePair position_momentum(int n, const PhaseSpaceScales& scales) {
  return position_momentum(n, scales.hbar(), scales.ell());
}

FockOperator parity_op(int n) {
  if (n < 1) throw InvalidDimension("parity needs N >= 1");
  Matrix p = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return FockOperator(std::move(p), true);
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

LogSeries laguerre_series(int kmax, double alpha, double x) {
  LogSeries out;
  out.log_abs.resize(kmax + 1);
  out.sign.resize(kmax + 1);
  constexpr double big = 1e150;
  double scale = 0.0;  // natural log of the common factor removed from prev/cur
  double prev = 0.0;
  double cur = 1.0;
  auto store = [&](int k, double v) {
    out.sign[k] = v < 0 ? -1.0 : 1.0;
    out.log_abs[k] = v == 0.0 ? -std::numeric_limits<double>::infinity()
                              : std::log(std::abs(v)) + scale;
  };
  store(0, cur);
  for (int k = 0; k < kmax; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    if (std::abs(cur) > big) {
      prev /= big;
      cur /= big;
      scale += std::log(big);
    }
    store(k + 1, cur);
  }
  return out;
}

Matrix displacement_entries(cplx z, int rows, int cols, double extra_log) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw NumericError("displacement argument must be finite");
  Matrix d = Matrix::Zero(rows, cols);
  const double t = std::norm(z);
  const double log_r = std::log(std::abs(z));
  const double phase = std::arg(z);
  const int amax = std::max(rows, cols);
  for (int alpha = 0; alpha < amax; ++alpha) {
    if (alpha > 0 && t == 0.0) break;
    // Lower triangle: m = k + alpha >= k; uses L_k^{(alpha)}(t).
    const int kmax_lower = std::min(cols - 1, rows - 1 - alpha);
    // Upper triangle: k = m + alpha; uses L_m^{(alpha)}(t).
    const int mmax_upper = alpha > 0 ? std::min(rows - 1, cols - 1 - alpha) : -1;
    const int kmax = std::max(kmax_lower, mmax_upper);
    if (kmax < 0) continue;
    const LogSeries lag = laguerre_series(kmax, alpha, t);
    const double pow_log = alpha > 0 ? alpha * log_r : 0.0;
    for (int k = 0; k <= kmax_lower; ++k) {
      const int m = k + alpha;
      const double lg = 0.5 * (log_factorial(k) - log_factorial(m)) + pow_log - 0.5 * t +
                        extra_log + lag.log_abs[k];
      d(m, k) = lag.sign[k] * std::exp(lg) * std::polar(1.0, alpha * phase);
    }
    for (int m = 0; m <= mmax_upper; ++m) {
      const int k = m + alpha;
      const double lg = 0.5 * (log_factorial(m) - log_factorial(k)) + pow_log - 0.5 * t +
                        extra_log + lag.log_abs[m];
      // (-conj z)^alpha
      d(m, k) = lag.sign[m] * std::exp(lg) * std::polar(1.0, alpha * (M_PI - phase));
    }
  }
  return d;
}

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

// Moduli of the entries of exp(z a^dag) on n levels: r^{m-k} sqrt(m!/k!) / (m-k)!.
std::vector<std::vector<Quad>> raising_factor(const Quad& r, int n) {
  std::vector<std::vector<Quad>> f(n, std::vector<Quad>(n, Quad(0)));
  for (int k = 0; k < n; ++k) {
    f[k][k] = 1;
    for (int m = k; m + 1 < n; ++m) f[m + 1][k] = f[m][k] * r * sqrt(Quad(m + 1)) / Quad(m + 1 - k);
  }
  return f;
}

}  // namespace

FockOperator displacement(cplx z, int n, DisplacementMethod method) {
  if (n < 1) throw InvalidDimension("displacement needs N >= 1");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw NumericError("displacement argument must be finite");
  std::vector<std::string> warnings;
  if (std::norm(z) > n / 4.0)
    warnings.push_back("|z|^2 exceeds N/4: truncated displacement unreliable");

  Matrix d;
  if (method == DisplacementMethod::laguerre) {
    d = displacement_entries(z, n, n);
  } else {
    // e^{-|z|^2/2} exp(z a^dag) exp(-conj(z) a); the phase of every term in
    // entry (m, n) is (-1)^{n-k} e^{i(m-n) arg z}, so the factors are multiplied
    // as real triangular matrices in quad precision.
    const Quad r = std::abs(z);
    const auto f = raising_factor(r, n);
    const Quad g = exp(-r * r / 2);
    const double phase = std::arg(z);
    d.resize(n, n);
    for (int m = 0; m < n; ++m)
      for (int c = 0; c < n; ++c) {
        Quad acc = 0;
        for (int k = 0; k <= std::min(m, c); ++k) {
          const Quad term = f[m][k] * f[c][k];
          if ((c - k) % 2) acc -= term;
          else acc += term;
        }
        d(m, c) = static_cast<double>(acc * g) * std::polar(1.0, (m - c) * phase);
      }
  }
  return FockOperator(std::move(d), false, std::move(warnings));
}

Vector coherent_vector(cplx z, int n) {
  if (n < 1) throw InvalidDimension("coherent vector needs N >= 1");
  Vector v(n);
  const double t = std::norm(z);
  if (t == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  const double log_r = std::log(std::abs(z));
  const double phase = std::arg(z);
  for (int k = 0; k < n; ++k)
    v(k) = std::exp(-0.5 * t + k * log_r - 0.5 * log_factorial(k)) * std::polar(1.0, k * phase);
  return v;
}

EigenSystem hermitian_eigensystem(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidDimension("eigensystem needs a square matrix");
  if (!all_finite(a)) throw NumericError("eigensystem input has non-finite entries");
  const Matrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericError("Hermitian eigensolver failed");
  EigenSystem es;
  es.values.assign(solver.eigenvalues().data(),
                   solver.eigenvalues().data() + solver.eigenvalues().size());
  es.vectors = solver.eigenvectors();
  return es;
}

EigenSystem hermitian_eigensystem(const FockOperator& a) {
  return hermitian_eigensystem(a.entries());
}

Matrix apply_spectral(const EigenSystem& es, const std::function<double(double)>& f) {
  const Eigen::Index n = es.vectors.rows();
  Eigen::VectorXd fv(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    fv(k) = f(es.values[k]);
    if (!std::isfinite(fv(k))) throw NumericError("function of operator is non-finite");
  }
  Matrix out = es.vectors * fv.asDiagonal() * es.vectors.adjoint();
  return 0.5 * (out + out.adjoint());
}

}  // namespace csq
