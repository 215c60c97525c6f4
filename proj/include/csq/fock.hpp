#pragma once

// Truncated Fock-space linear algebra.
//
// Operators are dense complex matrices on span{|e_0>, ..., |e_{N-1}>}; entry
// (m, n) is <e_m|A|e_n>. Identities of the infinite-dimensional algebra hold
// only away from the truncation edge, so comparisons are made on a leading
// "guarded" block.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace csq {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class FockOperator {
 public:
  FockOperator() = default;
  /// Validates finiteness and, if `hermitian` is set, the Hermitian tolerance
  /// max|A - A^dag| <= 1e-12 (1 + max|A|). Throws NumericError otherwise.
  explicit FockOperator(Matrix entries, bool hermitian = false,
                        std::vector<std::string> warnings = {});

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  bool hermitian_hint() const { return hermitian_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  cplx operator()(int row, int col) const { return entries_(row, col); }

  void add_warning(std::string w);

  FockOperator leading_block(int n) const;
  FockOperator adjoint() const;

  FockOperator& operator+=(const FockOperator& o);
  FockOperator& operator-=(const FockOperator& o);

 private:
  Matrix entries_;
  bool hermitian_ = false;
  std::vector<std::string> warnings_;
};

FockOperator operator+(FockOperator a, const FockOperator& b);
FockOperator operator-(FockOperator a, const FockOperator& b);
FockOperator operator*(const FockOperator& a, const FockOperator& b);
FockOperator operator*(cplx s, const FockOperator& a);
FockOperator operator*(double s, const FockOperator& a);

FockOperator identity_op(int n);

/// Hermitian product combination (A B + B A) / 2.
FockOperator symmetrized_product(const FockOperator& a, const FockOperator& b);

/// max |A_ij - B_ij| over the leading `block` x `block` entries (whole matrix if block <= 0).
double max_abs_diff(const Matrix& a, const Matrix& b, int block = 0);
double max_abs_diff(const FockOperator& a, const FockOperator& b, int block = 0);

/// Operators are assembled at dim + guard and reported on the leading dim block.
struct TruncationSpec {
  int dim = 0;
  int guard = 0;

  TruncationSpec(int dim, int guard);
  /// Guard g = max(8, N/8).
  static TruncationSpec with_default_guard(int dim);

  int assembled() const { return dim + guard; }
};

int default_guard(int dim);

/// hbar and a length ell; the momentum unit wp = hbar / ell is always derived.
class PhaseSpaceScales {
 public:
  PhaseSpaceScales(double hbar, double ell, std::optional<double> mass = {},
                   std::optional<double> c = {});

  /// hbar = ell = 1, so z = (q + ip)/sqrt(2).
  static PhaseSpaceScales dimensionless();

  double hbar() const { return hbar_; }
  double ell() const { return ell_; }
  double wp() const { return hbar_ / ell_; }
  std::optional<double> mass() const { return mass_; }
  std::optional<double> c() const { return c_; }
  /// hbar / (m c), when both are set.
  std::optional<double> compton_length() const;

  /// Phase-space point for the coherent-state label z = q/(ell sqrt2) + i p/(wp sqrt2).
  cplx z_of(double q, double p) const;
  std::pair<double, double> qp_of(cplx z) const;

 private:
  double hbar_;
  double ell_;
  std::optional<double> mass_;
  std::optional<double> c_;
};

struct LadderPair {
  FockOperator a;
  FockOperator a_dag;
};

LadderPair ladder_ops(int n);

struct QuadraturePair {
  FockOperator Q;
  FockOperator P;
};

/// Q = (ell/sqrt2)(a + a^dag), P = (hbar/(i ell sqrt2))(a - a^dag).
QuadraturePair position_momentum(int n, const PhaseSpaceScales& scales);
/// Same with an explicit basis length in place of scales.ell().
QuadraturePair position_momentum(int n, double hbar, double length);

FockOperator parity_op(int n);

enum class DisplacementMethod { laguerre, normal_ordered };

/// D(z) = exp(z a^dag - conj(z) a) on the first n Fock levels. A warning is
/// attached when |z|^2 > n/4.
FockOperator displacement(cplx z, int n,
                          DisplacementMethod method = DisplacementMethod::laguerre);

/// Entries e^{extra_log} <e_m|D(z)|e_k> for m < rows, k < cols, from the
/// Laguerre closed form evaluated in log space.
Matrix displacement_entries(cplx z, int rows, int cols, double extra_log = 0.0);

/// Truncated coherent-state vector e^{-|z|^2/2} z^n / sqrt(n!).
Vector coherent_vector(cplx z, int n);

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // orthonormal columns
};

/// Spectral decomposition of (A + A^dag)/2. Throws NumericError on non-finite input.
EigenSystem hermitian_eigensystem(const FockOperator& a);
EigenSystem hermitian_eigensystem(const Matrix& a);

/// V diag(f(lambda)) V^dag.
Matrix apply_spectral(const EigenSystem& es, const std::function<double(double)>& f);

/// log(n!) via lgamma.
double log_factorial(int n);

/// Associated Laguerre values L_k^{(alpha)}(x), k = 0..kmax, as
/// L_k = sign[k] * exp(log_abs[k]); the three-term recurrence is rescaled so
/// that large degrees and arguments neither overflow nor underflow.
struct LogSeries {
  std::vector<double> log_abs;
  std::vector<double> sign;
};
LogSeries laguerre_series(int kmax, double alpha, double x);

}  // namespace csq
