#pragma once

// One-dimensional classical functions f(q) (or f(p)) and their Gaussian
// smoothing
//   f~(q) = int f(q - x) exp(-x^2/ell^2) dx / sqrt(pi ell^2),
// which is what coherent-state quantization does to a function of one
// canonical variable.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace csq {

/// 0.5 k q^2.
struct Harmonic {
  double k = 1.0;
  static Harmonic from_mass_omega(double m, double omega) { return {m * omega * omega}; }
};

/// -depth exp(-q^2 / width^2).
struct GaussianWell {
  double depth = 1.0;
  double width = 1.0;
};

/// De (1 - exp(-alpha q))^2.
struct Morse {
  double De = 1.0;
  double alpha = 1.0;
};

/// strength |q|^{-exponent}; locally integrable only for exponent < 1.
struct InversePower {
  double strength = 1.0;
  double exponent = 0.5;
};

/// height for q > edge, 0 below.
struct Step {
  double height = 1.0;
  double edge = 0.0;
};

/// sum_k c_k q^k.
struct PowerSeries {
  std::vector<double> coeffs;
};

/// Natural cubic spline through (grid, values), constant beyond the ends.
struct Tabulated {
  std::vector<double> grid;
  std::vector<double> values;
};

/// Arbitrary callable, smoothed by adaptive Gauss-Hermite quadrature.
struct Custom {
  std::function<double(double)> fn;
  std::function<double(double)> second_derivative;  // optional
  std::string name = "custom";
};

enum class Smoothness { analytic, piecewise_cubic, singular, discontinuous, unknown };

class Potential1D {
 public:
  using Shape =
      std::variant<Harmonic, GaussianWell, Morse, InversePower, Step, PowerSeries, Tabulated,
                   Custom>;

  Potential1D(Shape shape, double energy_offset = 0.0);  // NOLINT

  static Potential1D inverse_sqrt(double strength) { return {InversePower{strength, 0.5}}; }

  const Shape& shape() const { return shape_; }
  double energy_offset() const { return offset_; }
  Smoothness smoothness() const;
  std::string name() const;

  double operator()(double q) const;
  /// Closed-form (or spline) second derivative; empty for non-smooth shapes.
  std::optional<double> second_derivative(double q) const;

  /// The function q -> V(q)^2 as a potential (closed form where available).
  Potential1D squared() const;

 private:
  Shape shape_;
  double offset_ = 0.0;
  std::vector<double> spline_m_;  // second derivatives at tabulated knots
};

enum class SmoothingMethod { closed_form, gauss_hermite, singular_quadrature, spline_quadrature };

/// Smoothed function f~ with provenance of how it is evaluated.
class Smoothed {
 public:
  Smoothed(std::function<double(double)> fn, double ell, SmoothingMethod method,
           std::optional<double> interpolation_error = {});

  double operator()(double q) const { return fn_(q); }
  double ell() const { return ell_; }
  SmoothingMethod method() const { return method_; }
  /// For tabulated input: leave-one-out estimate of the spline error.
  std::optional<double> interpolation_error() const { return interp_error_; }
  const std::function<double(double)>& function() const { return fn_; }

 private:
  std::function<double(double)> fn_;
  double ell_;
  SmoothingMethod method_;
  std::optional<double> interp_error_;
};

/// Throws DomainError for ell <= 0 or a non-integrable singularity.
Smoothed gaussian_smooth(const Potential1D& f, double ell);
Smoothed gaussian_smooth(const std::function<double(double)>& f, double ell);

/// Adaptive Gauss-Hermite evaluation of the smoothing integral at one point:
/// node count doubles from 16 until successive values agree to ~1e-13 relative.
double gauss_hermite_smooth_at(const std::function<double(double)>& f, double ell, double q);

}  // namespace csq
