#pragma once

// Classical observables on the complex phase plane z = (q + ip)/sqrt2.

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "csq/fock.hpp"

namespace csq {

struct Monomial {
  int z_power = 0;
  int zbar_power = 0;
  cplx coeff{0.0, 0.0};
};

/// Finite sum of c z^a zbar^b; terms are kept sorted by (a, b), merged and
/// stripped of zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Monomial> terms);

  static Polynomial constant(cplx c);
  static Polynomial z();
  static Polynomial zbar();
  /// q = ell (z + zbar)/sqrt2 and p = wp (z - zbar)/(i sqrt2).
  static Polynomial position(double ell = 1.0);
  static Polynomial momentum(double wp = 1.0);

  const std::vector<Monomial>& terms() const { return terms_; }
  int max_degree() const;
  int max_power() const;
  /// Largest |a - b| over the terms.
  int max_harmonic() const;
  bool is_real() const;

  cplx operator()(cplx z) const;
  cplx eval_polar(double r, double theta) const;

  /// f(z - z0), expanded exactly.
  Polynomial shifted(cplx z0) const;
  Polynomial conjugate() const;

  Polynomial& operator+=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(cplx s, const Polynomial& a);
  Polynomial pow(int k) const;

 private:
  void normalize();
  std::vector<Monomial> terms_;
};

enum class RadialDecay { polynomial, gaussian };

/// f(r, theta) with a declared angular-harmonic cutoff and decay class. For
/// polynomial decay `degree` bounds the radial growth |f| = O(r^degree).
struct RadialAngular {
  std::function<cplx(double r, double theta)> fn;
  int harmonic_cutoff = 0;
  RadialDecay decay = RadialDecay::gaussian;
  int degree = 0;
  bool real_valued = false;
};

class PhaseSpaceFunction {
 public:
  PhaseSpaceFunction(Polynomial p);  // NOLINT(google-explicit-constructor)
  PhaseSpaceFunction(RadialAngular f);  // NOLINT(google-explicit-constructor)

  bool is_polynomial() const { return std::holds_alternative<Polynomial>(data_); }
  const Polynomial& polynomial() const { return std::get<Polynomial>(data_); }
  const RadialAngular& radial() const { return std::get<RadialAngular>(data_); }

  cplx eval_polar(double r, double theta) const;
  int max_harmonic() const;
  /// Polynomial degree, or the declared growth degree.
  int degree() const;
  bool is_real() const;
  RadialDecay decay() const;

 private:
  std::variant<Polynomial, RadialAngular> data_;
};

/// Parses expressions such as "z^2 zbar + 0.5", "2*z*zbar - 0.5i z^2" or
/// "q^2 + p^2". q and p expand through the given length and momentum units.
/// Throws ParseError.
Polynomial parse_polynomial(const std::string& text, double ell = 1.0, double wp = 1.0);

}  // namespace csq
