#pragma once

// Quantization maps on the truncated Fock space.
//
//  * coherent-state (anti-normal) quantization A_f = int f(z) |z><z| d^2z/pi,
//    by the exact monomial moment rule and by polar quadrature;
//  * lower symbols <z|A|z>;
//  * the s-parametrized family A_f = int f(z) D(z) rho_s D(z)^dag d^2z/pi with
//    rho_s = (2/(1-s)) ((s+1)/(s-1))^{a^dag a}, s = -1 anti-normal, s = 0 Weyl.

#include "csq/fock.hpp"
#include "csq/phase_space_function.hpp"
#include "csq/quadrature.hpp"

namespace csq {

FockOperator cs_quantize_polynomial(const Polynomial& f, int dim);

/// Polar discretization of the coherent-state integral. Adds an accuracy
/// warning when the rule is smaller than n_r >= N + degree, M > 2 (N + harmonic).
FockOperator cs_quantize_quadrature(const PhaseSpaceFunction& f, int dim,
                                    const QuadratureRule& rule);

struct LowerSymbol {
  cplx value;
  bool truncation_warning = false;
};

/// <z|A|z> with the truncated coherent vector of size A.dim().
LowerSymbol lower_symbol(const FockOperator& a, cplx z);

struct QuantizerKernel {
  double s = -1.0;
  FockOperator kernel;
};

QuantizerKernel quantizer_kernel(double s, int dim);

/// Quadrature evaluation of int f(z) D(z) rho_s D(z)^dag d^2z/pi for s in
/// [-1, 0]. The displaced kernel is e^{-kappa|z|^2} times a polynomial in
/// (z, zbar) with kappa = 2/(1-s), so the Laguerre variable is rescaled by
/// kappa and the rule is exact for polynomial f once it is large enough.
FockOperator integral_quantize(const PhaseSpaceFunction& f, double s, int dim,
                               const QuadratureRule& rule);

/// <e_m| D(z) rho_s D(z)^dag |e_n> for m, n < dim.
Matrix displaced_kernel(cplx z, double s, int dim);

struct PositivityReport {
  bool is_positive = false;
  double min_eigenvalue = 0.0;
};

/// Positivity of rho_s (hence of every displaced kernel): all diagonal
/// entries >= -1e-12.
PositivityReport povm_positivity_check(double s, int dim);

/// Symplectic Fourier transform of exp(-alpha |xi|^2): (1/alpha) exp(-|z|^2/alpha).
cplx symplectic_fourier_gaussian(double alpha, cplx z);

/// Weight-function route for f = exp(-alpha |z|^2):
/// A_f = int varpi_s(z) fhat(-z) D(z) d^2z/pi, reduced to a Gaussian average
/// of D(z) and returned as a diagonal operator.
FockOperator weight_route_gaussian(double alpha, double s, int dim);

/// Quadrature of int exp(s|z|^2/2) D(z) d^2z/pi for s < 0.
FockOperator displacement_average(double s, int dim, const QuadratureRule& rule);

}  // namespace csq
