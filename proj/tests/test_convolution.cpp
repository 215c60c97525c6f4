#include <cmath>

#include "doctest.h"

#include "csq/convolution.hpp"
#include "csq/errors.hpp"
#include "csq/quantize.hpp"

using namespace csq;

TEST_SUITE("convolution") {

TEST_CASE("closed-form smoothing") {
  const double ell = 0.7;
  const Smoothed lin = gaussian_smooth(Potential1D(PowerSeries{{0.0, 1.0}}), ell);
  CHECK(lin(1.3) == doctest::Approx(1.3));
  const Smoothed h = gaussian_smooth(Potential1D(Harmonic::from_mass_omega(2.0, 3.0)), ell);
  CHECK(h(0.4) == doctest::Approx(0.5 * 18.0 * 0.16 + 0.25 * 18.0 * ell * ell).epsilon(1e-14));
  CHECK(h.method() == SmoothingMethod::closed_form);
}

TEST_CASE("closed forms agree with brute-force quadrature") {
  const double ell = 0.3;
  const Potential1D morse(Morse{2.0, 1.3});
  // reference from arbitrary-precision quadrature of the convolution integral
  CHECK(gaussian_smooth(morse, ell)(0.4) == doctest::Approx(0.352788069389643831).epsilon(1e-13));
  for (const Potential1D& v : {morse, Potential1D(GaussianWell{3.0, 0.8}),
                              Potential1D(PowerSeries{{1.0, -2.0, 0.5, 0.0, 0.25}}),
                              Potential1D(Step{1.5, 0.2})}) {
    const Smoothed closed = gaussian_smooth(v, ell);
    const Smoothed brute = gaussian_smooth([v](double q) { return v(q); }, ell);
    for (double q : {-0.9, -0.1, 0.0, 0.35, 1.2}) {
      if (std::holds_alternative<Step>(v.shape())) continue;
      CHECK(closed(q) == doctest::Approx(brute(q)).epsilon(1e-9));
    }
  }
  const Smoothed step = gaussian_smooth(Potential1D(Step{1.5, 0.2}), ell);
  CHECK(step(0.2) == doctest::Approx(0.75));
  CHECK(step(5.0) == doctest::Approx(1.5));
}

TEST_CASE("singular potential smoothing") {
  const double ell = 0.3;
  const Smoothed s = gaussian_smooth(Potential1D::inverse_sqrt(1.0), ell);
  CHECK(s.method() == SmoothingMethod::singular_quadrature);
  CHECK(s(0.0) == doctest::Approx(std::tgamma(0.25) / std::sqrt(M_PI * ell)).epsilon(1e-10));
  // arbitrary-precision quadrature references
  CHECK(gaussian_smooth(Potential1D::inverse_sqrt(1.0), 1.0)(1.0) ==
        doctest::Approx(1.34592755670532482).epsilon(1e-10));
  CHECK(gaussian_smooth(Potential1D::inverse_sqrt(1.0), 0.5)(0.3) ==
        doctest::Approx(2.44244117276988524).epsilon(1e-10));
  CHECK(s(-0.7) == doctest::Approx(s(0.7)));
  CHECK_THROWS_AS(gaussian_smooth(Potential1D(InversePower{1.0, 2.0}), ell), DomainError);
  CHECK_THROWS_AS(gaussian_smooth(Potential1D(Harmonic{1.0}), 0.0), DomainError);
}

TEST_CASE("tabulated potentials report interpolation error") {
  std::vector<double> grid, vals;
  for (int i = 0; i <= 80; ++i) {
    const double q = -4.0 + 0.1 * i;
    grid.push_back(q);
    vals.push_back(std::exp(-q * q));
  }
  const Potential1D tab(Tabulated{grid, vals});
  const Smoothed s = gaussian_smooth(tab, 0.5);
  REQUIRE(s.interpolation_error());
  CHECK(*s.interpolation_error() < 1e-3);
  const Smoothed exact = gaussian_smooth(Potential1D(GaussianWell{-1.0, 1.0}), 0.5);
  CHECK(std::abs(s(0.3) - exact(0.3)) <= 10.0 * *s.interpolation_error());
  CHECK_THROWS_AS(Potential1D(Tabulated{{0.0, 0.0, 1.0}, {1.0, 2.0, 3.0}}), DomainError);
}

TEST_CASE("functions of Q and P") {
  const PhaseSpaceScales sc = PhaseSpaceScales::dimensionless();
  const TruncationSpec tr(24, 8);
  const auto [Q, P] = position_momentum(24, sc);
  CHECK(max_abs_diff(operator_of_position_function(Potential1D(PowerSeries{{0.0, 1.0}}), tr, sc), Q) <= 1e-10);
  CHECK(max_abs_diff(operator_of_momentum_function(Potential1D(PowerSeries{{0.0, 1.0}}), tr, sc), P) <= 1e-10);

  const double m = 1.5, w = 0.8;
  const FockOperator hv = operator_of_position_function(Potential1D(Harmonic::from_mass_omega(m, w)), tr, sc);
  const FockOperator want = 0.5 * m * w * w * (Q * Q) + 0.25 * m * w * w * identity_op(24);
  CHECK(max_abs_diff(hv, want, 23) <= 1e-8);

  // p^2/2m -> P^2/2m + hbar^2/(4 m ell^2)
  const FockOperator kin = operator_of_momentum_function(Potential1D(PowerSeries{{0.0, 0.0, 1.0 / (2 * m)}}), tr, sc);
  CHECK(max_abs_diff(kin, (1.0 / (2 * m)) * (P * P) + (1.0 / (4 * m)) * identity_op(24), 23) <= 1e-8);

  // p^4 -> P^4 + 3 wp^2 P^2 + (3/4) wp^4
  const FockOperator p4 = operator_of_momentum_function(Potential1D(PowerSeries{{0, 0, 0, 0, 1.0}}), tr, sc);
  const FockOperator P2 = P * P;
  CHECK(max_abs_diff(p4, P2 * P2 + 3.0 * P2 + 0.75 * identity_op(24), 20) <= 1e-8);
}

TEST_CASE("convolution and quadrature routes agree for a Gaussian") {
  const int N = 32;
  const PhaseSpaceScales sc = PhaseSpaceScales::dimensionless();
  const FockOperator conv =
      operator_of_position_function(Potential1D(GaussianWell{-1.0, 1.0}), TruncationSpec(N, 64), sc);
  RadialAngular g;
  g.fn = [](double r, double th) {
    const double q = std::sqrt(2.0) * r * std::cos(th);
    return cplx(std::exp(-q * q), 0.0);
  };
  g.decay = RadialDecay::gaussian;
  g.harmonic_cutoff = 2 * N;
  g.degree = 2 * N;
  g.real_valued = true;
  const FockOperator quad = cs_quantize_quadrature(g, N, QuadratureRule(160, 4 * N + 1));
  CHECK(max_abs_diff(conv, quad) <= 1e-6);
}

TEST_CASE("mixed forms") {
  const PhaseSpaceScales sc = PhaseSpaceScales::dimensionless();
  const TruncationSpec tr(20, 10);
  const auto [Q, P] = position_momentum(30, sc);
  const FockOperator one = quantize_mixed(Potential1D(PowerSeries{{1.0}}), MixedForm::p_times_f_of_q, tr, sc);
  CHECK(max_abs_diff(one, P.leading_block(20)) <= 1e-10);
  const FockOperator pq = quantize_mixed(Potential1D(PowerSeries{{0.0, 1.0}}), MixedForm::p_times_f_of_q, tr, sc);
  CHECK(max_abs_diff(pq, symmetrized_product(P, Q).leading_block(20)) <= 1e-10);
  const FockOperator pq2 = quantize_mixed(Potential1D(PowerSeries{{0.0, 0.0, 1.0}}), MixedForm::p_times_f_of_q, tr, sc);
  const FockOperator q2s = Q * Q + 0.5 * identity_op(30);
  CHECK(max_abs_diff(pq2, symmetrized_product(P, q2s).leading_block(20)) <= 1e-9);
  CHECK(pq2.hermitian_hint());
  const FockOperator qp = quantize_mixed(Potential1D(PowerSeries{{0.0, 1.0}}), MixedForm::q_times_f_of_p, tr, sc);
  CHECK(max_abs_diff(qp, symmetrized_product(Q, P).leading_block(20)) <= 1e-10);
}

TEST_CASE("semiclassical residual") {
  CHECK(semiclassical_residual(Potential1D(Harmonic{2.0}), 0.3).residual <= 1e-14);
  const auto ratios = darwin_scaling_ratios(Potential1D(GaussianWell{1.0, 1.0}), 0.2, 3);
  for (double r : ratios) CHECK(r == doctest::Approx(16.0).epsilon(0.125));
  CHECK_FALSE(semiclassical_residual(Potential1D(Step{1.0, 0.0}), 0.1).valid);
}

TEST_CASE("Compton scales") {
  const PhaseSpaceScales e = compton_scales(codata::electron_mass, codata::c);
  REQUIRE(e.compton_length());
  CHECK(*e.compton_length() == doctest::Approx(3.8615926772428334e-13).epsilon(1e-12));
  CHECK(e.ell() == doctest::Approx(1.9307963386214167e-13).epsilon(1e-12));
  CHECK(e.wp() * e.ell() == doctest::Approx(codata::hbar).epsilon(1e-15));
  const double m = 2.0, c = 7.0;
  const PhaseSpaceScales s = compton_scales(m, c, 1.0);
  CHECK(1.0 / (4 * m * s.ell() * s.ell()) == doctest::Approx(m * c * c).epsilon(1e-15));
  CHECK(s.wp() == doctest::Approx(2 * m * c));
}

TEST_CASE("Hamiltonian assembly") {
  const double m = 1.0, c = 50.0;
  HamiltonianSpec spec;
  spec.mass = m;
  spec.scales = compton_scales(m, c, 1.0);
  spec.basis_length = 1.0;
  const TruncationSpec tr(24, 8);
  const auto [Q, P] = position_momentum(32, 1.0, 1.0);
  const FockOperator free = build_hamiltonian(spec, tr);
  const FockOperator want = ((0.5 / m) * (P * P)).leading_block(24) + m * c * c * identity_op(24);
  CHECK(max_abs_diff(free, want) <= 1e-9);

  spec.vector_potential = VectorPotential1D{Potential1D(PowerSeries{{0.7}}), 1.3};
  const FockOperator gauge = build_hamiltonian(spec, tr);
  const FockOperator pi = P - 0.91 * identity_op(32);
  CHECK(max_abs_diff(gauge, ((0.5 / m) * (pi * pi)).leading_block(24) + m * c * c * identity_op(24)) <= 1e-9);

  HamiltonianSpec bad = spec;
  bad.scales = PhaseSpaceScales(1.0, 0.1, m, c);
  CHECK_THROWS_AS(build_hamiltonian(bad, tr), ConfigError);
  bad.scales = PhaseSpaceScales(1.0, 0.1);
  CHECK_THROWS_AS(build_hamiltonian(bad, tr), ConfigError);
  bad.include_rest_mass = false;
  CHECK_NOTHROW(build_hamiltonian(bad, tr));
  bad.mass = -1.0;
  CHECK_THROWS_AS(build_hamiltonian(bad, tr), ConfigError);
}

TEST_CASE("magnetic term uses the smoothed square") {
  HamiltonianSpec spec;
  spec.include_rest_mass = false;
  spec.scales = PhaseSpaceScales(1.0, 0.5);
  spec.basis_length = 1.0;
  spec.vector_potential = VectorPotential1D{Potential1D(PowerSeries{{0.0, 1.0}}), 1.0};
  const TruncationSpec tr(20, 12);
  // A = q: A~ = q and (A^2)~ - A~^2 = ell^2/2, so H = (P - Q)^2/2 + ell^2/4 + hbar^2/(4 ell^2)
  const auto [Q, P] = position_momentum(32, 1.0, 1.0);
  const FockOperator pi = P - Q;
  const FockOperator want = (0.5 * (pi * pi)).leading_block(20) + (0.0625 + 1.0) * identity_op(20);
  CHECK(max_abs_diff(build_hamiltonian(spec, tr), want) <= 1e-9);
}

}
