#include <cmath>
#include <numeric>

#include "doctest.h"

#include "csq/quadrature.hpp"

using namespace csq;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Laguerre n = 10 matches reference tables") {
  const double nodes[10] = {0.1377934705404926, 0.729454549503171,  1.8083429017403159,
                            3.4014336978548996, 5.552496140063804,  8.330152746764497,
                            11.843785837900066, 16.279257831378104, 21.99658581198076,
                            29.92069701227389};
  const double weights[10] = {0.3084411157650173,    0.4011199291552761,    0.2180682876118096,
                              0.062087456098677773,  0.0095015169751811,    0.0007530083885875384,
                              2.8259233495995642e-05, 4.249313984962698e-07, 1.839564823979633e-09,
                              9.91182721960906e-13};
  const GaussRule r = gauss_laguerre(10);
  for (int i = 0; i < 10; ++i) {
    CHECK(r.nodes[i] == doctest::Approx(nodes[i]).epsilon(1e-13));
    CHECK(r.weights[i] == doctest::Approx(weights[i]).epsilon(1e-12));
  }
}

TEST_CASE("Gauss-Hermite n = 12 matches reference tables") {
  const double w[6] = {0.5701352362624795,   0.2604923102641611,    0.05160798561588398,
                       0.00390539058462906,  8.573687043587868e-05, 2.6585516843563044e-07};
  const GaussRule r = gauss_hermite(12);
  for (int i = 0; i < 6; ++i) CHECK(r.weights[6 + i] == doctest::Approx(w[i]).epsilon(1e-12));
  CHECK(r.nodes[11] == doctest::Approx(3.889724897869782).epsilon(1e-13));
}

TEST_CASE("weights normalize and integrate moments") {
  for (int n : {1, 5, 40, 200}) {
    const GaussRule r = gauss_laguerre(n);
    CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double w : r.weights) CHECK(w >= 0.0);
  }
  const GaussRule r = gauss_laguerre(20);
  // int t^k e^{-t} = k!
  for (int k = 0; k <= 39; k += 3) {
    double s = 0.0;
    for (int i = 0; i < 20; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
    CHECK(s == doctest::Approx(std::tgamma(k + 1.0)).epsilon(1e-11));
  }
  const GaussRule h = gauss_hermite(30);
  double m4 = 0.0;
  for (int i = 0; i < 30; ++i) m4 += h.weights[i] * std::pow(h.nodes[i], 4);
  CHECK(m4 == doctest::Approx(0.75 * std::sqrt(M_PI)).epsilon(1e-13));
}

TEST_CASE("log weights survive underflow") {
  const GaussRule r = gauss_laguerre(600);
  CHECK(std::isfinite(r.log_weights.back()));
  CHECK(r.log_weights.back() < -700.0);
}

TEST_CASE("polar rule sizing") {
  const QuadratureRule q = QuadratureRule::sized_for(20, 3, 1);
  CHECK(q.radial_count() == 24);
  CHECK(q.angular_count == 43);
  CHECK(q.angle(0) == 0.0);
}

}
