#include "csq/potential.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "csq/errors.hpp"
#include "csq/quadrature.hpp"

namespace csq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Natural cubic spline second derivatives (tridiagonal solve).
std::vector<double> spline_second_derivatives(const std::vector<double>& x,
                                              const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> m(n, 0.0);
  if (n < 3) return m;
  std::vector<double> c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x[i] - x[i - 1];
    const double h1 = x[i + 1] - x[i];
    const double a = h0 / 6.0;
    const double b = (h0 + h1) / 3.0;
    const double cc = h1 / 6.0;
    const double rhs = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
    const double denom = b - a * c[i - 1];
    c[i] = cc / denom;
    d[i] = (rhs - a * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m[i] = d[i] - c[i] * m[i + 1];
    if (i == 1) break;
  }
  return m;
}

double spline_eval(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& m, double q, int deriv = 0) {
  if (q <= x.front()) return deriv == 0 ? y.front() : 0.0;
  if (q >= x.back()) return deriv == 0 ? y.back() : 0.0;
  const auto it = std::upper_bound(x.begin(), x.end(), q);
  const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
  const double h = x[i + 1] - x[i];
  const double a = (x[i + 1] - q) / h;
  const double b = (q - x[i]) / h;
  if (deriv == 2) return a * m[i] + b * m[i + 1];
  return a * y[i] + b * y[i + 1] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
}

const GaussRule& hermite_rule(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_hermite(n)).first;
  return it->second;
}

double double_factorial_odd(int r) {  // (2r - 1)!!
  double v = 1.0;
  for (int k = 2 * r - 1; k > 1; k -= 2) v *= k;
  return v;
}

double binom(int n, int k) {
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

}  // namespace

Potential1D::Potential1D(Shape shape, double energy_offset)
    : shape_(std::move(shape)), offset_(energy_offset) {
  if (!std::isfinite(offset_)) throw DomainError("energy offset must be finite");
  std::visit(overloaded{
                 [](const Harmonic& h) {
                   if (!std::isfinite(h.k)) throw DomainError("harmonic constant must be finite");
                 },
                 [](const GaussianWell& g) {
                   if (!(g.width > 0.0)) throw DomainError("Gaussian width must be positive");
                 },
                 [](const Morse& m) {
                   if (!(m.alpha > 0.0)) throw DomainError("Morse alpha must be positive");
                 },
                 [](const InversePower& p) {
                   if (!(p.exponent > 0.0)) throw DomainError("inverse power exponent must be positive");
                 },
                 [](const Step&) {},
                 [](const PowerSeries& p) {
                   if (p.coeffs.empty()) throw DomainError("power series needs coefficients");
                 },
                 [this](const Tabulated& t) {
                   if (t.grid.size() < 2 || t.grid.size() != t.values.size())
                     throw DomainError("tabulated potential needs matching grid/values, >= 2 points");
                   for (std::size_t i = 1; i < t.grid.size(); ++i)
                     if (!(t.grid[i] > t.grid[i - 1]))
                       throw DomainError("tabulated grid must be strictly increasing");
                   for (double v : t.values)
                     if (!std::isfinite(v)) throw DomainError("tabulated values must be finite");
                   spline_m_ = spline_second_derivatives(t.grid, t.values);
                 },
                 [](const Custom& c) {
                   if (!c.fn) throw DomainError("custom potential needs a callable");
                 },
             },
             shape_);
}

Smoothness Potential1D::smoothness() const {
  return std::visit(overloaded{
                        [](const InversePower&) { return Smoothness::singular; },
                        [](const Step&) { return Smoothness::discontinuous; },
                        [](const Tabulated&) { return Smoothness::piecewise_cubic; },
                        [](const Custom& c) {
                          return c.second_derivative ? Smoothness::analytic : Smoothness::unknown;
                        },
                        [](const auto&) { return Smoothness::analytic; },
                    },
                    shape_);
}

std::string Potential1D::name() const {
  return std::visit(overloaded{
                        [](const Harmonic&) { return std::string("harmonic"); },
                        [](const GaussianWell&) { return std::string("gaussian"); },
                        [](const Morse&) { return std::string("morse"); },
                        [](const InversePower&) { return std::string("inverse_power"); },
                        [](const Step&) { return std::string("step"); },
                        [](const PowerSeries&) { return std::string("polynomial"); },
                        [](const Tabulated&) { return std::string("tabulated"); },
                        [](const Custom& c) { return c.name; },
                    },
                    shape_);
}

double Potential1D::operator()(double q) const {
  const double v = std::visit(
      overloaded{
          [q](const Harmonic& h) { return 0.5 * h.k * q * q; },
          [q](const GaussianWell& g) { return -g.depth * std::exp(-q * q / (g.width * g.width)); },
          [q](const Morse& m) {
            const double e = 1.0 - std::exp(-m.alpha * q);
            return m.De * e * e;
          },
          [q](const InversePower& p) { return p.strength * std::pow(std::abs(q), -p.exponent); },
          [q](const Step& s) { return q > s.edge ? s.height : 0.0; },
          [q](const PowerSeries& p) {
            double acc = 0.0;
            for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * q + *it;
            return acc;
          },
          [q, this](const Tabulated& t) { return spline_eval(t.grid, t.values, spline_m_, q); },
          [q](const Custom& c) { return c.fn(q); },
      },
      shape_);
  return v + offset_;
}

std::optional<double> Potential1D::second_derivative(double q) const {
  return std::visit(
      overloaded{
          [](const Harmonic& h) -> std::optional<double> { return h.k; },
          [q](const GaussianWell& g) -> std::optional<double> {
            const double w2 = g.width * g.width;
            return 2.0 * g.depth / w2 * (1.0 - 2.0 * q * q / w2) * std::exp(-q * q / w2);
          },
          [q](const Morse& m) -> std::optional<double> {
            const double e = std::exp(-m.alpha * q);
            return m.De * m.alpha * m.alpha * (4.0 * e * e - 2.0 * e);
          },
          [](const InversePower&) -> std::optional<double> { return std::nullopt; },
          [](const Step&) -> std::optional<double> { return std::nullopt; },
          [q](const PowerSeries& p) -> std::optional<double> {
            double acc = 0.0;
            for (std::size_t k = p.coeffs.size(); k-- > 2;)
              acc = acc * q + static_cast<double>(k * (k - 1)) * p.coeffs[k];
            return acc;
          },
          [q, this](const Tabulated& t) -> std::optional<double> {
            return spline_eval(t.grid, t.values, spline_m_, q, 2);
          },
          [q](const Custom& c) -> std::optional<double> {
            if (!c.second_derivative) return std::nullopt;
            return c.second_derivative(q);
          },
      },
      shape_);
}

Potential1D Potential1D::squared() const {
  if (offset_ == 0.0) {
    if (const auto* g = std::get_if<GaussianWell>(&shape_))
      return Potential1D(GaussianWell{-g->depth * g->depth, g->width / std::sqrt(2.0)});
    if (const auto* h = std::get_if<Harmonic>(&shape_))
      return Potential1D(PowerSeries{{0.0, 0.0, 0.0, 0.0, 0.25 * h->k * h->k}});
  }
  if (const auto* p = std::get_if<PowerSeries>(&shape_)) {
    std::vector<double> c = p->coeffs;
    c[0] += offset_;
    std::vector<double> sq(2 * c.size() - 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) sq[i + j] += c[i] * c[j];
    return Potential1D(PowerSeries{std::move(sq)});
  }
  const Potential1D self = *this;
  return Potential1D(Custom{[self](double q) {
                              const double v = self(q);
                              return v * v;
                            },
                            {}, name() + "^2"});
}

Smoothed::Smoothed(std::function<double(double)> fn, double ell, SmoothingMethod method,
                   std::optional<double> interpolation_error)
    : fn_(std::move(fn)), ell_(ell), method_(method), interp_error_(interpolation_error) {}

double gauss_hermite_smooth_at(const std::function<double(double)>& f, double ell, double q) {
  auto eval = [&](int n) {
    const GaussRule& r = hermite_rule(n);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += r.weights[i] * f(q - ell * r.nodes[i]);
    return acc / std::sqrt(std::numbers::pi);
  };
  double prev = eval(16);
  for (int n = 32; n <= 1024; n *= 2) {
    const double cur = eval(n);
    if (!std::isfinite(cur)) throw NumericError("smoothing integral is non-finite");
    if (std::abs(cur - prev) <= 1e-13 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

Smoothed gaussian_smooth(const std::function<double(double)>& f, double ell) {
  if (!(ell > 0.0)) throw DomainError("smoothing length must be positive");
  if (!f) throw DomainError("empty function");
  return Smoothed([f, ell](double q) { return gauss_hermite_smooth_at(f, ell, q); }, ell,
                  SmoothingMethod::gauss_hermite);
}

namespace {

// strength |y|^{-p} smoothed at q. With y = +-(ell^{1/k} s)^k, k = 1/(1-p), the
// integrand becomes k ell^{1/k} (exp(-(Q - s^k)^2) + exp(-(Q + s^k)^2)), Q = q/ell.
double inverse_power_smooth(double strength, double p, double ell, double q) {
  const double k = 1.0 / (1.0 - p);
  const double qq = q / ell;
  auto g = [k, qq](double s) {
    const double y = std::pow(s, k);
    return std::exp(-(qq - y) * (qq - y)) + std::exp(-(qq + y) * (qq + y));
  };
  using boost::math::quadrature::gauss_kronrod;
  const double peak = qq > 0.0 ? std::pow(qq, 1.0 / k) : 0.0;
  const double smax = std::pow(std::abs(qq) + 9.0, 1.0 / k);
  double integral = 0.0;
  if (peak > 0.0) integral += gauss_kronrod<double, 31>::integrate(g, 0.0, peak, 20, 1e-14);
  integral += gauss_kronrod<double, 31>::integrate(g, peak, smax, 20, 1e-14);
  return strength * k * std::pow(ell, 1.0 / k - 1.0) / std::sqrt(std::numbers::pi) * integral;
}

double leave_one_out_error(const Tabulated& t) {
  const std::size_t n = t.grid.size();
  if (n < 4) return std::numeric_limits<double>::quiet_NaN();
  double err = 0.0;
  for (std::size_t skip = 1; skip + 1 < n; ++skip) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n; ++i)
      if (i != skip) {
        x.push_back(t.grid[i]);
        y.push_back(t.values[i]);
      }
    const auto m = spline_second_derivatives(x, y);
    err = std::max(err, std::abs(spline_eval(x, y, m, t.grid[skip]) - t.values[skip]));
  }
  return err;
}

}  // namespace

Smoothed gaussian_smooth(const Potential1D& f, double ell) {
  if (!(ell > 0.0)) throw DomainError("smoothing length must be positive");
  const double off = f.energy_offset();
  const double l2 = ell * ell;
  return std::visit(
      overloaded{
          [&](const Harmonic& h) {
            return Smoothed([k = h.k, l2, off](double q) { return 0.5 * k * q * q + 0.25 * k * l2 + off; },
                            ell, SmoothingMethod::closed_form);
          },
          [&](const GaussianWell& g) {
            const double w2 = g.width * g.width;
            const double amp = -g.depth * g.width / std::sqrt(w2 + l2);
            return Smoothed([amp, w2, l2, off](double q) { return amp * std::exp(-q * q / (w2 + l2)) + off; },
                            ell, SmoothingMethod::closed_form);
          },
          [&](const Morse& m) {
            const double e1 = std::exp(m.alpha * m.alpha * l2 / 4.0);
            const double e2 = std::exp(m.alpha * m.alpha * l2);
            return Smoothed(
                [m, e1, e2, off](double q) {
                  const double e = std::exp(-m.alpha * q);
                  return m.De * (1.0 - 2.0 * e * e1 + e * e * e2) + off;
                },
                ell, SmoothingMethod::closed_form);
          },
          [&](const InversePower& p) {
            if (p.exponent >= 1.0)
              throw DomainError("|q|^-p with p >= 1 is not integrable against the Gaussian");
            return Smoothed(
                [p, ell, off](double q) { return inverse_power_smooth(p.strength, p.exponent, ell, q) + off; },
                ell, SmoothingMethod::singular_quadrature);
          },
          [&](const Step& s) {
            return Smoothed(
                [s, ell, off](double q) { return 0.5 * s.height * std::erfc((s.edge - q) / ell) + off; },
                ell, SmoothingMethod::closed_form);
          },
          [&](const PowerSeries& p) {
            // E[(q - x)^j] for x ~ N(0, ell^2/2); odd moments vanish.
            const std::size_t d = p.coeffs.size();
            std::vector<double> out(d, 0.0);
            for (std::size_t j = 0; j < d; ++j)
              for (std::size_t i = 0; i <= j; i += 2) {
                const int r = static_cast<int>(i / 2);
                const double moment = std::pow(l2 / 2.0, r) * double_factorial_odd(r);
                out[j - i] += p.coeffs[j] * binom(static_cast<int>(j), static_cast<int>(i)) * moment;
              }
            out[0] += off;
            return Smoothed(
                [out](double q) {
                  double acc = 0.0;
                  for (auto it = out.rbegin(); it != out.rend(); ++it) acc = acc * q + *it;
                  return acc;
                },
                ell, SmoothingMethod::closed_form);
          },
          [&](const Tabulated& t) {
            const Potential1D copy = f;
            auto fn = [copy, ell](double q) {
              auto integrand = [&](double x) { return copy(q - x) * std::exp(-x * x / (ell * ell)); };
              using boost::math::quadrature::gauss_kronrod;
              const double v = gauss_kronrod<double, 61>::integrate(integrand, -9.0 * ell, 9.0 * ell, 25, 1e-13);
              return v / std::sqrt(std::numbers::pi * ell * ell);
            };
            return Smoothed(fn, ell, SmoothingMethod::spline_quadrature, leave_one_out_error(t));
          },
          [&](const Custom& c) {
            auto fn = [c, ell, off](double q) { return gauss_hermite_smooth_at(c.fn, ell, q) + off; };
            return Smoothed(fn, ell, SmoothingMethod::gauss_hermite);
          },
      },
      f.shape());
}

}  // namespace csq
