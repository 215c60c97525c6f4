#include "csq/spectroscopy.hpp"

#include <cmath>
#include <set>

#include <Eigen/Dense>

#include "csq/errors.hpp"

namespace csq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kAtomicMassUnit_eV = 931.49410242e6;
constexpr double kHc_eV_cm = 1.239841984e-4;

void check_n(int n) {
  if (n < 0) throw DomainError("vibrational quantum number must be >= 0");
}

}  // namespace

std::vector<std::string> ElectronicState::warnings() const {
  std::vector<std::string> w;
  if (!(omega_e > 0.0)) w.push_back("omega_e is not positive");
  if (std::abs(omega_e_x_e) >= 0.1 * std::abs(omega_e))
    w.push_back("omega_e x_e is not small compared with omega_e");
  if (omega_e_y_e != 0.0 && std::abs(omega_e_y_e) >= 0.1 * std::abs(omega_e_x_e))
    w.push_back("omega_e y_e is not small compared with omega_e x_e");
  return w;
}

IsotopePair::IsotopePair(double mu_, double mu_iso_) : mu(mu_), mu_iso(mu_iso_) {
  if (!(mu > 0.0) || !(mu_iso > 0.0)) throw DomainError("reduced masses must be positive");
}

IsotopePair IsotopePair::from_atoms(double m1, double m2, double m1_iso, double m2_iso) {
  return IsotopePair(reduced_mass(m1, m2), reduced_mass(m1_iso, m2_iso));
}

double IsotopePair::rho() const { return std::sqrt(mu / mu_iso); }

double reduced_mass(double m1, double m2) {
  if (!(m1 > 0.0) || !(m2 > 0.0)) throw DomainError("atomic masses must be positive");
  return m1 * m2 / (m1 + m2);
}

double atomic_mass_unit_wavenumber() { return kAtomicMassUnit_eV / kHc_eV_cm; }

double cs_gamma(double omega_e, double reduced_mass_u) {
  if (!(reduced_mass_u > 0.0)) throw DomainError("reduced mass must be positive");
  return omega_e / (16.0 * reduced_mass_u * atomic_mass_unit_wavenumber());
}

double term_value(const ElectronicState& s, double v, const Convention& conv) {
  const double g = s.omega_e * v - s.omega_e_x_e * v * v + s.omega_e_y_e * v * v * v;
  if (const auto* cs = std::get_if<CoherentState>(&conv))
    return g + cs_gamma(s.omega_e, cs->reduced_mass_u) * s.omega_e;
  return g;
}

ZeroReferenced zero_referenced_constants(const ElectronicState& s) {
  return {s.omega_e - s.omega_e_x_e + 0.75 * s.omega_e_y_e, s.omega_e_x_e - 1.5 * s.omega_e_y_e,
          s.omega_e_y_e};
}

ElectronicState from_zero_referenced(const ZeroReferenced& z, double T_min) {
  ElectronicState s;
  s.omega_e_y_e = z.omega0_y0;
  s.omega_e_x_e = z.omega0_x0 + 1.5 * s.omega_e_y_e;
  s.omega_e = z.omega0 + s.omega_e_x_e - 0.75 * s.omega_e_y_e;
  s.T_min = T_min;
  return s;
}

double zero_referenced_level(const ElectronicState& s, int n) {
  check_n(n);
  const ZeroReferenced z = zero_referenced_constants(s);
  const double x = n;
  return z.omega0 * x - z.omega0_x0 * x * x + z.omega0_y0 * x * x * x;
}

double level(const ElectronicState& s, int n, const Convention& conv) {
  check_n(n);
  return std::visit(overloaded{
                        [&](const BohrSommerfeld&) { return s.T_min + zero_referenced_level(s, n); },
                        [&](const auto&) { return s.T_min + term_value(s, n + 0.5, conv); },
                    },
                    conv);
}

double band_frequency(const BandSystem& sys, int n_upper, int n_lower, const Convention& conv) {
  return level(sys.excited, n_upper, conv) - level(sys.ground, n_lower, conv);
}

double band_frequency(const BandSystem& sys, int n_upper, int n_lower) {
  return band_frequency(sys, n_upper, n_lower, sys.convention);
}

ElectronicState isotope_scaled_state(const ElectronicState& s, double rho) {
  if (!(rho > 0.0)) throw DomainError("isotope ratio must be positive");
  ElectronicState out = s;
  out.omega_e *= rho;
  out.omega_e_x_e *= rho * rho;
  out.omega_e_y_e *= rho * rho * rho;
  return out;
}

ElectronicState isotope_scaled_state(const ElectronicState& s, const IsotopePair& pair) {
  return isotope_scaled_state(s, pair.rho());
}

BandSystem isotopologue(const BandSystem& sys, const IsotopePair& pair) {
  BandSystem out = sys;
  out.ground = isotope_scaled_state(sys.ground, pair);
  out.excited = isotope_scaled_state(sys.excited, pair);
  if (auto* cs = std::get_if<CoherentState>(&out.convention))
    cs->reduced_mass_u *= pair.mu_iso / pair.mu;
  return out;
}

namespace {

ElectronicState bs_scaled(const ElectronicState& s, double rho) {
  ZeroReferenced z = zero_referenced_constants(s);
  z.omega0 *= rho;
  z.omega0_x0 *= rho * rho;
  z.omega0_y0 *= rho * rho * rho;
  return from_zero_referenced(z, s.T_min);
}

}  // namespace

double isotopic_displacement(const BandSystem& sys, const IsotopePair& pair, int n_upper,
                             int n_lower, const Convention& conv) {
  const double rho = pair.rho();
  BandSystem iso = sys;
  Convention iso_conv = conv;
  if (std::holds_alternative<BohrSommerfeld>(conv)) {
    iso.ground = bs_scaled(sys.ground, rho);
    iso.excited = bs_scaled(sys.excited, rho);
  } else {
    iso.ground = isotope_scaled_state(sys.ground, rho);
    iso.excited = isotope_scaled_state(sys.excited, rho);
    if (const auto* cs = std::get_if<CoherentState>(&conv))
      iso_conv = CoherentState{cs->reduced_mass_u * pair.mu_iso / pair.mu};
  }
  return band_frequency(iso, n_upper, n_lower, iso_conv) -
         band_frequency(sys, n_upper, n_lower, conv);
}

double ProgressionFit::predict_qm(double n) const {
  const double v = n + 0.5;
  return A * v + B * v * v + C;
}

double ProgressionFit::predict_bs(double n) const { return (A + B / (1.0 + rho)) * n + B * n * n; }

double ProgressionFit::omega_e_upper() const { return A / (rho - 1.0); }

double ProgressionFit::omega_e_x_e_upper() const { return -B / (rho * rho - 1.0); }

double ProgressionFit::omega_e_lower(double wx) const {
  return 2.0 * ((rho * rho - 1.0) * wx / 4.0 - C) / (rho - 1.0);
}

ProgressionFit fit_progression_constants(const std::vector<std::pair<int, double>>& points,
                                         double rho) {
  std::set<int> distinct;
  for (const auto& [n, v] : points) {
    check_n(n);
    if (!std::isfinite(v)) throw DomainError("non-finite displacement");
    distinct.insert(n);
  }
  if (distinct.size() < 3) throw DomainError("fit needs at least three distinct n'");
  if (!(rho > 0.0) || rho == 1.0) throw DomainError("isotope ratio must be positive and != 1");
  const Eigen::Index m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd X(m, 3);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double v = points[i].first + 0.5;
    X(i, 0) = v;
    X(i, 1) = v * v;
    X(i, 2) = 1.0;
    y(i) = points[i].second;
  }
  const Eigen::Vector3d c = X.colPivHouseholderQr().solve(y);
  ProgressionFit fit;
  fit.A = c(0);
  fit.B = c(1);
  fit.C = c(2);
  fit.rho = rho;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double r = y(i) - fit.predict_qm(points[i].first);
    fit.residuals.push_back(r);
    fit.max_residual = std::max(fit.max_residual, std::abs(r));
  }
  return fit;
}

}  // namespace csq
