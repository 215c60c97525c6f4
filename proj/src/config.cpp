#include "csq/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

#include "csq/errors.hpp"

namespace csq {

using nlohmann::json;

namespace {

void allow(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& item : j.items()) {
    const bool known = std::any_of(keys.begin(), keys.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) throw ConfigError("unknown key '" + item.key() + "' in '" + where + "'");
  }
}

double number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError("missing '" + std::string(key) + "' in '" + where + "'");
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError("'" + where + "." + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("'" + where + "." + key + "' must be finite");
  return x;
}

std::optional<double> opt_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) return std::nullopt;
  return number(j, key, where);
}

int integer(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError("'" + where + "." + key + "' must be an integer");
  return v.get<int>();
}

std::vector<double> numbers(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_array()) throw ConfigError("'" + where + "." + key + "' must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError("'" + where + "." + key + "' must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::pair<double, double> mass_pair(const json& j, const char* key, const std::string& where) {
  const auto v = numbers(j, key, where);
  if (v.size() != 2) throw ConfigError("'" + where + "." + key + "' must hold two masses");
  return {v[0], v[1]};
}

Potential1D potential_from(const json& j, const std::string& where, bool with_charge = false) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw ConfigError("'" + where + "' needs a string 'type'");
  const std::string type = j.at("type").get<std::string>();
  const double offset = opt_number(j, "offset", where).value_or(0.0);
  try {
    if (type == "harmonic") {
      if (with_charge) allow(j, {"type", "k", "m", "omega", "offset", "charge"}, where);
      else allow(j, {"type", "k", "m", "omega", "offset"}, where);
      if (j.contains("k")) return Potential1D(Harmonic{number(j, "k", where)}, offset);
      return Potential1D(Harmonic::from_mass_omega(number(j, "m", where), number(j, "omega", where)),
                         offset);
    }
    auto check = [&](std::initializer_list<const char*> keys) {
      std::vector<const char*> all(keys);
      all.push_back("type");
      all.push_back("offset");
      if (with_charge) all.push_back("charge");
      for (const auto& item : j.items())
        if (std::none_of(all.begin(), all.end(), [&](const char* k) { return item.key() == k; }))
          throw ConfigError("unknown key '" + item.key() + "' in '" + where + "'");
    };
    if (type == "gaussian") {
      check({"depth", "width"});
      return Potential1D(GaussianWell{number(j, "depth", where), number(j, "width", where)}, offset);
    }
    if (type == "morse") {
      check({"De", "alpha"});
      return Potential1D(Morse{number(j, "De", where), number(j, "alpha", where)}, offset);
    }
    if (type == "inverse_sqrt") {
      check({"strength"});
      return Potential1D(InversePower{number(j, "strength", where), 0.5}, offset);
    }
    if (type == "inverse_power") {
      check({"strength", "exponent"});
      return Potential1D(InversePower{number(j, "strength", where), number(j, "exponent", where)},
                         offset);
    }
    if (type == "step") {
      check({"height", "edge"});
      return Potential1D(Step{number(j, "height", where), opt_number(j, "edge", where).value_or(0.0)},
                         offset);
    }
    if (type == "constant") {
      check({"value"});
      return Potential1D(PowerSeries{{number(j, "value", where)}}, offset);
    }
    if (type == "polynomial") {
      check({"coeffs"});
      return Potential1D(PowerSeries{numbers(j, "coeffs", where)}, offset);
    }
    if (type == "tabulated") {
      check({"grid", "values"});
      return Potential1D(Tabulated{numbers(j, "grid", where), numbers(j, "values", where)}, offset);
    }
  } catch (const DomainError& e) {
    throw ConfigError("'" + where + "': " + e.what());
  } catch (const json::exception& e) {
    throw ConfigError("'" + where + "': " + e.what());
  }
  throw ConfigError("unknown potential type '" + type + "' in '" + where + "'");
}

ElectronicState state_from(const json& j, const std::string& where) {
  allow(j, {"omega_e", "omega_e_x_e", "omega_e_y_e", "T_min"}, where);
  ElectronicState s;
  s.omega_e = number(j, "omega_e", where);
  s.omega_e_x_e = opt_number(j, "omega_e_x_e", where).value_or(0.0);
  s.omega_e_y_e = opt_number(j, "omega_e_y_e", where).value_or(0.0);
  s.T_min = opt_number(j, "T_min", where).value_or(0.0);
  return s;
}

SpectroscopyConfig spectroscopy_from(const json& j) {
  const std::string w = "spectroscopy";
  allow(j, {"ground", "excited", "masses", "rho", "bands", "observed", "notes"}, w);
  SpectroscopyConfig sc;
  if (!j.contains("ground") || !j.contains("excited") || !j.contains("masses"))
    throw ConfigError("'spectroscopy' needs 'ground', 'excited' and 'masses'");
  sc.ground = state_from(j.at("ground"), w + ".ground");
  sc.excited = state_from(j.at("excited"), w + ".excited");
  const json& m = j.at("masses");
  allow(m, {"reference", "isotopologue"}, w + ".masses");
  if (!m.contains("reference") || !m.contains("isotopologue"))
    throw ConfigError("'spectroscopy.masses' needs 'reference' and 'isotopologue'");
  sc.reference_masses = mass_pair(m, "reference", w + ".masses");
  sc.isotopologue_masses = mass_pair(m, "isotopologue", w + ".masses");
  for (double x : {sc.reference_masses.first, sc.reference_masses.second,
                   sc.isotopologue_masses.first, sc.isotopologue_masses.second})
    if (!(x > 0.0)) throw ConfigError("atomic masses must be positive");
  sc.rho = opt_number(j, "rho", w);
  if (j.contains("bands")) {
    const json& b = j.at("bands");
    if (!b.is_array()) throw ConfigError("'spectroscopy.bands' must be an array");
    for (const auto& e : b) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw ConfigError("each band must be [n_upper, n_lower]");
      const int nu = e[0].get<int>(), nl = e[1].get<int>();
      if (nu < 0 || nl < 0) throw ConfigError("band quantum numbers must be >= 0");
      sc.bands.emplace_back(nu, nl);
    }
  } else {
    for (int n = 0; n < 5; ++n) sc.bands.emplace_back(n, 0);
  }
  if (j.contains("observed")) {
    sc.observed = numbers(j, "observed", w);
    if (sc.observed.size() != sc.bands.size())
      throw ConfigError("'spectroscopy.observed' must match the number of bands");
  }
  if (j.contains("notes")) {
    if (!j.at("notes").is_string()) throw ConfigError("'spectroscopy.notes' must be a string");
    sc.notes = j.at("notes").get<std::string>();
  }
  return sc;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

PhaseSpaceScales RunConfig::scales() const {
  return PhaseSpaceScales(hbar, ell, mass, c);
}

HamiltonianSpec RunConfig::hamiltonian() const {
  HamiltonianSpec h;
  h.mass = mass;
  h.scales = scales();
  h.potential = potential;
  h.vector_potential = vector_potential;
  h.classical_proper_energy = classical_proper_energy;
  h.include_rest_mass = include_rest_mass;
  h.basis_length = basis_length;
  return h;
}

TruncationSpec RunConfig::truncation() const {
  return guard ? TruncationSpec(N, *guard) : TruncationSpec::with_default_guard(N);
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  allow(j, {"mode", "scales", "truncation", "quadrature", "output", "quantize", "hamiltonian",
            "symbol", "povm", "spectroscopy", "notes"},
        "config");
  RunConfig rc;
  rc.hash = fnv1a64(j.dump());

  if (j.contains("mode")) {
    const json& m = j.at("mode");
    if (!m.is_string()) throw ConfigError("'mode' must be a string");
    const std::string mode = m.get<std::string>();
    if (mode == "physical") rc.mode = RunConfig::Mode::physical;
    else if (mode != "dimensionless") throw ConfigError("'mode' must be 'dimensionless' or 'physical'");
  }

  json sc = j.value("scales", json::object());
  allow(sc, {"hbar", "ell", "m", "c", "basis_length"}, "scales");
  const bool physical = rc.mode == RunConfig::Mode::physical;
  if (physical && (!sc.contains("m") || !sc.contains("c")))
    throw ConfigError("physical mode requires 'scales.m' and 'scales.c'");
  rc.hbar = opt_number(sc, "hbar", "scales").value_or(physical ? codata::hbar : 1.0);
  rc.mass = opt_number(sc, "m", "scales").value_or(1.0);
  rc.c = opt_number(sc, "c", "scales");
  if (!(rc.hbar > 0.0) || !(rc.mass > 0.0) || (rc.c && !(*rc.c > 0.0)))
    throw ConfigError("hbar, m and c must be positive");
  rc.ell = opt_number(sc, "ell", "scales").value_or(rc.c ? rc.hbar / (2.0 * rc.mass * *rc.c) : 1.0);
  if (!(rc.ell > 0.0)) throw ConfigError("'scales.ell' must be positive");
  rc.basis_length = opt_number(sc, "basis_length", "scales");

  if (j.contains("truncation")) {
    const json& t = j.at("truncation");
    allow(t, {"N", "guard"}, "truncation");
    if (t.contains("N")) rc.N = integer(t, "N", "truncation");
    if (t.contains("guard")) rc.guard = integer(t, "guard", "truncation");
  }
  if (rc.N < 2) throw ConfigError("'truncation.N' must be >= 2");
  if (rc.guard && *rc.guard < 0) throw ConfigError("'truncation.guard' must be >= 0");

  if (j.contains("quadrature")) {
    const json& q = j.at("quadrature");
    allow(q, {"radial", "angular"}, "quadrature");
    if (q.contains("radial")) rc.radial_nodes = integer(q, "radial", "quadrature");
    if (q.contains("angular")) rc.angular_nodes = integer(q, "angular", "quadrature");
    if ((rc.radial_nodes && *rc.radial_nodes < 1) || (rc.angular_nodes && *rc.angular_nodes < 1))
      throw ConfigError("quadrature sizes must be positive");
  }

  if (j.contains("output")) {
    const json& o = j.at("output");
    allow(o, {"path"}, "output");
    if (o.contains("path")) {
      if (!o.at("path").is_string()) throw ConfigError("'output.path' must be a string");
      rc.output_path = o.at("path").get<std::string>();
    }
  }

  if (j.contains("quantize")) {
    const json& q = j.at("quantize");
    allow(q, {"function", "s"}, "quantize");
    if (q.contains("function")) {
      if (!q.at("function").is_string()) throw ConfigError("'quantize.function' must be a string");
      rc.function = q.at("function").get<std::string>();
    }
    rc.s = opt_number(q, "s", "quantize").value_or(rc.s);
  }

  bool rest_mass_given = false;
  if (j.contains("hamiltonian")) {
    const json& h = j.at("hamiltonian");
    allow(h, {"potential", "vector_potential", "classical_proper_energy", "include_rest_mass",
              "levels", "tol", "max_dim"},
          "hamiltonian");
    if (h.contains("potential")) rc.potential = potential_from(h.at("potential"), "hamiltonian.potential");
    if (h.contains("vector_potential")) {
      const json& a = h.at("vector_potential");
      const double charge = opt_number(a, "charge", "hamiltonian.vector_potential").value_or(1.0);
      rc.vector_potential =
          VectorPotential1D{potential_from(a, "hamiltonian.vector_potential", true), charge};
    }
    rc.classical_proper_energy =
        opt_number(h, "classical_proper_energy", "hamiltonian").value_or(0.0);
    if (h.contains("include_rest_mass")) {
      if (!h.at("include_rest_mass").is_boolean())
        throw ConfigError("'hamiltonian.include_rest_mass' must be a boolean");
      rc.include_rest_mass = h.at("include_rest_mass").get<bool>();
      rest_mass_given = true;
    }
    if (h.contains("levels")) rc.levels = integer(h, "levels", "hamiltonian");
    rc.tol = opt_number(h, "tol", "hamiltonian").value_or(rc.tol);
    if (h.contains("max_dim")) rc.max_dim = integer(h, "max_dim", "hamiltonian");
    if (rc.levels < 1 || !(rc.tol > 0.0)) throw ConfigError("levels and tol must be positive");
  }
  if (!rest_mass_given) rc.include_rest_mass = rc.c.has_value();

  if (j.contains("symbol")) {
    const json& s = j.at("symbol");
    allow(s, {"re_min", "re_max", "im_min", "im_max", "points"}, "symbol");
    rc.symbol.re_min = opt_number(s, "re_min", "symbol").value_or(rc.symbol.re_min);
    rc.symbol.re_max = opt_number(s, "re_max", "symbol").value_or(rc.symbol.re_max);
    rc.symbol.im_min = opt_number(s, "im_min", "symbol").value_or(rc.symbol.im_min);
    rc.symbol.im_max = opt_number(s, "im_max", "symbol").value_or(rc.symbol.im_max);
    if (s.contains("points")) rc.symbol.points = integer(s, "points", "symbol");
    if (rc.symbol.points < 1) throw ConfigError("'symbol.points' must be positive");
  }

  if (j.contains("povm")) {
    const json& p = j.at("povm");
    allow(p, {"s"}, "povm");
    if (p.contains("s")) rc.povm_s = numbers(p, "s", "povm");
  }

  if (j.contains("spectroscopy")) rc.spectroscopy = spectroscopy_from(j.at("spectroscopy"));
  if (j.contains("notes") && !j.at("notes").is_string()) throw ConfigError("'notes' must be a string");

  validate(rc.hamiltonian());
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Potential1D parse_potential(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("potential is not valid JSON: ") + e.what());
  }
  return potential_from(j, "potential");
}

}  // namespace csq
