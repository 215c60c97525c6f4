#include "csq/commands.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <variant>

#include "csq/errors.hpp"
#include "csq/phase_space_function.hpp"
#include "csq/quantize.hpp"
#include "csq/spectra.hpp"

namespace csq {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Csv {
 public:
  explicit Csv(std::uint64_t hash) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
    out_ << "# config_sha=" << buf << " tool=csq " << kToolVersion << '\n';
  }

  void meta(const std::string& key, const std::string& value) {
    out_ << "# " << key << '=' << value << '\n';
  }

  void header(const std::vector<std::string>& cols) { line(cols); }

  void row(const std::vector<std::string>& cells) { line(cells); }

  std::string str() const { return out_.str(); }

 private:
  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      const std::string& c = cells[i];
      if (c.find_first_of(",\"\n") != std::string::npos) {
        out_ << '"';
        for (char ch : c) out_ << (ch == '"' ? std::string("\"\"") : std::string(1, ch));
        out_ << '"';
      } else {
        out_ << c;
      }
    }
    out_ << '\n';
  }

  std::ostringstream out_;
};

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "; " : "") + v[i];
  return s.empty() ? "none" : s;
}

struct Quantized {
  FockOperator op;
  std::string route;
  std::optional<Polynomial> polynomial;
};

Quantized quantize_from_config(const RunConfig& cfg) {
  const PhaseSpaceScales sc = cfg.scales();
  const std::string& f = cfg.function;
  if (f == "potential:q" || f == "potential:p") {
    if (!cfg.potential) throw ConfigError("'" + f + "' needs hamiltonian.potential in the config");
    const TruncationSpec tr = cfg.truncation();
    if (f == "potential:q")
      return {operator_of_position_function(*cfg.potential, tr, sc, cfg.basis_length),
              "convolution-q", std::nullopt};
    return {operator_of_momentum_function(*cfg.potential, tr, sc, cfg.basis_length),
            "convolution-p", std::nullopt};
  }
  Polynomial p = parse_polynomial(f, sc.ell(), sc.wp());
  if (cfg.s == -1.0) return {cs_quantize_polynomial(p, cfg.N), "exact-moments", p};
  const QuadratureRule rule =
      (cfg.radial_nodes || cfg.angular_nodes)
          ? QuadratureRule(cfg.radial_nodes.value_or(cfg.N + p.max_degree() + 1),
                           cfg.angular_nodes.value_or(2 * (cfg.N + p.max_harmonic()) + 1))
          : QuadratureRule::sized_for(cfg.N, p.max_degree(), p.max_harmonic());
  FockOperator op = integral_quantize(p, cfg.s, cfg.N, rule);
  return {op, "laguerre-polar " + std::to_string(rule.radial_count()) + "x" +
                  std::to_string(rule.angular_count),
          p};
}

std::optional<std::vector<double>> harmonic_levels(const RunConfig& cfg, int k) {
  if (!cfg.potential || cfg.vector_potential || !cfg.include_rest_mass || !cfg.c) return std::nullopt;
  const auto* h = std::get_if<Harmonic>(&cfg.potential->shape());
  if (!h || !(h->k > 0.0)) return std::nullopt;
  const double omega = std::sqrt(h->k / cfg.mass);
  auto ref = harmonic_reference(cfg.mass, omega, cfg.scales(), k).levels;
  for (double& e : ref) e += cfg.classical_proper_energy + cfg.potential->energy_offset();
  return ref;
}

}  // namespace

RunConfig resolve_config(const CommandOptions& opts) {
  RunConfig cfg = opts.config_path ? load_config(*opts.config_path) : parse_config("{}");
  if (opts.N) {
    if (*opts.N < 2) throw ConfigError("-N must be >= 2");
    cfg.N = *opts.N;
  }
  if (opts.guard) {
    if (*opts.guard < 0) throw ConfigError("--guard must be >= 0");
    cfg.guard = *opts.guard;
  }
  if (!opts.s.empty()) {
    cfg.s = opts.s.front();
    cfg.povm_s = opts.s;
  }
  if (opts.function) cfg.function = *opts.function;
  return cfg;
}

std::string cmd_quantize(const RunConfig& cfg) {
  const Quantized q = quantize_from_config(cfg);
  Csv csv(cfg.hash);
  csv.meta("N", std::to_string(cfg.N));
  csv.meta("s", fmt(cfg.s));
  csv.meta("function", cfg.function);
  csv.meta("quadrature", q.route);
  csv.meta("warnings", join(q.op.warnings()));
  csv.header({"row", "col", "real", "imag"});
  for (int r = 0; r < q.op.dim(); ++r)
    for (int c = 0; c < q.op.dim(); ++c)
      csv.row({std::to_string(r), std::to_string(c), fmt(q.op(r, c).real()), fmt(q.op(r, c).imag())});
  return csv.str();
}

std::string cmd_spectrum(const RunConfig& cfg) {
  const HamiltonianSpec spec = cfg.hamiltonian();
  const int k = cfg.levels;
  auto trunc_for = [&](int dim) {
    return cfg.guard ? TruncationSpec(dim, *cfg.guard) : TruncationSpec::with_default_guard(dim);
  };
  std::vector<double> cs, can, deltas;
  bool converged = false;
  int dim = cfg.N;
  if (cfg.potential) {
    const SpectrumResult r = spectrum(
        [&](int n) { return build_hamiltonian(spec, trunc_for(n)); }, k, cfg.tol, cfg.N, cfg.max_dim);
    cs = r.eigenvalues;
    deltas = r.deltas;
    converged = true;
    dim = r.dims.second;
  } else {
    if (k > cfg.N) throw ConfigError("levels exceeds N");
    cs = lowest_eigenvalues(build_hamiltonian(spec, trunc_for(dim)), k);
  }
  can = lowest_eigenvalues(build_canonical_hamiltonian(spec, trunc_for(dim)), k);
  const auto ref = harmonic_levels(cfg, k);

  Csv csv(cfg.hash);
  csv.meta("N", std::to_string(dim));
  csv.meta("potential", cfg.potential ? cfg.potential->name() : "none");
  csv.meta("proper_energy", fmt(proper_energy(spec)));
  csv.header({"n", "E_cs", "E_canonical", "offset", "spacing_cs", "spacing_canonical", "convergence",
              "converged", "E_reference"});
  for (int n = 0; n < k; ++n) {
    const bool last = n + 1 == k;
    csv.row({std::to_string(n), fmt(cs[n]), fmt(can[n]), fmt(cs[n] - can[n]),
             last ? "" : fmt(cs[n + 1] - cs[n]), last ? "" : fmt(can[n + 1] - can[n]),
             deltas.empty() ? "" : fmt(deltas[n]), converged ? "true" : "false",
             ref ? fmt((*ref)[n]) : ""});
  }
  return csv.str();
}

std::string cmd_symbol(const RunConfig& cfg) {
  const Quantized q = quantize_from_config(cfg);
  const SymbolGrid& g = cfg.symbol;
  Csv csv(cfg.hash);
  csv.meta("N", std::to_string(cfg.N));
  csv.meta("s", fmt(cfg.s));
  csv.meta("function", cfg.function);
  csv.header({"re", "im", "lower_real", "lower_imag", "classical_real", "classical_imag",
              "truncation_warning"});
  auto axis = [&](double lo, double hi, int i) {
    return g.points == 1 ? lo : lo + (hi - lo) * i / (g.points - 1);
  };
  for (int i = 0; i < g.points; ++i)
    for (int j = 0; j < g.points; ++j) {
      const cplx z(axis(g.re_min, g.re_max, i), axis(g.im_min, g.im_max, j));
      const LowerSymbol ls = lower_symbol(q.op, z);
      const std::optional<cplx> cl = q.polynomial ? std::optional<cplx>((*q.polynomial)(z)) : std::nullopt;
      csv.row({fmt(z.real()), fmt(z.imag()), fmt(ls.value.real()), fmt(ls.value.imag()),
               cl ? fmt(cl->real()) : "", cl ? fmt(cl->imag()) : "",
               ls.truncation_warning ? "true" : "false"});
    }
  return csv.str();
}

std::string cmd_isotope(const RunConfig& cfg, std::optional<double> rho_override) {
  if (!cfg.spectroscopy) throw ConfigError("isotope needs a 'spectroscopy' section");
  const SpectroscopyConfig& sc = *cfg.spectroscopy;
  IsotopePair pair = IsotopePair::from_atoms(sc.reference_masses.first, sc.reference_masses.second,
                                             sc.isotopologue_masses.first,
                                             sc.isotopologue_masses.second);
  const std::optional<double> rho = rho_override ? rho_override : sc.rho;
  if (rho) {
    if (!(*rho > 0.0)) throw DomainError("isotope ratio must be positive");
    pair = IsotopePair(pair.mu, pair.mu / (*rho * *rho));
  }
  const BandSystem sys{sc.ground, sc.excited, QuantumMechanical{}};
  Csv csv(cfg.hash);
  csv.meta("rho", fmt(pair.rho()));
  csv.meta("mu", fmt(pair.mu));
  csv.meta("mu_iso", fmt(pair.mu_iso));
  csv.meta("warnings", join([&] {
             auto w = sc.ground.warnings();
             for (auto& x : sc.excited.warnings()) w.push_back(x);
             return w;
           }()));
  csv.header({"band", "n_upper", "n_lower", "observed", "QM", "CS", "BS"});
  for (std::size_t i = 0; i < sc.bands.size(); ++i) {
    const auto [nu, nl] = sc.bands[i];
    csv.row({std::to_string(nu) + "-" + std::to_string(nl), std::to_string(nu), std::to_string(nl),
             sc.observed.empty() ? "" : fmt(sc.observed[i]),
             fmt(isotopic_displacement(sys, pair, nu, nl, QuantumMechanical{})),
             fmt(isotopic_displacement(sys, pair, nu, nl, CoherentState{pair.mu})),
             fmt(isotopic_displacement(sys, pair, nu, nl, BohrSommerfeld{}))});
  }
  return csv.str();
}

std::string cmd_povm(const RunConfig& cfg) {
  Csv csv(cfg.hash);
  csv.meta("N", std::to_string(cfg.N));
  csv.header({"s", "min_kernel_entry", "positive"});
  for (double s : cfg.povm_s) {
    const PositivityReport r = povm_positivity_check(s, cfg.N);
    csv.row({fmt(s), fmt(r.min_eigenvalue), r.is_positive ? "true" : "false"});
  }
  return csv.str();
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConvergenceError*>(&e)) return 4;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ConfigError*>(&e) ||
      dynamic_cast<const InvalidDimension*>(&e))
    return 2;
  return 3;
}

int run_command(const std::string& name, const CommandOptions& opts, std::ostream& out,
                std::ostream& err) {
  try {
    const RunConfig cfg = resolve_config(opts);
    std::string text;
    if (name == "quantize") text = cmd_quantize(cfg);
    else if (name == "spectrum") text = cmd_spectrum(cfg);
    else if (name == "symbol") text = cmd_symbol(cfg);
    else if (name == "isotope") text = cmd_isotope(cfg, opts.rho);
    else if (name == "povm") text = cmd_povm(cfg);
    else throw ConfigError("unknown subcommand '" + name + "'");
    const std::optional<std::string> path = opts.out ? opts.out : cfg.output_path;
    if (path) {
      std::ofstream f(*path, std::ios::binary);
      if (!f) throw ConfigError("cannot write '" + *path + "'");
      f << text;
    } else {
      out << text;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "csq " << name << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace csq
