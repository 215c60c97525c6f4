#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "csq/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Coherent-state quantization toolkit"};
  app.set_version_flag("--version", std::string("csq ") + csq::kToolVersion);
  app.require_subcommand(1);

  csq::CommandOptions opts;
  std::string chosen;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"quantize", "Dump the quantized operator of a function as CSV"},
      {"spectrum", "Lowest levels of the CS and canonical Hamiltonians"},
      {"symbol", "Lower symbol <z|A|z> on a grid of z"},
      {"isotope", "Isotopic displacements of a band progression"},
      {"povm", "Positivity of the s-parametrized kernel"},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config", opts.config_path, "JSON run configuration");
    sub->add_option("--out", opts.out, "Output CSV path (default stdout)");
    sub->add_option("-N", opts.N, "Truncation dimension");
    sub->add_option("--s", opts.s, "Ordering parameter(s), comma separated")->delimiter(',');
    sub->add_option("--guard", opts.guard, "Guard levels added before truncating");
    if (std::string(s.name) == "quantize" || std::string(s.name) == "symbol")
      sub->add_option("--function", opts.function, "Polynomial in z, zbar, q, p or potential:q|p");
    if (std::string(s.name) == "isotope") sub->add_option("--rho", opts.rho, "Isotope ratio override");
    sub->callback([&chosen, name = std::string(s.name)] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return csq::run_command(chosen, opts, std::cout, std::cerr);
}
