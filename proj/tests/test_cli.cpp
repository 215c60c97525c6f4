#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "csq/commands.hpp"
#include "csq/errors.hpp"

using namespace csq;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("csq_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string& cmd, const CommandOptions& opts) {
  std::ostringstream out, err;
  const int code = run_command(cmd, opts, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    out.push_back(cells);
  }
  return out;
}

const std::string kBundled = std::string(CSQ_SOURCE_DIR) + "/configs/bo_alpha_band.json";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config schema") {
  CHECK_THROWS_AS(parse_config(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scales": {"hbar": 1, "extra": 2}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"mode": "physical", "scales": {"m": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"truncation": {"N": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{not json"), ParseError);
  CHECK_THROWS_AS(parse_config(R"({"hamiltonian": {"potential": {"type": "gaussian", "depth": 1}}})"),
                  ConfigError);
  const RunConfig phys = parse_config(R"({"mode": "physical", "scales": {"m": 9.1093837015e-31, "c": 299792458}})");
  CHECK(phys.ell == doctest::Approx(1.9307963386214167e-13).epsilon(1e-12));
  CHECK(phys.include_rest_mass);
  CHECK_THROWS_AS(parse_config(R"({"scales": {"c": 10, "ell": 1}})"), ConfigError);
  const RunConfig d = parse_config("{}");
  CHECK(d.N == 32);
  CHECK_FALSE(d.include_rest_mass);
  CHECK(parse_config(R"({"truncation": {"N": 8}})").hash != d.hash);
  CHECK(parse_potential(R"({"type": "morse", "De": 1, "alpha": 2})").name() == "morse");
}

TEST_CASE("quantize dumps") {
  CommandOptions o;
  o.N = 5;
  o.function = "z";
  o.s = {-1.0};
  const Run r = run("quantize", o);
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# config_sha=", 0) == 0);
  CHECK(r.out.find("tool=csq") != std::string::npos);
  const auto t = rows(r.out);
  CHECK(t[0] == std::vector<std::string>{"row", "col", "real", "imag"});
  CHECK(t.size() == 26);
  // entry (0, 1) of a is 1
  CHECK(t[2] == std::vector<std::string>{"0", "1", "1", "0"});

  o.function = "1";
  o.s = {-0.3};
  const auto id = rows(run("quantize", o).out);
  for (std::size_t i = 1; i < id.size(); ++i) {
    const double v = std::stod(id[i][2]);
    CHECK(std::abs(v - (id[i][0] == id[i][1] ? 1.0 : 0.0)) <= 1e-10);
  }

  o.function = "z zbar";
  for (double s : {-1.0, 0.0}) {
    o.s = {s};
    const auto zz = rows(run("quantize", o).out);
    for (int n = 0; n < 5; ++n)
      CHECK(std::stod(zz[1 + n * 5 + n][2]) == doctest::Approx(n + (s == 0.0 ? 0.5 : 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("error exit codes") {
  CommandOptions o;
  o.function = "z +";
  CHECK(run("quantize", o).code == 2);
  o.function = "z";
  o.s = {0.5};
  CHECK(run("quantize", o).code == 3);
  o.s = {2.0};
  CHECK(run("povm", o).code == 3);
  o.config_path = write_temp("bad.json", R"({"unknown": true})");
  CHECK(run("povm", o).code == 2);
  CommandOptions c;
  c.config_path = write_temp("free.json",
                             R"({"hamiltonian": {"potential": {"type": "polynomial", "coeffs": [0, 0, 0]}, "include_rest_mass": false, "tol": 1e-14, "max_dim": 256}})");
  CHECK(run("spectrum", c).code == 4);
}

TEST_CASE("isotope report") {
  CommandOptions o;
  o.config_path = kBundled;
  const Run r = run("isotope", o);
  REQUIRE(r.code == 0);
  const auto t = rows(r.out);
  CHECK(t[0] == std::vector<std::string>{"band", "n_upper", "n_lower", "observed", "QM", "CS", "BS"});
  const double qm[5] = {-9.08, 26.29, 60.36, 93.14, 124.63};
  const double bs[5] = {0.0, 35.69, 70.09, 103.20, 135.01};
  for (int i = 0; i < 5; ++i) {
    CHECK(std::abs(std::stod(t[1 + i][4]) - qm[i]) <= 0.1);
    CHECK(std::abs(std::stod(t[1 + i][6]) - bs[i]) <= 1.0);
    CHECK(std::abs(std::stod(t[1 + i][5]) - std::stod(t[1 + i][4])) <= 1e-6);
  }
  o.rho = 1.0;
  const auto z = rows(run("isotope", o).out);
  for (int i = 0; i < 5; ++i)
    for (int col : {4, 5, 6}) CHECK(std::stod(z[1 + i][col]) == 0.0);
}

TEST_CASE("povm table") {
  const auto t = rows(run("povm", CommandOptions{}).out);
  REQUIRE(t.size() == 5);
  CHECK(t[1][2] == "true");
  CHECK(t[2][2] == "true");
  CHECK(std::abs(std::stod(t[2][1])) <= 1e-14);
  CHECK(t[3][2] == "false");
  CHECK(t[4][2] == "false");
  CHECK(std::stod(t[4][1]) == -2.0);
}

TEST_CASE("spectrum report") {
  CommandOptions o;
  o.config_path = write_temp("harm.json", R"({"scales": {"c": 1000, "basis_length": 1},
      "hamiltonian": {"potential": {"type": "harmonic", "k": 1}, "levels": 4, "tol": 1e-6}})");
  const auto t = rows(run("spectrum", o).out);
  REQUIRE(t.size() == 5);
  for (int n = 0; n < 4; ++n) {
    CHECK(std::stod(t[1 + n][1]) == doctest::Approx(std::stod(t[1 + n][8])).epsilon(1e-12));
    CHECK(t[1 + n][7] == "true");
  }
  o.config_path = write_temp("free2.json", R"({"scales": {"c": 1000, "basis_length": 1}, "truncation": {"N": 16}})");
  const auto f = rows(run("spectrum", o).out);
  for (int n = 0; n < 5; ++n) CHECK(std::stod(f[1 + n][3]) == doctest::Approx(1e6).epsilon(1e-12));
  o.config_path = write_temp("well.json", R"({"scales": {"c": 10, "basis_length": 0.4},
      "hamiltonian": {"potential": {"type": "gaussian", "depth": 20, "width": 1}, "levels": 3, "tol": 1e-7}})");
  const auto w = rows(run("spectrum", o).out);
  for (int n = 0; n < 3; ++n) CHECK(w[1 + n][7] == "true");
}

TEST_CASE("symbol grid") {
  CommandOptions o;
  o.N = 40;
  o.function = "z";
  const auto t = rows(run("symbol", o).out);
  REQUIRE(t.size() == 82);
  for (std::size_t i = 1; i < t.size(); ++i) {
    CHECK(std::stod(t[i][2]) == doctest::Approx(std::stod(t[i][4])).epsilon(1e-9));
    CHECK(std::stod(t[i][3]) == doctest::Approx(std::stod(t[i][5])).epsilon(1e-9));
  }
}

TEST_CASE("determinism and output files") {
  CommandOptions o;
  o.config_path = kBundled;
  CHECK(run("isotope", o).out == run("isotope", o).out);
  const auto path = std::filesystem::temp_directory_path() / "csq_test_out.csv";
  o.out = path.string();
  CHECK(run("isotope", o).code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  o.out.reset();
  CHECK(ss.str() == run("isotope", o).out);
}

}
