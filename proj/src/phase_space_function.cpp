#include "csq/phase_space_function.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

#include "csq/errors.hpp"

namespace csq {

Polynomial::Polynomial(std::vector<Monomial> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.z_power < 0 || t.zbar_power < 0) throw DomainError("monomial powers must be >= 0");
  normalize();
}

void Polynomial::normalize() {
  std::map<std::pair<int, int>, cplx> acc;
  for (const auto& t : terms_) acc[{t.z_power, t.zbar_power}] += t.coeff;
  terms_.clear();
  for (const auto& [k, c] : acc)
    if (c != cplx(0.0, 0.0)) terms_.push_back({k.first, k.second, c});
}

Polynomial Polynomial::constant(cplx c) { return Polynomial({{0, 0, c}}); }
Polynomial Polynomial::z() { return Polynomial({{1, 0, 1.0}}); }
Polynomial Polynomial::zbar() { return Polynomial({{0, 1, 1.0}}); }

Polynomial Polynomial::position(double ell) {
  const double c = ell / std::sqrt(2.0);
  return Polynomial({{1, 0, c}, {0, 1, c}});
}

Polynomial Polynomial::momentum(double wp) {
  const cplx c = wp / (cplx(0.0, 1.0) * std::sqrt(2.0));
  return Polynomial({{1, 0, c}, {0, 1, -c}});
}

int Polynomial::max_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.z_power + t.zbar_power);
  return d;
}

int Polynomial::max_power() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max({d, t.z_power, t.zbar_power});
  return d;
}

int Polynomial::max_harmonic() const {
  int h = 0;
  for (const auto& t : terms_) h = std::max(h, std::abs(t.z_power - t.zbar_power));
  return h;
}

bool Polynomial::is_real() const {
  for (const auto& t : terms_) {
    cplx partner{0.0, 0.0};
    for (const auto& u : terms_)
      if (u.z_power == t.zbar_power && u.zbar_power == t.z_power) partner = u.coeff;
    if (std::abs(partner - std::conj(t.coeff)) > 1e-14 * (1.0 + std::abs(t.coeff))) return false;
  }
  return true;
}

cplx Polynomial::operator()(cplx z) const {
  cplx s{0.0, 0.0};
  for (const auto& t : terms_)
    s += t.coeff * std::pow(z, t.z_power) * std::pow(std::conj(z), t.zbar_power);
  return s;
}

cplx Polynomial::eval_polar(double r, double theta) const {
  cplx s{0.0, 0.0};
  for (const auto& t : terms_)
    s += t.coeff * std::pow(r, t.z_power + t.zbar_power) *
         std::polar(1.0, (t.z_power - t.zbar_power) * theta);
  return s;
}

namespace {

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

}  // namespace

Polynomial Polynomial::shifted(cplx z0) const {
  std::vector<Monomial> out;
  const cplx w = -z0;
  for (const auto& t : terms_)
    for (int i = 0; i <= t.z_power; ++i)
      for (int j = 0; j <= t.zbar_power; ++j) {
        const cplx c = t.coeff * std::round(binomial(t.z_power, i)) *
                       std::round(binomial(t.zbar_power, j)) *
                       std::pow(w, t.z_power - i) * std::pow(std::conj(w), t.zbar_power - j);
        out.push_back({i, j, c});
      }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::conjugate() const {
  std::vector<Monomial> out;
  for (const auto& t : terms_) out.push_back({t.zbar_power, t.z_power, std::conj(t.coeff)});
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

Polynomial operator-(Polynomial a, const Polynomial& b) { return a += cplx(-1.0, 0.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<Monomial> out;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_)
      out.push_back({s.z_power + t.z_power, s.zbar_power + t.zbar_power, s.coeff * t.coeff});
  return Polynomial(std::move(out));
}

Polynomial operator*(cplx s, const Polynomial& a) {
  std::vector<Monomial> out = a.terms_;
  for (auto& t : out) t.coeff *= s;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw DomainError("negative polynomial power");
  Polynomial r = constant(1.0);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

PhaseSpaceFunction::PhaseSpaceFunction(Polynomial p) : data_(std::move(p)) {}

PhaseSpaceFunction::PhaseSpaceFunction(RadialAngular f) : data_(std::move(f)) {
  if (!radial().fn) throw DomainError("radial-angular function is empty");
  if (radial().harmonic_cutoff < 0 || radial().degree < 0)
    throw DomainError("harmonic cutoff and degree must be non-negative");
}

cplx PhaseSpaceFunction::eval_polar(double r, double theta) const {
  if (is_polynomial()) return polynomial().eval_polar(r, theta);
  return radial().fn(r, theta);
}

int PhaseSpaceFunction::max_harmonic() const {
  return is_polynomial() ? polynomial().max_harmonic() : radial().harmonic_cutoff;
}

int PhaseSpaceFunction::degree() const {
  return is_polynomial() ? polynomial().max_degree() : radial().degree;
}

bool PhaseSpaceFunction::is_real() const {
  return is_polynomial() ? polynomial().is_real() : radial().real_valued;
}

RadialDecay PhaseSpaceFunction::decay() const {
  return is_polynomial() ? RadialDecay::polynomial : radial().decay;
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, double ell, double wp) : s_(s), ell_(ell), wp_(wp) {}

  Polynomial parse() {
    skip_ws();
    if (pos_ == s_.size()) fail("empty expression");
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse '" + s_ + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Polynomial expr() {
    Polynomial acc;
    bool negate = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negate = true;
    }
    acc = term();
    if (negate) acc = cplx(-1.0, 0.0) * acc;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        break;
      }
    }
    return acc;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      base = base.pow(std::stoi(s_.substr(start, pos_ - start)));
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      if (pos_ < s_.size() && s_[pos_] == 'i' &&
          (pos_ + 1 == s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_ + 1])))) {
        ++pos_;
        return Polynomial::constant({0.0, v});
      }
      return Polynomial::constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (id == "z") return Polynomial::z();
      if (id == "zbar") return Polynomial::zbar();
      if (id == "q") return Polynomial::position(ell_);
      if (id == "p") return Polynomial::momentum(wp_);
      if (id == "i") return Polynomial::constant({0.0, 1.0});
      pos_ = start;
      fail("unknown symbol '" + id + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  double ell_;
  double wp_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, double ell, double wp) {
  return Parser(text, ell, wp).parse();
}

}  // namespace csq
