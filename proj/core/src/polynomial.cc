#include "dinv/polynomial.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace dinv {

std::string DerivSymbol::name() const {
  return "f{" + std::to_string(i) + std::to_string(j) + "}";
}

std::vector<DerivSymbol> derivative_symbols(int max_order) {
  std::vector<DerivSymbol> out;
  for (int m = 1; m <= max_order; ++m)
    for (int i = m; i >= 0; --i) out.push_back({i, m - i});
  return out;
}

std::string monomial_to_string(const Monomial& m) {
  std::string s;
  for (std::size_t k = 0; k < m.size();) {
    std::size_t e = 1;
    while (k + e < m.size() && m[k + e] == m[k]) ++e;
    if (!s.empty()) s += "*";
    s += DerivSymbol::from_code(m[k]).name();
    if (e > 1) s += "^" + std::to_string(e);
    k += e;
  }
  return s;
}

InvariantPolynomial::InvariantPolynomial(const Rational& constant) {
  if (constant != 0) terms_.emplace(Monomial{}, constant);
}

InvariantPolynomial InvariantPolynomial::symbol(DerivSymbol s) {
  InvariantPolynomial p;
  p.add_term({s.code()}, 1);
  return p;
}

void InvariantPolynomial::add_term(Monomial m, const Rational& c) {
  if (c == 0) return;
  std::sort(m.begin(), m.end());
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int InvariantPolynomial::degree() const {
  if (terms_.empty()) return -1;
  const int d = static_cast<int>(terms_.begin()->first.size());
  for (const auto& [m, c] : terms_)
    if (static_cast<int>(m.size()) != d) return -1;
  return d;
}

int InvariantPolynomial::max_order() const {
  int best = 0;
  for (const auto& [m, c] : terms_)
    for (auto code : m) best = std::max(best, DerivSymbol::from_code(code).order());
  return best;
}

int InvariantPolynomial::weight() const {
  int w = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (auto code : m) s += DerivSymbol::from_code(code).order();
    if (w >= 0 && s != w) return -1;
    w = s;
  }
  return w;
}

InvariantPolynomial& InvariantPolynomial::operator+=(const InvariantPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

InvariantPolynomial& InvariantPolynomial::operator-=(const InvariantPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

InvariantPolynomial& InvariantPolynomial::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

InvariantPolynomial operator*(const InvariantPolynomial& a, const InvariantPolynomial& b) {
  InvariantPolynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m;
      m.reserve(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
      out.add_term(std::move(m), ca * cb);
    }
  }
  return out;
}

InvariantPolynomial pow(const InvariantPolynomial& p, int e) {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  InvariantPolynomial result(Rational(1));
  InvariantPolynomial base = p;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

InvariantPolynomial InvariantPolynomial::differentiate(DerivSymbol s) const {
  const auto code = s.code();
  InvariantPolynomial out;
  for (const auto& [m, c] : terms_) {
    auto lo = std::lower_bound(m.begin(), m.end(), code);
    auto hi = std::upper_bound(m.begin(), m.end(), code);
    if (lo == hi) continue;
    Monomial rest(m.begin(), lo);
    rest.insert(rest.end(), std::next(lo), m.end());
    out.add_term(std::move(rest), c * static_cast<long>(hi - lo));
  }
  return out;
}

namespace {

template <typename T, typename Jet>
T eval_terms(const InvariantPolynomial::TermMap& terms, const Jet& jet,
             T (*coeff)(const Rational&)) {
  T sum(0);
  for (const auto& [m, c] : terms) {
    T prod = coeff(c);
    for (auto code : m) {
      const auto s = DerivSymbol::from_code(code);
      prod *= jet.at(s.i, s.j);
    }
    sum += prod;
  }
  return sum;
}

Rational as_rational(const Rational& c) { return c; }
double as_double(const Rational& c) { return c.get_d(); }

}  // namespace

Rational InvariantPolynomial::eval(const RationalJet& jet) const {
  return eval_terms<Rational>(terms_, jet, &as_rational);
}

double InvariantPolynomial::eval(const Jet& jet) const {
  return eval_terms<double>(terms_, jet, &as_double);
}

std::string InvariantPolynomial::to_text() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (m.empty()) {
      out += to_string(a);
    } else {
      if (a != 1) out += to_string(a) + "*";
      out += monomial_to_string(m);
    }
  }
  return out;
}

nlohmann::json InvariantPolynomial::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : terms_) {
    nlohmann::json mono = nlohmann::json::object();
    for (auto code : m) {
      const auto s = DerivSymbol::from_code(code);
      const std::string key = std::to_string(s.i) + std::to_string(s.j);
      mono[key] = mono.value(key, 0) + 1;
    }
    terms.push_back({{"c", to_string(c)}, {"m", mono}});
  }
  return {{"terms", terms}};
}

InvariantPolynomial InvariantPolynomial::from_json(const nlohmann::json& j) {
  InvariantPolynomial p;
  for (const auto& t : j.at("terms")) {
    Monomial m;
    for (const auto& [key, e] : t.at("m").items()) {
      if (key.size() != 2 || !std::isdigit(key[0]) || !std::isdigit(key[1]))
        throw std::invalid_argument("bad derivative key '" + key + "'");
      const DerivSymbol s{key[0] - '0', key[1] - '0'};
      for (int k = 0; k < e.get<int>(); ++k) m.push_back(s.code());
    }
    p.add_term(std::move(m), parse_rational(t.at("c").get<std::string>()));
  }
  return p;
}

std::pair<bool, Rational> proportional(const InvariantPolynomial& a, const InvariantPolynomial& b) {
  if (a.is_zero() || b.is_zero() || a.size() != b.size()) return {false, Rational(0)};
  const Rational s = a.terms().begin()->second / b.terms().begin()->second;
  auto ia = a.terms().begin();
  for (auto ib = b.terms().begin(); ib != b.terms().end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second != s * ib->second) return {false, Rational(0)};
  return {true, s};
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  InvariantPolynomial parse() {
    InvariantPolynomial out;
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [m, c] = term();
      out.add_term(std::move(m), sign * c);
    }
    return out;
  }

 private:
  std::pair<Monomial, Rational> term() {
    Rational c(1);
    Monomial m;
    bool any = false;
    while (pos_ < s_.size()) {
      const char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        c *= number();
      } else if (ch == 'f') {
        auto [code, e] = factor();
        for (int k = 0; k < e; ++k) m.push_back(code);
      } else {
        fail("unexpected character");
      }
      any = true;
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
        continue;
      }
      if (peek() == '+' || peek() == '-' || pos_ == s_.size()) break;
    }
    if (!any) fail("empty term");
    return {std::move(m), c};
  }

  Rational number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
    return parse_rational(s_.substr(start, pos_ - start));
  }

  std::pair<std::uint8_t, int> factor() {
    ++pos_;  // 'f'
    if (peek() != '{') fail("expected '{' after f");
    ++pos_;
    if (pos_ + 3 > s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
        !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 2] != '}')
      fail("expected two digits and '}'");
    const DerivSymbol sym{s_[pos_] - '0', s_[pos_ + 1] - '0'};
    pos_ += 3;
    int e = 1;
    skip();
    if (peek() == '^') {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    }
    return {sym.code(), e};
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) + ": " +
                                what + " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

InvariantPolynomial parse_polynomial(std::string_view text) { return PolyParser(text).parse(); }

CompiledPolynomial::CompiledPolynomial(const InvariantPolynomial& p) {
  for (const auto& [m, c] : p.terms()) {
    Term t{c.get_d(), {}};
    for (auto code : m) {
      const auto s = DerivSymbol::from_code(code);
      t.slots.push_back(Jet::slot(s.i, s.j));
    }
    terms_.push_back(std::move(t));
  }
}

double CompiledPolynomial::operator()(const Jet& jet) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double prod = t.coeff;
    for (int s : t.slots) prod *= jet.raw(s);
    sum += prod;
  }
  return sum;
}

}  // namespace dinv
