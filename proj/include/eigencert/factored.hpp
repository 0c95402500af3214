#pragma once

#include "eigencert/polynomial.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eigencert {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Text of a polynomial in x, e.g. "x^3-39x^2+495x-2049".
inline std::string format_poly(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  const int d = p.degree();
  bool first = true;
  for (int i = 0; i <= d; ++i) {
    const BigInt& c = p[i];
    if (c == 0) continue;
    const int power = d - i;
    BigInt a = abs(c);
    if (c < 0)
      os << '-';
    else if (!first)
      os << '+';
    if (a != 1 || power == 0) os << a.get_str();
    if (power >= 1) os << 'x';
    if (power >= 2) os << '^' << power;
    first = false;
  }
  return os.str();
}

namespace detail {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(i) + " in \"" + std::string(s) + "\"");
  }
  std::string digits() {
    skip_ws();
    std::size_t b = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return std::string(s.substr(b, i - b));
  }
};

inline IntPoly parse_sum(Cursor& cur) {
  std::map<unsigned, BigInt> terms;
  bool first = true;
  while (true) {
    char c = cur.peek();
    if (c == '\0' || c == ')') break;
    int sgn_ = 1;
    if (cur.eat('+')) {
    } else if (cur.eat('-')) {
      sgn_ = -1;
    } else if (!first) {
      break;
    }
    first = false;
    std::string num = cur.digits();
    BigInt coef = num.empty() ? BigInt(1) : BigInt(num);
    unsigned power = 0;
    cur.eat('*');
    if (cur.eat('x')) {
      power = 1;
      if (cur.eat('^')) {
        std::string e = cur.digits();
        if (e.empty()) cur.fail("exponent expected");
        power = static_cast<unsigned>(std::stoul(e));
      }
    } else if (num.empty()) {
      cur.fail("term expected");
    }
    terms[power] += sgn_ * coef;
  }
  if (terms.empty()) cur.fail("empty polynomial");
  unsigned deg = terms.rbegin()->first;
  std::vector<BigInt> c(deg + 1, BigInt(0));
  for (auto& [pw, v] : terms) c[deg - pw] = v;
  return IntPoly(std::move(c));
}

}  // namespace detail

inline IntPoly parse_poly(std::string_view text) {
  detail::Cursor cur{text};
  IntPoly p = detail::parse_sum(cur);
  if (!cur.done()) cur.fail("trailing input");
  return p;
}

// Dense form: whitespace- or comma-separated decimal coefficients, leading-first.
inline IntPoly parse_dense(std::string_view text) {
  std::vector<BigInt> c;
  std::string tok;
  auto flush = [&] {
    if (!tok.empty()) c.push_back(parse_bigint(tok));
    tok.clear();
  };
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '[' || ch == ']' ||
        ch == '(' || ch == ')')
      flush();
    else
      tok.push_back(ch);
  }
  flush();
  if (c.empty()) throw ParseError("empty coefficient list");
  return IntPoly(std::move(c));
}

inline std::string format_dense(const IntPoly& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += p[i].get_str();
  }
  return out;
}

// Product of integer polynomial factors with multiplicities. Factors are kept
// monic, pairwise coprime and in display order: by degree, then by increasing
// root sum (so linear factors appear in increasing root order).
class FactoredPolynomial {
 public:
  struct Factor {
    IntPoly poly;
    unsigned multiplicity;
  };

  FactoredPolynomial() = default;
  explicit FactoredPolynomial(std::vector<Factor> factors) : f_(std::move(factors)) { normalize(); }

  static FactoredPolynomial parse(std::string_view text) {
    detail::Cursor cur{text};
    std::vector<Factor> fs;
    while (!cur.done()) {
      IntPoly p;
      if (cur.eat('(')) {
        p = detail::parse_sum(cur);
        if (!cur.eat(')')) cur.fail("')' expected");
      } else if (cur.peek() == 'x') {
        cur.eat('x');
        p = IntPoly::x();
      } else {
        cur.fail("factor expected");
      }
      unsigned m = 1;
      if (cur.eat('^')) {
        std::string e = cur.digits();
        if (e.empty()) cur.fail("exponent expected");
        m = static_cast<unsigned>(std::stoul(e));
      }
      fs.push_back({std::move(p), m});
      cur.eat('*');
    }
    if (fs.empty()) throw ParseError("empty factored polynomial");
    return FactoredPolynomial(std::move(fs));
  }

  const std::vector<Factor>& factors() const { return f_; }

  int degree() const {
    int d = 0;
    for (const auto& f : f_) d += f.poly.degree() * static_cast<int>(f.multiplicity);
    return d;
  }

  IntPoly expand() const {
    IntPoly r = IntPoly::constant(BigInt(1));
    for (const auto& f : f_) r *= pow(f.poly, f.multiplicity);
    return r;
  }

  // Product of the distinct factors: the monic polynomial whose roots are the
  // distinct roots.
  IntPoly min_poly() const { return product_if([](unsigned) { return true; }, false); }
  // Product over simple roots.
  IntPoly sim_poly() const { return product_if([](unsigned m) { return m == 1; }, false); }
  // Min / Sim.
  IntPoly mult_poly() const { return product_if([](unsigned m) { return m > 1; }, false); }
  // p / Min
  IntPoly reduced_poly() const { return product_if([](unsigned) { return true; }, true); }

  int min_degree() const { return min_poly().degree(); }

  // Multiplicity of the factor equal to q (0 when absent).
  unsigned multiplicity_of(const IntPoly& q) const {
    for (const auto& f : f_)
      if (f.poly == q) return f.multiplicity;
    return 0;
  }

  // Multiplicity of the rational integer root r.
  unsigned multiplicity_of_root(const BigInt& r) const { return multiplicity_of(IntPoly::linear(r)); }

  std::string str() const {
    std::string out;
    for (const auto& f : f_) {
      if (!out.empty()) out += '*';
      out += '(' + format_poly(f.poly) + ')';
      if (f.multiplicity != 1) out += '^' + std::to_string(f.multiplicity);
    }
    return out.empty() ? "1" : out;
  }

  friend bool operator==(const FactoredPolynomial& a, const FactoredPolynomial& b) {
    if (a.f_.size() != b.f_.size()) return false;
    for (std::size_t i = 0; i < a.f_.size(); ++i)
      if (a.f_[i].poly != b.f_[i].poly || a.f_[i].multiplicity != b.f_[i].multiplicity) return false;
    return true;
  }
  friend bool operator!=(const FactoredPolynomial& a, const FactoredPolynomial& b) { return !(a == b); }
  friend bool operator<(const FactoredPolynomial& a, const FactoredPolynomial& b) {
    return a.str() < b.str();
  }

  static bool display_less(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    // Descending coefficients after the leading one: increasing root sum.
    for (std::size_t i = 1; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] > b[i];
    return false;
  }

 private:
  template <class Pred>
  IntPoly product_if(Pred pred, bool reduce_one) const {
    IntPoly r = IntPoly::constant(BigInt(1));
    for (const auto& f : f_) {
      if (!pred(f.multiplicity)) continue;
      unsigned m = reduce_one ? f.multiplicity - 1 : 1;
      r *= pow(f.poly, m);
    }
    return r;
  }

  void normalize() {
    std::vector<Factor> merged;
    for (auto& f : f_) {
      if (f.multiplicity == 0) continue;
      if (f.poly.degree() <= 0) {
        if (f.poly.is_zero() || f.poly.leading() != 1)
          throw std::invalid_argument("factored polynomial must be monic");
        continue;
      }
      if (!f.poly.is_monic()) throw std::invalid_argument("factors must be monic");
      bool found = false;
      for (auto& g : merged)
        if (g.poly == f.poly) {
          g.multiplicity += f.multiplicity;
          found = true;
        }
      if (!found) merged.push_back(f);
    }
    std::sort(merged.begin(), merged.end(),
              [](const Factor& a, const Factor& b) { return display_less(a.poly, b.poly); });
    f_ = std::move(merged);
  }

  std::vector<Factor> f_;
};

// Splits p over a set of known monic factors by repeated trial division; the
// cofactor that remains (if not 1) is kept as a dense factor.
inline FactoredPolynomial factor_over(const IntPoly& p, const std::vector<IntPoly>& candidates) {
  if (!p.is_monic()) throw std::invalid_argument("trial factorization needs a monic polynomial");
  IntPoly rest = p;
  std::vector<FactoredPolynomial::Factor> fs;
  for (const auto& q : candidates) {
    unsigned m = 0;
    while (rest.degree() >= q.degree()) {
      try {
        IntPoly next = exact_divide(rest, q);
        rest = std::move(next);
        ++m;
      } catch (const InexactDivision&) {
        break;
      }
    }
    if (m) fs.push_back({q, m});
  }
  if (rest.degree() > 0) {
    // Peel off repeated copies of the residual factor when it is a power.
    auto parts = squarefree_decomposition(rest);
    for (std::size_t k = 0; k < parts.size(); ++k)
      if (parts[k].degree() > 0) fs.push_back({parts[k], static_cast<unsigned>(k + 1)});
  }
  return FactoredPolynomial(std::move(fs));
}

}  // namespace eigencert
