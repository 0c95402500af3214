#pragma once

#include "eigencert/bigint.hpp"

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eigencert {

class InexactDivision : public std::domain_error {
 public:
  InexactDivision() : std::domain_error("polynomial division is not exact") {}
};

// Dense univariate polynomial. Coefficients are stored leading-first, so a
// polynomial of degree d has the coefficient vector (c_0, ..., c_d) with c_0
// multiplying x^d. The zero polynomial has an empty vector and degree -1.
template <class R>
class Poly {
 public:
  using value_type = R;

  Poly() = default;
  explicit Poly(std::vector<R> leading_first) : c_(std::move(leading_first)) { trim(); }
  Poly(std::initializer_list<R> leading_first) : c_(leading_first) { trim(); }

  static Poly constant(const R& v) { return Poly(std::vector<R>{v}); }
  static Poly monomial(const R& v, std::size_t power) {
    std::vector<R> c(power + 1, R(0));
    c[0] = v;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(R(1), 1); }
  // x - root
  static Poly linear(const R& root) { return Poly(std::vector<R>{R(1), R(-root)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<R>& coefficients() const { return c_; }
  const R& operator[](std::size_t i) const { return c_[i]; }
  const R& leading() const { return c_.front(); }
  const R& constant_term() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.front() == 1; }

  // Coefficient of x^k (zero outside the support).
  R coeff_of_power(std::size_t k) const {
    if (k >= c_.size()) return R(0);
    return c_[c_.size() - 1 - k];
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.insert(c_.begin(), o.c_.size() - c_.size(), R(0));
    std::size_t off = c_.size() - o.c_.size();
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[off + i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.insert(c_.begin(), o.c_.size() - c_.size(), R(0));
    std::size_t off = c_.size() - o.c_.size();
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[off + i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const R& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const R& s) { return a *= s; }
  friend Poly operator*(const R& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<R> r(a.c_.size() + b.c_.size() - 1, R(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
  }

 private:
  void trim() {
    auto it = std::find_if(c_.begin(), c_.end(), [](const R& v) { return !(v == 0); });
    c_.erase(c_.begin(), it);
  }

  std::vector<R> c_;
};

using IntPoly = Poly<BigInt>;
using RatPoly = Poly<BigRat>;

template <class R>
Poly<R> pow(Poly<R> base, unsigned e) {
  Poly<R> r = Poly<R>::constant(R(1));
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

template <class R>
Poly<R> derivative(const Poly<R>& p) {
  if (p.degree() <= 0) return Poly<R>();
  std::vector<R> c;
  c.reserve(p.size() - 1);
  const int d = p.degree();
  for (int i = 0; i < d; ++i) c.push_back(p[i] * R(d - i));
  return Poly<R>(std::move(c));
}

// D^k with D x^i = x^(i-1) and D 1 = 0: drop the k lowest-order coefficients.
template <class R>
Poly<R> shift_down(const Poly<R>& p, std::size_t k) {
  if (k >= p.size()) return Poly<R>();
  std::vector<R> c(p.coefficients().begin(), p.coefficients().end() - static_cast<long>(k));
  return Poly<R>(std::move(c));
}

// Horner evaluation in any ring that accepts products with R.
template <class R, class T>
T evaluate(const Poly<R>& p, const T& at) {
  T acc(0);
  for (const auto& c : p.coefficients()) acc = acc * at + T(c);
  return acc;
}

inline BigRat evaluate(const IntPoly& p, const BigRat& at) {
  // Homogeneous integer evaluation avoids a gcd per Horner step.
  const BigInt& a = at.get_num();
  const BigInt& b = at.get_den();
  BigInt acc = 0;
  BigInt bpow = 1;
  const int d = p.degree();
  if (d < 0) return BigRat(0);
  acc = p[0];
  for (int i = 1; i <= d; ++i) {
    bpow *= b;
    acc = acc * a + p[i] * bpow;
  }
  return make_rat(acc, bpow);
}

inline BigInt evaluate(const IntPoly& p, const BigInt& at) {
  BigInt acc = 0;
  for (const auto& c : p.coefficients()) acc = acc * at + c;
  return acc;
}

// Sign of p at a rational point without forming the rational value.
inline int sign_at(const IntPoly& p, const BigRat& at) {
  const BigInt& a = at.get_num();
  const BigInt& b = at.get_den();
  if (p.is_zero()) return 0;
  BigInt acc = p[0];
  BigInt bpow = 1;
  for (int i = 1; i <= p.degree(); ++i) {
    bpow *= b;
    acc = acc * a + p[i] * bpow;
  }
  return sgn(acc);
}

// p(x + a)
template <class R>
Poly<R> taylor_shift(const Poly<R>& p, const R& a) {
  std::vector<R> c = p.coefficients();
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 1; j < n - i; ++j) c[j] += a * c[j - 1];
  return Poly<R>(std::move(c));
}

// p(s*x)
template <class R>
Poly<R> scale_argument(const Poly<R>& p, const R& s) {
  std::vector<R> c = p.coefficients();
  R f(1);
  for (std::size_t i = c.size(); i-- > 0;) {
    c[i] *= f;
    f *= s;
  }
  return Poly<R>(std::move(c));
}

inline RatPoly to_rational(const IntPoly& p) {
  std::vector<BigRat> c;
  c.reserve(p.size());
  for (const auto& v : p.coefficients()) c.emplace_back(v);
  return RatPoly(std::move(c));
}

inline BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& v : p.coefficients()) {
    g = gcd(g, v);
    if (g == 1) break;
  }
  return g;
}

// Content-free with positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  BigInt g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<BigInt> c = p.coefficients();
  for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(c));
}

// Clears denominators; returns the primitive integer polynomial with the same
// roots and a positive leading coefficient.
inline IntPoly primitive_part(const RatPoly& p) {
  if (p.is_zero()) return IntPoly();
  BigInt l = 1;
  for (const auto& v : p.coefficients()) l = lcm(l, v.get_den());
  std::vector<BigInt> c;
  c.reserve(p.size());
  for (const auto& v : p.coefficients()) c.push_back(v.get_num() * (l / v.get_den()));
  return primitive_part(IntPoly(std::move(c)));
}

template <class R>
struct DivMod {
  Poly<R> quotient;
  Poly<R> remainder;
};

inline DivMod<BigRat> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.degree() < b.degree()) return {RatPoly(), a};
  std::vector<BigRat> r = a.coefficients();
  const std::size_t nb = b.size();
  const std::size_t nq = r.size() - nb + 1;
  std::vector<BigRat> q(nq);
  for (std::size_t i = 0; i < nq; ++i) {
    q[i] = r[i] / b.leading();
    if (q[i] == 0) continue;
    for (std::size_t j = 0; j < nb; ++j) r[i + j] -= q[i] * b[j];
  }
  std::vector<BigRat> rem(r.begin() + static_cast<long>(nq), r.end());
  return {RatPoly(std::move(q)), RatPoly(std::move(rem))};
}

// Quotient a / b over Z[x]; throws InexactDivision unless b divides a.
inline IntPoly exact_divide(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return IntPoly();
  if (a.degree() < b.degree()) throw InexactDivision();
  std::vector<BigInt> r = a.coefficients();
  const std::size_t nb = b.size();
  const std::size_t nq = r.size() - nb + 1;
  std::vector<BigInt> q(nq);
  const bool monic = b.leading() == 1;
  for (std::size_t i = 0; i < nq; ++i) {
    if (r[i] == 0) continue;
    if (monic) {
      q[i] = r[i];
    } else {
      if (!mpz_divisible_p(r[i].get_mpz_t(), b.leading().get_mpz_t())) throw InexactDivision();
      mpz_divexact(q[i].get_mpz_t(), r[i].get_mpz_t(), b.leading().get_mpz_t());
    }
    for (std::size_t j = 0; j < nb; ++j) r[i + j] -= q[i] * b[j];
  }
  for (std::size_t i = nq; i < r.size(); ++i)
    if (r[i] != 0) throw InexactDivision();
  return IntPoly(std::move(q));
}

inline bool divides(const IntPoly& b, const IntPoly& a) {
  try {
    (void)exact_divide(a, b);
    return true;
  } catch (const InexactDivision&) {
    return false;
  }
}

// lc(b)^(deg a - deg b + 1) * a  mod  b, computed over Z.
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<BigInt> r = a.coefficients();
  const std::size_t nb = b.size();
  const std::size_t steps = r.size() - nb + 1;
  const BigInt& lb = b.leading();
  for (std::size_t i = 0; i < steps; ++i) {
    BigInt lead = r[i];
    for (std::size_t j = i; j < r.size(); ++j) r[j] *= lb;
    if (lead == 0) continue;
    for (std::size_t j = 0; j < nb; ++j) r[i + j] -= lead * b[j];
  }
  std::vector<BigInt> rem(r.begin() + static_cast<long>(steps), r.end());
  return IntPoly(std::move(rem));
}

// Greatest common divisor over Q, returned primitive with positive leading
// coefficient (so monic inputs yield the monic gcd).
inline IntPoly gcd(const IntPoly& a0, const IntPoly& b0) {
  if (a0.is_zero()) return primitive_part(b0);
  if (b0.is_zero()) return primitive_part(a0);
  IntPoly a = primitive_part(a0);
  IntPoly b = primitive_part(b0);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = primitive_part(r);
  }
  return primitive_part(a);
}

inline RatPoly make_monic(const RatPoly& p) {
  if (p.is_zero()) return p;
  RatPoly r = p;
  BigRat inv = 1 / p.leading();
  return r * inv;
}

inline RatPoly monic_gcd(const RatPoly& a, const RatPoly& b) {
  return make_monic(to_rational(gcd(primitive_part(a), primitive_part(b))));
}

// Yun's square-free decomposition: returns s_1, s_2, ... (primitive) with
// p = lc * prod s_k^k. Entries are constant 1 when a multiplicity is absent.
inline std::vector<IntPoly> squarefree_decomposition(const IntPoly& p) {
  std::vector<IntPoly> out;
  if (p.degree() <= 0) return out;
  RatPoly f = make_monic(to_rational(p));
  RatPoly fp = derivative(f);
  RatPoly a = monic_gcd(f, fp);
  RatPoly b = divmod(f, a).quotient;
  RatPoly c = divmod(fp, a).quotient;
  RatPoly d = c - derivative(b);
  while (b.degree() > 0) {
    RatPoly s = d.is_zero() ? b : monic_gcd(b, d);
    out.push_back(primitive_part(s));
    b = divmod(b, s).quotient;
    c = divmod(d, s).quotient;
    d = c - derivative(b);
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

// Product of the distinct irreducible factors (primitive).
inline IntPoly radical(const IntPoly& p) {
  if (p.degree() <= 0) return IntPoly::constant(BigInt(1));
  return exact_divide(primitive_part(p), gcd(p, derivative(p)));
}

inline IntPoly from_roots(const std::vector<BigInt>& roots) {
  IntPoly r = IntPoly::constant(BigInt(1));
  for (const auto& v : roots) r *= IntPoly::linear(v);
  return r;
}

// Coefficients reduced to [0, 2^e), leading-first, length deg+1.
inline std::vector<BigInt> reduce_mod_pow2(const IntPoly& p, unsigned e) {
  std::vector<BigInt> out;
  out.reserve(p.size());
  for (const auto& v : p.coefficients()) out.push_back(mod_pow2(v, e));
  return out;
}

}  // namespace eigencert
