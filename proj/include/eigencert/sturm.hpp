#pragma once

#include "eigencert/polynomial.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace eigencert {

// Open interval with optional (infinite when absent) endpoints.
struct RatInterval {
  std::optional<BigRat> lo;
  std::optional<BigRat> hi;

  static RatInterval real_line() { return {}; }
  static RatInterval open(const BigRat& a, const BigRat& b) { return {a, b}; }
  static RatInterval above(const BigRat& a) { return {a, std::nullopt}; }
  static RatInterval below(const BigRat& b) { return {std::nullopt, b}; }
};

class SturmSequence {
 public:
  explicit SturmSequence(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
    seq_.push_back(primitive_part(p));
    if (p.degree() == 0) return;
    seq_.push_back(primitive_part(derivative(p)));
    while (seq_.back().degree() > 0) {
      const IntPoly& a = seq_[seq_.size() - 2];
      const IntPoly& b = seq_.back();
      IntPoly r = pseudo_remainder(a, b);
      if (r.is_zero()) break;
      // prem multiplies by lc(b)^(da-db+1); undo a negative factor's sign.
      const int k = a.degree() - b.degree() + 1;
      const bool flip = b.leading() < 0 && (k % 2 != 0);
      IntPoly next = primitive_part(r);
      // primitive_part forces a positive leading coefficient; restore the
      // sign of the true remainder, then negate for the Sturm recurrence.
      const int true_sign = sgn(r.leading()) * (flip ? -1 : 1);
      if (true_sign > 0) next = -next;
      seq_.push_back(std::move(next));
    }
  }

  // Number of sign changes at a finite point (zeros skipped).
  int variations_at(const BigRat& x) const {
    int changes = 0;
    int last = 0;
    for (const auto& s : seq_) {
      int v = sign_at(s, x);
      if (v == 0) continue;
      if (last != 0 && v != last) ++changes;
      last = v;
    }
    return changes;
  }

  int variations_at_infinity(bool positive) const {
    int changes = 0;
    int last = 0;
    for (const auto& s : seq_) {
      int v = sgn(s.leading());
      if (!positive && (s.degree() % 2 != 0)) v = -v;
      if (last != 0 && v != last) ++changes;
      last = v;
    }
    return changes;
  }

  // Distinct real roots in the open interval; endpoints must not be roots.
  int count(const RatInterval& iv) const {
    const int va = iv.lo ? variations_at(*iv.lo) : variations_at_infinity(false);
    const int vb = iv.hi ? variations_at(*iv.hi) : variations_at_infinity(true);
    return va - vb;
  }

  const IntPoly& base() const { return seq_.front(); }

 private:
  std::vector<IntPoly> seq_;
};

// Distinct real roots of p in the open interval. An endpoint that happens to
// be a root is excluded from the count.
inline int sturm_root_count(const IntPoly& p, const RatInterval& iv) {
  if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
  if (p.degree() == 0) return 0;
  IntPoly r = radical(p);
  SturmSequence s(r);
  int n = s.count(iv);
  // Sturm counts roots in (a, b]; remove b when it is a root.
  if (iv.hi && sign_at(r, *iv.hi) == 0) --n;
  return n;
}

// Cauchy bound: every root has absolute value below the returned integer.
inline BigInt cauchy_bound(const IntPoly& p) {
  BigInt m = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    BigInt a = abs(p[i]);
    if (a > m) m = a;
  }
  BigInt lead = abs(p.leading());
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), m.get_mpz_t(), lead.get_mpz_t());
  return q + 2;
}

// Isolating interval (lo, hi) for one real root of a square-free polynomial;
// neither endpoint is a root.
struct RootInterval {
  BigRat lo;
  BigRat hi;
};

namespace detail {

// A point strictly inside (a, b), near the midpoint, that is not a root.
inline BigRat split_point(const IntPoly& p, const BigRat& a, const BigRat& b) {
  BigRat m = (a + b) / 2;
  BigRat step = (b - a) / 8;
  for (int k = 0; sign_at(p, m) == 0; ++k) {
    m += (k % 2 == 0) ? step : -step;
    step /= 2;
  }
  return m;
}

inline void isolate_rec(const SturmSequence& s, const BigRat& a, int va, const BigRat& b, int vb,
                        std::vector<RootInterval>& out) {
  const int n = va - vb;
  if (n == 0) return;
  if (n == 1) {
    out.push_back({a, b});
    return;
  }
  BigRat m = split_point(s.base(), a, b);
  const int vm = s.variations_at(m);
  isolate_rec(s, a, va, m, vm, out);
  isolate_rec(s, m, vm, b, vb, out);
}

}  // namespace detail

// Isolating intervals for the distinct real roots of p, in increasing order.
inline std::vector<RootInterval> isolate_real_roots(const IntPoly& p) {
  std::vector<RootInterval> out;
  if (p.degree() <= 0) return out;
  IntPoly r = radical(p);
  SturmSequence s(r);
  BigRat bound(cauchy_bound(r));
  BigRat lo = -bound;
  BigRat hi = bound;
  detail::isolate_rec(s, lo, s.variations_at(lo), hi, s.variations_at(hi), out);
  return out;
}

// Shrinks an isolating interval of a square-free polynomial below width w.
inline RootInterval refine(const IntPoly& squarefree, RootInterval iv, const BigRat& w) {
  const int slo = sign_at(squarefree, iv.lo);
  while (iv.hi - iv.lo >= w) {
    BigRat m = detail::split_point(squarefree, iv.lo, iv.hi);
    if (sign_at(squarefree, m) == slo)
      iv.lo = m;
    else
      iv.hi = m;
  }
  return iv;
}

// Real roots counted with multiplicity, via the square-free decomposition.
inline int real_root_count_with_multiplicity(const IntPoly& p) {
  int total = 0;
  auto parts = squarefree_decomposition(p);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k].degree() <= 0) continue;
    total += static_cast<int>(k + 1) * SturmSequence(parts[k]).count(RatInterval::real_line());
  }
  return total;
}

inline bool is_totally_real(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("total reality of the zero polynomial");
  return real_root_count_with_multiplicity(p) == p.degree();
}

// Roots of p with multiplicity inside an isolating interval of a polynomial
// that p divides radically (so only one distinct root of p can lie there).
inline int multiplicity_in(const std::vector<IntPoly>& sqfree_parts, const RootInterval& iv) {
  int m = 0;
  for (std::size_t k = 0; k < sqfree_parts.size(); ++k) {
    if (sqfree_parts[k].degree() <= 0) continue;
    m += static_cast<int>(k + 1) *
         SturmSequence(sqfree_parts[k]).count(RatInterval::open(iv.lo, iv.hi));
  }
  return m;
}

// g interlaces f: with sorted roots l_0 <= ... <= l_e of f and m_1 <= ... <=
// m_e of g, l_{i-1} <= m_i <= l_i. Equivalent to N_f(t) - 1 <= N_g(t) <= N_f(t)
// for every real t, where N counts roots <= t with multiplicity; it suffices to
// test t at each distinct root of f*g.
inline bool interlaces(const IntPoly& g, const IntPoly& f) {
  if (g.degree() + 1 != f.degree())
    throw std::invalid_argument("interlacing needs deg g = deg f - 1");
  if (!is_totally_real(f) || !is_totally_real(g)) return false;
  const auto fparts = squarefree_decomposition(f);
  const auto gparts = squarefree_decomposition(g);
  IntPoly rf = radical(f);
  IntPoly rg = g.degree() > 0 ? radical(g) : IntPoly::constant(BigInt(1));
  IntPoly both = exact_divide(rf * rg, gcd(rf, rg));
  int nf = 0;
  int ng = 0;
  for (const auto& iv : isolate_real_roots(both)) {
    nf += multiplicity_in(fparts, iv);
    ng += multiplicity_in(gparts, iv);
    if (ng > nf || ng < nf - 1) return false;
  }
  return true;
}

enum class Type2Mode { type2, weak };

// type2: 2^i | a_i for all i; weak: 2^(i-1) | a_i for i >= 1.
inline bool type2_check(const IntPoly& p, Type2Mode mode) {
  if (!p.is_monic()) throw std::invalid_argument("type-2 test needs a monic polynomial");
  for (std::size_t i = 1; i < p.size(); ++i) {
    const unsigned long need = mode == Type2Mode::type2 ? i : i - 1;
    if (!divisible_by_pow2(p[i], need)) return false;
  }
  return true;
}

}  // namespace eigencert
