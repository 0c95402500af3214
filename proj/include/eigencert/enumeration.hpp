#pragma once

#include "eigencert/factored.hpp"
#include "eigencert/polynomial.hpp"
#include "eigencert/sturm.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace eigencert {

enum class ParityMode { none, type2_after_shift, weak_type2_after_shift };

class SearchSpaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EnumerationSpec {
  unsigned degree = 0;
  // c_0, c_1, ... leading-first; c_0 must be 1.
  std::vector<BigInt> fixed;
  // Open bounds on every root.
  std::optional<BigRat> root_lower;
  std::optional<BigRat> root_upper;
  // Divisibility of p(x-1)'s coefficients: 2^i | a_i or 2^(i-1) | a_i.
  ParityMode parity = ParityMode::none;
  // Optional leaf filter, e.g. membership of a congruence class.
  std::function<bool(const IntPoly&)> accept;

  static constexpr unsigned max_degree = 16;
};

struct EnumerationStats {
  std::size_t nodes = 0;
  std::size_t leaves = 0;
};

namespace detail {

// Outer enclosure [lo, hi] of g over the interval (a, b).
inline std::pair<BigRat, BigRat> enclose(const IntPoly& g, const BigRat& a, const BigRat& b) {
  const BigRat m = (a + b) / 2;
  const BigRat r = (b - a) / 2;
  RatPoly shifted = taylor_shift(to_rational(g), m);
  const auto& c = shifted.coefficients();
  // c is leading-first; the constant term is g(m).
  BigRat centre = c.empty() ? BigRat(0) : c.back();
  BigRat slack = 0;
  BigRat rp = r;
  for (std::size_t j = 1; j < c.size(); ++j) {
    slack += abs(c[c.size() - 1 - j]) * rp;
    rp *= r;
  }
  return {centre - slack, centre + slack};
}

struct Critical {
  RootInterval where;
  int multiplicity;
};

inline std::vector<Critical> critical_points(const IntPoly& deriv) {
  std::vector<Critical> out;
  if (deriv.degree() <= 0) return out;
  IntPoly rad = radical(deriv);
  const auto parts = squarefree_decomposition(deriv);
  const BigRat width(1, BigInt(1) << 40);
  for (auto iv : isolate_real_roots(rad)) {
    iv = refine(rad, iv, width);
    out.push_back({iv, multiplicity_in(parts, iv)});
  }
  return out;
}

class Enumerator {
 public:
  explicit Enumerator(const EnumerationSpec& spec) : spec_(spec), n_(spec.degree) {
    coef_.assign(n_ + 1, BigInt(0));
    for (std::size_t i = 0; i < spec.fixed.size(); ++i) coef_[i] = spec.fixed[i];
    lo_ = spec.root_lower;
    hi_ = spec.root_upper;
    newton_bounds();
  }

  std::vector<IntPoly> run(EnumerationStats* stats) {
    out_.clear();
    if (infeasible_) return {};
    const std::size_t start = spec_.fixed.size();
    // The fixed prefix itself must be consistent.
    for (std::size_t k = 1; k < start; ++k) {
      if (!parity_ok(k)) return {};
      if (!stage_ok(k)) return {};
    }
    dfs(start);
    if (stats) *stats = stats_;
    std::sort(out_.begin(), out_.end());
    return out_;
  }

 private:
  // P_k(x) = sum_{i<=k} c_i C(n-i, k-i) x^(k-i): the normalized (n-k)-th
  // derivative of p. P_k' = (n-k+1) P_{k-1}.
  IntPoly stage(std::size_t k, bool with_constant) const {
    std::vector<BigInt> c(k + 1);
    for (std::size_t i = 0; i <= k; ++i) c[i] = coef_[i] * binomial(n_ - i, k - i);
    if (!with_constant) c[k] = 0;
    return IntPoly(std::move(c));
  }

  // Coefficient k of p(x-1) minus c_k.
  BigInt shifted_known(std::size_t k) const {
    BigInt s = 0;
    for (std::size_t i = 0; i < k; ++i) {
      BigInt t = coef_[i] * binomial(n_ - i, k - i);
      if ((k - i) % 2) s -= t;
      else s += t;
    }
    return s;
  }

  unsigned long parity_exponent(std::size_t k) const {
    switch (spec_.parity) {
      case ParityMode::type2_after_shift: return k;
      case ParityMode::weak_type2_after_shift: return k == 0 ? 0 : k - 1;
      case ParityMode::none: break;
    }
    return 0;
  }

  bool parity_ok(std::size_t k) const {
    const unsigned long e = parity_exponent(k);
    if (e == 0) return true;
    return divisible_by_pow2(shifted_known(k) + coef_[k], e);
  }

  bool roots_inside(const IntPoly& p) const {
    if (p.degree() <= 0) return true;
    int inside = 0;
    auto parts = squarefree_decomposition(p);
    RatInterval iv{lo_, hi_};
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (parts[k].degree() <= 0) continue;
      const IntPoly& s = parts[k];
      // Roots exactly on an open bound are outside.
      if (lo_ && sign_at(s, *lo_) == 0) return false;
      if (hi_ && sign_at(s, *hi_) == 0) return false;
      inside += static_cast<int>(k + 1) * SturmSequence(s).count(iv);
    }
    return inside == p.degree();
  }

  bool stage_ok(std::size_t k) const { return roots_inside(stage(k, true)); }

  void dfs(std::size_t k) {
    ++stats_.nodes;
    if (k > n_) {
      IntPoly p(coef_);
      ++stats_.leaves;
      if (!spec_.accept || spec_.accept(p)) out_.push_back(std::move(p));
      return;
    }
    const IntPoly g = stage(k, false);
    const IntPoly prev = stage(k - 1, true);
    std::optional<BigInt> lower, upper;
    auto tighten_lower = [&](const BigInt& v) {
      if (!lower || v > *lower) lower = v;
    };
    auto tighten_upper = [&](const BigInt& v) {
      if (!upper || v < *upper) upper = v;
    };
    // Critical points of P_k are the roots of P_{k-1}.
    auto crit = critical_points(prev);
    int sign_right = 1;
    for (std::size_t j = crit.size(); j-- > 0;) {
      const auto& cp = crit[j];
      const int sign_left = (cp.multiplicity % 2) ? -sign_right : sign_right;
      auto [gmin, gmax] = enclose(g, cp.where.lo, cp.where.hi);
      const bool pinned = cp.multiplicity >= 2;
      // local max: P_k(v) >= 0  =>  c_k >= -g(v)
      if (pinned || (sign_left > 0 && sign_right < 0)) tighten_lower(ceil(-gmax));
      // local min: P_k(v) <= 0  =>  c_k <= -g(v)
      if (pinned || (sign_left < 0 && sign_right > 0)) tighten_upper(floor(-gmin));
      sign_right = sign_left;
    }
    // Roots inside (lo, hi): P_k(hi) > 0 and (-1)^k P_k(lo) > 0.
    if (hi_) tighten_lower(floor(-evaluate(g, *hi_)) + 1);
    if (lo_) {
      BigRat v = -evaluate(g, *lo_);
      if (k % 2 == 0)
        tighten_lower(floor(v) + 1);
      else
        tighten_upper(ceil(v) - 1);
    }
    if (!lower || !upper) throw SearchSpaceError("coefficient range is unbounded; add root bounds");
    const unsigned long e = parity_exponent(k);
    BigInt step = 1;
    BigInt first = *lower;
    if (e > 0) {
      step = pow2(e);
      // c_k = -known (mod 2^e)
      BigInt want = mod_pow2(-shifted_known(k), e);
      BigInt r = mod_pow2(first, e);
      first += mod_pow2(want - r, e);
    }
    for (BigInt c = first; c <= *upper; c += step) {
      coef_[k] = c;
      if (!stage_ok(k)) continue;
      dfs(k + 1);
    }
    coef_[k] = 0;
  }

  void newton_bounds() {
    if (spec_.fixed.size() < 3 || n_ < 2) return;
    // Mean and variance of the roots from the first two power sums; every
    // root lies within sqrt(n-1) standard deviations of the mean.
    const BigRat s1 = -BigRat(coef_[1]);
    const BigRat s2 = BigRat(coef_[1] * coef_[1] - 2 * coef_[2]);
    const BigRat mean = s1 / n_;
    const BigRat var = s2 / n_ - mean * mean;
    if (var < 0) {
      infeasible_ = true;
      return;
    }
    const BigRat spread2 = var * (n_ - 1);
    // Rational upper bound for sqrt(spread2), slightly enlarged so the
    // interval can be open.
    const BigInt scale = BigInt(1) << 20;
    BigInt num = spread2.get_num() * scale * scale;
    BigInt root = isqrt(floor_div(num, spread2.get_den())) + 2;
    BigRat radius(root, scale);
    radius.canonicalize();
    BigRat lo = mean - radius, hi = mean + radius;
    if (!lo_ || lo > *lo_) lo_ = lo;
    if (!hi_ || hi < *hi_) hi_ = hi;
  }

  const EnumerationSpec& spec_;
  std::size_t n_;
  std::vector<BigInt> coef_;
  std::optional<BigRat> lo_, hi_;
  bool infeasible_ = false;
  std::vector<IntPoly> out_;
  EnumerationStats stats_;
};

}  // namespace detail

// Every monic totally real integer polynomial allowed by `spec`, sorted by
// coefficient vector.
inline std::vector<IntPoly> enumerate_polynomials(const EnumerationSpec& spec,
                                                  EnumerationStats* stats = nullptr) {
  if (spec.degree == 0) throw SearchSpaceError("degree must be positive");
  if (spec.degree > EnumerationSpec::max_degree) throw SearchSpaceError("degree exceeds the search bound");
  if (spec.fixed.empty() || spec.fixed[0] != 1) throw std::invalid_argument("leading coefficient must be 1");
  if (spec.fixed.size() > spec.degree + 1) throw std::invalid_argument("too many fixed coefficients");
  detail::Enumerator e(spec);
  return e.run(stats);
}

// Order-60 search: Char_S = (x+5)^42 (x-11)^6 phi(x) with phi of degree 12,
// top coefficients (1, -144, 9486), zeros above -5 and phi(x-1) of type 2.
inline EnumerationSpec candidate_spec() {
  EnumerationSpec s;
  s.degree = 12;
  s.fixed = {BigInt(1), BigInt(-144), BigInt(9486)};
  s.root_lower = BigRat(-5);
  s.parity = ParityMode::type2_after_shift;
  return s;
}

inline std::vector<IntPoly> linear_factor_basis(long lo = -5, long hi = 25) {
  std::vector<IntPoly> basis;
  for (long r = lo; r <= hi; ++r) basis.push_back(IntPoly::linear(BigInt(r)));
  return basis;
}

// Candidate characteristic polynomials, kept when a_1 = 0 and a_2 = -C(60,2).
// Factors outside `basis` stay dense.
inline std::vector<FactoredPolynomial> candidate_charpolys(const std::vector<IntPoly>& basis = linear_factor_basis(),
                                                           EnumerationStats* stats = nullptr) {
  const IntPoly head = pow(IntPoly::linear(BigInt(-5)), 42) * pow(IntPoly::linear(BigInt(11)), 6);
  std::vector<FactoredPolynomial> out;
  for (const auto& phi : enumerate_polynomials(candidate_spec(), stats)) {
    const IntPoly p = head * phi;
    if (p[1] != 0 || p[2] != -binomial(60, 2)) continue;
    out.push_back(factor_over(p, basis));
  }
  return out;
}

}  // namespace eigencert
