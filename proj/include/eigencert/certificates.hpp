#pragma once

#include "eigencert/deck.hpp"
#include "eigencert/seidel.hpp"
#include "eigencert/simplex.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eigencert {

enum class CertificateKind { infeasibility, warranty };

struct Certificate {
  CertificateKind kind = CertificateKind::infeasibility;
  std::optional<std::size_t> target;  // warranted member (deck index)
  std::vector<BigRat> c;
};

struct CertificateVerdict {
  bool accepted = false;
  std::vector<BigRat> member_rows;  // C(quotient) . c per deck member
  BigRat target_row;                // C(Min p'/p) . c
  std::string reason;
};

inline std::vector<BigInt> coefficient_vector(const IntPoly& q, std::size_t e) {
  return detail::padded(q, e);
}

inline BigRat row_dot(const IntPoly& q, const std::vector<BigRat>& c) {
  const auto v = coefficient_vector(q, c.size());
  BigRat s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += BigRat(v[i]) * c[i];
  return s;
}

inline CertificateVerdict verify_certificate(const Deck& deck, const Certificate& cert) {
  if (cert.c.size() != static_cast<std::size_t>(deck.e))
    throw std::invalid_argument("certificate length " + std::to_string(cert.c.size()) + " differs from e = " +
                                std::to_string(deck.e));
  CertificateVerdict v;
  for (const auto& m : deck.members) v.member_rows.push_back(row_dot(m.quotient, cert.c));
  v.target_row = row_dot(deck.target, cert.c);
  if (v.target_row >= 0) {
    v.reason = "derivative row is not negative";
    return v;
  }
  if (cert.kind == CertificateKind::warranty) {
    if (!cert.target || *cert.target >= deck.size()) throw std::invalid_argument("warranty needs a target member");
    for (std::size_t i = 0; i < v.member_rows.size(); ++i) {
      const bool ok = i == *cert.target ? v.member_rows[i] < 0 : v.member_rows[i] >= 0;
      if (!ok) {
        v.reason = "member row " + std::to_string(i + 1) + " has the wrong sign";
        return v;
      }
    }
  } else {
    for (std::size_t i = 0; i < v.member_rows.size(); ++i)
      if (v.member_rows[i] < 0) {
        v.reason = "member row " + std::to_string(i + 1) + " is negative";
        return v;
      }
  }
  v.accepted = true;
  return v;
}

namespace detail {

// Farkas alternative for {n >= 0 : sum over columns n_j q_j = target}: either
// a nonnegative solution or c with q_j . c >= 0 and target . c < 0.
inline std::optional<std::vector<BigRat>> farkas(const Deck& deck, const std::vector<std::size_t>& cols) {
  const std::size_t e = deck.e;
  RatMatrix a(e, std::vector<BigRat>(cols.size(), BigRat(0)));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto v = coefficient_vector(deck.members[cols[j]].quotient, e);
    for (std::size_t i = 0; i < e; ++i) a[i][j] = v[i];
  }
  std::vector<BigRat> b(e);
  const auto t = coefficient_vector(deck.target, e);
  for (std::size_t i = 0; i < e; ++i) b[i] = t[i];
  LpResult r = solve_standard_form(a, b, std::vector<BigRat>(cols.size(), BigRat(0)));
  if (r.status != LpStatus::infeasible) return std::nullopt;
  std::vector<BigRat> c(e);
  for (std::size_t i = 0; i < e; ++i) c[i] = -r.farkas[i];
  // Clear denominators and common factors for a tidy integer tuple.
  BigInt l = 1;
  for (const auto& v : c) l = lcm(l, v.get_den());
  BigInt g = 0;
  for (auto& v : c) {
    v *= l;
    g = gcd(g, v.get_num());
  }
  if (g > 1)
    for (auto& v : c) v /= g;
  return c;
}

}  // namespace detail

// Searches for a certificate by exact LP; absence means a nonnegative
// rational configuration exists (or, for warranty, one with a zero entry).
inline std::optional<Certificate> find_certificate(const Deck& deck, CertificateKind kind,
                                                   std::optional<std::size_t> target = std::nullopt) {
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < deck.size(); ++i)
    if (kind == CertificateKind::infeasibility || i != *target) cols.push_back(i);
  if (kind == CertificateKind::warranty && (!target || *target >= deck.size()))
    throw std::invalid_argument("warranty needs a target member");
  auto c = detail::farkas(deck, cols);
  if (!c) return std::nullopt;
  Certificate cert{kind, target, *c};
  if (!verify_certificate(deck, cert).accepted) return std::nullopt;
  return cert;
}

struct InterlacingConfiguration {
  std::vector<BigRat> n;  // indexed by deck member
  bool integral = true;
  bool nonnegative = true;
};

// All nonnegative solutions of n C(members) = C(Min p'/p) with n supported on
// `subset` (every member when empty). A unique solution is returned as is;
// a positive-dimensional solution set is enumerated over integer points.
inline std::vector<InterlacingConfiguration> solve_configurations(const Deck& deck,
                                                                  std::vector<std::size_t> subset = {}) {
  if (subset.empty())
    for (std::size_t i = 0; i < deck.size(); ++i) subset.push_back(i);
  const std::size_t e = deck.e;
  const std::size_t k = subset.size();
  // Augmented system A n = t with A = C^T restricted to the subset.
  RatMatrix m(e, std::vector<BigRat>(k + 1, BigRat(0)));
  for (std::size_t j = 0; j < k; ++j) {
    const auto v = coefficient_vector(deck.members[subset[j]].quotient, e);
    for (std::size_t i = 0; i < e; ++i) m[i][j] = v[i];
  }
  const auto t = coefficient_vector(deck.target, e);
  for (std::size_t i = 0; i < e; ++i) m[i][k] = t[i];
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < e; ++col) {
    std::size_t p = row;
    while (p < e && m[p][col] == 0) ++p;
    if (p == e) continue;
    std::swap(m[p], m[row]);
    const BigRat inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t i = 0; i < e; ++i) {
      if (i == row || m[i][col] == 0) continue;
      const BigRat f = m[i][col];
      for (std::size_t j = 0; j <= k; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < e; ++i)
    if (m[i][k] != 0) return {};
  std::vector<InterlacingConfiguration> out;
  auto emit = [&](const std::vector<BigRat>& sol) {
    InterlacingConfiguration c;
    c.n.assign(deck.size(), BigRat(0));
    for (std::size_t j = 0; j < k; ++j) {
      c.n[subset[j]] = sol[j];
      if (!is_integer(sol[j])) c.integral = false;
      if (sol[j] < 0) c.nonnegative = false;
    }
    if (c.nonnegative) out.push_back(std::move(c));
  };
  if (pivots.size() == k) {
    std::vector<BigRat> sol(k);
    for (std::size_t r = 0; r < k; ++r) sol[pivots[r]] = m[r][k];
    emit(sol);
    return out;
  }
  // Free columns parametrize the solutions; bound them with LPs over
  // 0 <= n_j <= deg p and enumerate integer points.
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < k; ++j)
    if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) free_cols.push_back(j);
  const std::size_t f = free_cols.size();
  const BigRat cap(deck.n);
  // Pivot variable r: n_{pivots[r]} = m[r][k] - sum_f m[r][free_f] y_f.
  std::vector<BigInt> y;
  std::function<void()> rec = [&] {
    const std::size_t t0 = y.size();
    Polyhedron poly(f - t0);
    auto add_range = [&](std::vector<BigRat> g, BigRat h) {
      // 0 <= h - g.y <= cap over the unfixed suffix
      BigRat hh = h;
      for (std::size_t j = 0; j < t0; ++j) hh -= g[j] * BigRat(y[j]);
      std::vector<BigRat> gs(g.begin() + static_cast<long>(t0), g.end());
      poly.add_le(gs, hh);
      poly.add_ge(gs, hh - cap);
    };
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      std::vector<BigRat> g(f);
      for (std::size_t q = 0; q < f; ++q) g[q] = m[r][free_cols[q]];
      add_range(g, m[r][k]);
    }
    for (std::size_t q = 0; q < f; ++q) {
      std::vector<BigRat> g(f, BigRat(0));
      g[q] = -1;
      add_range(g, BigRat(0));
    }
    if (t0 == f) {
      std::vector<BigRat> sol(k);
      for (std::size_t q = 0; q < f; ++q) sol[free_cols[q]] = y[q];
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        BigRat v = m[r][k];
        for (std::size_t q = 0; q < f; ++q) v -= m[r][free_cols[q]] * BigRat(y[q]);
        sol[pivots[r]] = v;
      }
      bool integral = true;
      for (const auto& v : sol) integral = integral && is_integer(v);
      if (integral) emit(sol);
      return;
    }
    std::vector<BigRat> obj(f - t0, BigRat(0));
    obj[0] = 1;
    LpResult lo = poly.minimize(obj);
    if (lo.status != LpStatus::optimal) return;
    LpResult hi = poly.maximize(obj);
    for (BigInt v = ceil(lo.value); v <= floor(hi.value); ++v) {
      y.push_back(v);
      rec();
      y.pop_back();
    }
  };
  rec();
  return out;
}

// Multiplicity-extraction argument: k vertex deletions keep eigenvalue lambda
// at multiplicity m or m+1, so some principal submatrix of order n-k keeps
// multiplicity m; interlacing leaves the smallest eigenvalue with
// multiplicity at least M-k. A trace overflow is a contradiction.
struct ExtractionVerdict {
  BigInt lambda;
  unsigned multiplicity = 0;
  unsigned k = 0;
  unsigned order = 0;
  BigInt floor_eigenvalue;
  unsigned floor_multiplicity = 0;
  TraceVerdict trace;
};

inline ExtractionVerdict extraction_pipeline(const Deck& deck, const InterlacingConfiguration& config,
                                             const BigInt& lambda, const BigInt& floor_eigenvalue) {
  ExtractionVerdict v;
  v.lambda = lambda;
  v.floor_eigenvalue = floor_eigenvalue;
  v.multiplicity = deck.base.multiplicity_of_root(lambda);
  const unsigned big = deck.base.multiplicity_of_root(floor_eigenvalue);
  BigRat k = 0;
  for (std::size_t i = 0; i < deck.size(); ++i) {
    const unsigned mi = deck.members[i].member.multiplicity_of_root(lambda);
    if (mi == v.multiplicity || mi == v.multiplicity + 1) k += config.n[i];
  }
  if (!is_integer(k)) throw std::invalid_argument("extraction needs an integral configuration");
  v.k = static_cast<unsigned>(k.get_num().get_ui());
  v.order = static_cast<unsigned>(deck.n) - v.k;
  v.floor_multiplicity = big > v.k ? big - v.k : 0;
  std::vector<std::pair<BigInt, unsigned>> forced{{floor_eigenvalue, v.floor_multiplicity},
                                                  {lambda, v.multiplicity}};
  v.trace = trace_contradiction(v.order, forced);
  return v;
}

// a + b sqrt(d) with d > 1 squarefree, or b = 0 and d = 1 for plain rationals.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(BigRat a, BigRat b, BigInt d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}
  static QuadraticNumber rational(BigRat a) { return {std::move(a), BigRat(0), BigInt(1)}; }

  const BigRat& a() const { return a_; }
  const BigRat& b() const { return b_; }
  const BigInt& d() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  // Sign of the real number a + b sqrt(d), sqrt(d) > 0.
  int sign() const {
    const int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    const BigRat aa = a_ * a_, bb = b_ * b_ * BigRat(d_);
    if (aa == bb) return 0;
    return aa > bb ? sa : sb;
  }

  QuadraticNumber conjugate() const { return {a_, -b_, d_}; }
  BigRat norm() const { return a_ * a_ - b_ * b_ * BigRat(d_); }

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
    return {x.a_ + y.a_, x.b_ + y.b_, field(x, y)};
  }
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
    return {x.a_ - y.a_, x.b_ - y.b_, field(x, y)};
  }
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
    const BigInt d = field(x, y);
    return {x.a_ * y.a_ + x.b_ * y.b_ * BigRat(d), x.a_ * y.b_ + x.b_ * y.a_, d};
  }
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
    const BigRat n = y.norm();
    if (n == 0) throw std::domain_error("division by zero in a quadratic field");
    QuadraticNumber inv{y.a_ / n, -y.b_ / n, y.d_};
    return x * inv;
  }
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  // The nonnegative square root when it lies in the same field.
  std::optional<QuadraticNumber> sqrt() const {
    if (sign() < 0) return std::nullopt;
    if (is_zero()) return *this;
    if (b_ == 0) {
      if (auto r = rational_sqrt(a_)) return QuadraticNumber{*r, BigRat(0), d_};
      if (d_ > 1)
        if (auto r = rational_sqrt(a_ / BigRat(d_))) return QuadraticNumber{BigRat(0), *r, d_};
      return std::nullopt;
    }
    // (x + y sqrt d)^2 = a + b sqrt d: x^2 = (a +- sqrt(norm)) / 2.
    const auto s = rational_sqrt(norm());
    if (!s) return std::nullopt;
    for (const BigRat& x2 : std::array<BigRat, 2>{(a_ + *s) / 2, (a_ - *s) / 2}) {
      auto x = rational_sqrt(x2);
      if (!x || *x == 0) continue;
      QuadraticNumber r{*x, b_ / (2 * *x), d_};
      if (r.sign() < 0) r = QuadraticNumber{-r.a_, -r.b_, d_};
      if (r * r == *this) return r;
    }
    return std::nullopt;
  }

  std::string str() const {
    std::string s = a_.get_str();
    if (b_ != 0) s += (b_ > 0 ? " + " : " - ") + BigRat(abs(b_)).get_str() + "*sqrt(" + d_.get_str() + ")";
    return s;
  }

 private:
  static BigInt field(const QuadraticNumber& x, const QuadraticNumber& y) {
    if (x.b_ != 0 && y.b_ != 0 && x.d_ != y.d_) throw std::domain_error("mixed quadratic fields");
    return x.b_ != 0 ? x.d_ : y.b_ != 0 ? y.d_ : std::max(x.d_, y.d_);
  }
  static std::optional<BigRat> rational_sqrt(const BigRat& v) {
    if (v < 0) return std::nullopt;
    BigInt n = isqrt(v.get_num()), d = isqrt(v.get_den());
    if (n * n != v.get_num() || d * d != v.get_den()) return std::nullopt;
    return BigRat(n, d);
  }

  BigRat a_ = 0, b_ = 0;
  BigInt d_ = 1;
};

class OutOfFieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline QuadraticNumber evaluate(const IntPoly& f, const QuadraticNumber& x) {
  QuadraticNumber r{BigRat(0), BigRat(0), x.d()};
  for (const auto& c : f.coefficients()) r = r * x + QuadraticNumber{BigRat(c), BigRat(0), x.d()};
  return r;
}

struct SimpleZero {
  IntPoly factor;  // degree 1 or 2
  QuadraticNumber value;
};

// Spectral bookkeeping for the compatibility test.
struct SpectrumProfile {
  FactoredPolynomial p;
  IntPoly min_poly, sim_poly, mult_poly;
  std::vector<SimpleZero> simple;  // Sigma_p
  BigInt r;                        // R_p

  explicit SpectrumProfile(FactoredPolynomial base) : p(std::move(base)) {
    min_poly = p.min_poly();
    sim_poly = IntPoly::constant(BigInt(1));
    BigInt d = 1;
    for (const auto& f : p.factors()) {
      if (f.multiplicity != 1) continue;
      sim_poly *= f.poly;
      if (f.poly.degree() == 1) {
        simple.push_back({f.poly, QuadraticNumber::rational(-BigRat(f.poly[1]))});
      } else if (f.poly.degree() == 2) {
        // x^2 + B x + C: roots (-B +- sqrt(B^2 - 4C)) / 2
        const BigInt disc = f.poly[1] * f.poly[1] - 4 * f.poly[2];
        auto [k, core] = squarefree_part(disc);
        if (core == 1 || core < 0) throw OutOfFieldError("simple quadratic factor is not real irrational");
        if (d != 1 && d != core) throw OutOfFieldError("simple zeros span two quadratic fields");
        d = core;
        for (int s : {1, -1})
          simple.push_back({f.poly, QuadraticNumber{BigRat(-f.poly[1]) / 2, BigRat(s * k) / 2, core}});
      } else {
        throw OutOfFieldError("simple zero of degree above two");
      }
    }
    for (auto& z : simple) z.value = QuadraticNumber{z.value.a(), z.value.b(), d};
    mult_poly = exact_divide(min_poly, sim_poly);
    const BigInt m1 = eigencert::evaluate(mult_poly, BigInt(1));
    if (p.degree() % 2 == 0) {
      const BigInt diff = m1 - eigencert::evaluate(mult_poly, BigInt(-1));
      if (!divisible_by_pow2(diff, 1)) throw std::logic_error("R_p is not an integer");
      r = diff / 2;
    } else {
      r = m1 + eigencert::evaluate(mult_poly, BigInt(0));
    }
  }

  // alpha_lambda(f)^2 = f(lambda) / Min_p'(lambda) for the quotient f.
  QuadraticNumber angle_squared(const IntPoly& quotient, const SimpleZero& z) const {
    QuadraticNumber v = evaluate(quotient, z.value) / evaluate(derivative(min_poly), z.value);
    if (v.sign() < 0) throw std::logic_error("negative squared angle; member does not interlace");
    return v;
  }

 private:
  // disc = k^2 * core with core squarefree.
  static std::pair<BigInt, BigInt> squarefree_part(BigInt disc) {
    BigInt k = 1;
    for (BigInt q = 2; q * q <= abs(disc); ++q)
      while (disc % (q * q) == 0) {
        disc /= q * q;
        k *= q;
      }
    return {k, disc};
  }
};

namespace detail {

// Mult delta sqrt(W) over one simple zero, or over a conjugate pair
// M d1 sqrt(W) + conj(M) d2 sqrt(conj W) when sqrt(W) leaves the field.
struct CompatibilityPiece {
  QuadraticNumber m, w;
  std::optional<QuadraticNumber> root;  // sqrt(w) when it lies in the field
  bool pair = false;
  QuadraticNumber mc, wc;  // conjugate data when pair
  std::optional<BigRat> norm_root_rational;
  std::optional<BigRat> norm_root_over_sqrt_d;  // sqrt(N) = value * sqrt(d)
};

inline std::optional<BigRat> rational_root(const BigRat& v) {
  if (v < 0) return std::nullopt;
  BigInt n = isqrt(v.get_num()), d = isqrt(v.get_den());
  if (n * n != v.get_num() || d * d != v.get_den()) return std::nullopt;
  return BigRat(n, d);
}

// Value of the pair for signs d1, d2, when it lies in the field.
inline std::optional<QuadraticNumber> pair_value(const CompatibilityPiece& pc, int d1, int d2) {
  const BigInt d = pc.w.d();
  QuadraticNumber cross;
  if (pc.norm_root_rational)
    cross = QuadraticNumber{*pc.norm_root_rational, BigRat(0), d};
  else if (pc.norm_root_over_sqrt_d)
    cross = QuadraticNumber{BigRat(0), *pc.norm_root_over_sqrt_d, d};
  else
    return std::nullopt;
  const QuadraticNumber mm = pc.m * pc.mc;
  const QuadraticNumber a = pc.m * pc.m * pc.w, b = pc.mc * pc.mc * pc.wc;
  const QuadraticNumber sq = a + b + QuadraticNumber::rational(BigRat(2 * d1 * d2)) * mm * cross;
  auto q = sq.sqrt();
  if (!q) return std::nullopt;
  // Sign of the real pair value from its two summands.
  const int s1 = d1 * pc.m.sign(), s2 = d2 * pc.mc.sign();
  int sign = s1 != 0 ? s1 : s2;
  if (s1 != 0 && s2 != 0 && s1 != s2) {
    const int cmp = (a - b).sign();
    sign = cmp > 0 ? s1 : cmp < 0 ? s2 : 0;
  }
  if (sign < 0) *q = QuadraticNumber::rational(0) - *q;
  return q;
}

}  // namespace detail

// Whether some sign choice delta makes
//   sum over simple zeros of Mult_p(lambda) delta(lambda) alpha(f) alpha(g)
// an integer congruent to R_p modulo 2.
inline bool seidel_compatible(const SpectrumProfile& prof, const IntPoly& f, const IntPoly& g) {
  if (f == g) return true;
  std::vector<detail::CompatibilityPiece> pieces;
  for (std::size_t i = 0; i < prof.simple.size(); ++i) {
    const auto& z = prof.simple[i];
    detail::CompatibilityPiece pc;
    pc.m = evaluate(prof.mult_poly, z.value);
    pc.w = prof.angle_squared(f, z) * prof.angle_squared(g, z);
    pc.root = pc.w.sqrt();
    const bool conj_next = z.factor.degree() == 2 && i + 1 < prof.simple.size() && prof.simple[i + 1].factor == z.factor;
    if (!pc.root && conj_next) {
      const auto& zc = prof.simple[i + 1];
      pc.pair = true;
      pc.mc = evaluate(prof.mult_poly, zc.value);
      pc.wc = prof.angle_squared(f, zc) * prof.angle_squared(g, zc);
      const BigRat n = pc.w.norm();
      pc.norm_root_rational = detail::rational_root(n);
      if (!pc.norm_root_rational && pc.w.d() > 1) pc.norm_root_over_sqrt_d = detail::rational_root(n / BigRat(pc.w.d()));
      ++i;
    } else if (!pc.root) {
      throw OutOfFieldError("angle product " + pc.w.str() + " has no square root in the field");
    } else if (conj_next) {
      // Both zeros of the pair are handled as ordinary pieces.
    }
    pieces.push_back(std::move(pc));
  }
  // One sign per simple zero.
  const std::size_t t = prof.simple.size();
  if (t >= 63) throw std::invalid_argument("too many simple zeros");
  const BigInt d = pieces.empty() ? BigInt(1) : pieces[0].w.d();
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << t); ++mask) {
    QuadraticNumber sum{BigRat(0), BigRat(0), d};
    std::size_t bit = 0, outside = 0;
    for (const auto& pc : pieces) {
      const int d1 = (mask >> bit & 1) ? -1 : 1;
      ++bit;
      if (!pc.pair) {
        const QuadraticNumber v = pc.m * *pc.root;
        sum = d1 < 0 ? sum - v : sum + v;
        continue;
      }
      const int d2 = (mask >> bit & 1) ? -1 : 1;
      ++bit;
      if (auto v = detail::pair_value(pc, d1, d2))
        sum = sum + *v;
      else
        ++outside;
    }
    // Two irrational pieces could cancel; that case is not handled.
    if (outside > 1) throw OutOfFieldError("several angle products leave the quadratic field");
    if (outside == 1) continue;
    if (!sum.is_rational() || !is_integer(sum.a())) continue;
    if (divisible_by_pow2(sum.a().get_num() - prof.r, 1)) return true;
  }
  return false;
}

}  // namespace eigencert
