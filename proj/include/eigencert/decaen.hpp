#pragma once

#include "eigencert/factored.hpp"
#include "eigencert/polynomial.hpp"
#include "eigencert/seidel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Elimination of (x+5)^42 (x-11)^15 (x-15)^3 through the 22-regular graph on
// 60 vertices with spectrum {22, 2^42, -6^15, -8^2} in its switching class.
namespace eigencert::decaen {

// ---------------------------------------------------------------------------
// Structure algebra spanned by I, A, J and K = I_3 (x) J_20.

struct StructureElement {
  IntPoly i, a, j, k;

  static StructureElement identity() { return {one(), {}, {}, {}}; }
  static StructureElement adjacency() { return {{}, one(), {}, {}}; }
  static StructureElement all_ones() { return {{}, {}, one(), {}}; }
  static StructureElement blocks() { return {{}, {}, {}, one()}; }
  static StructureElement scalar(const IntPoly& p) { return {p, {}, {}, {}}; }

  friend StructureElement operator+(const StructureElement& x, const StructureElement& y) {
    return {x.i + y.i, x.a + y.a, x.j + y.j, x.k + y.k};
  }
  friend StructureElement operator-(const StructureElement& x, const StructureElement& y) {
    return {x.i - y.i, x.a - y.a, x.j - y.j, x.k - y.k};
  }
  friend StructureElement operator*(const IntPoly& s, const StructureElement& x) {
    return {s * x.i, s * x.a, s * x.j, s * x.k};
  }
  // Relations: A^2 = -4A + 12I + 9J + K, AJ = 22J, AK = 10J - 8K,
  // J^2 = 60J, JK = 20J, K^2 = 20K.
  friend StructureElement operator*(const StructureElement& x, const StructureElement& y) {
    StructureElement r;
    r.i = x.i * y.i;
    r.a = x.i * y.a + x.a * y.i;
    r.j = x.i * y.j + x.j * y.i;
    r.k = x.i * y.k + x.k * y.i;
    const IntPoly aa = x.a * y.a;
    r.a += c(-4) * aa;
    r.i += c(12) * aa;
    r.j += c(9) * aa;
    r.k += aa;
    r.j += c(22) * (x.a * y.j + x.j * y.a);
    const IntPoly ak = x.a * y.k + x.k * y.a;
    r.j += c(10) * ak;
    r.k += c(-8) * ak;
    r.j += c(60) * (x.j * y.j);
    r.j += c(20) * (x.j * y.k + x.k * y.j);
    r.k += c(20) * (x.k * y.k);
    return r;
  }
  friend bool operator==(const StructureElement& x, const StructureElement& y) {
    return x.i == y.i && x.a == y.a && x.j == y.j && x.k == y.k;
  }

  std::string str() const {
    return "(" + format_poly(i) + ")I + (" + format_poly(a) + ")A + (" + format_poly(j) + ")J + (" +
           format_poly(k) + ")K";
  }

 private:
  static IntPoly one() { return IntPoly::constant(BigInt(1)); }
  static IntPoly c(long v) { return IntPoly::constant(BigInt(v)); }
};

inline bool algebra_verify(const StructureElement& lhs, const StructureElement& rhs) { return lhs == rhs; }

inline IntPoly xpoly(long root) { return IntPoly::linear(BigInt(root)); }  // x - root
inline IntPoly cpoly(long v) { return IntPoly::constant(BigInt(v)); }

// m(x) = (x-22)(x-2)(x+6)(x+8)
inline IntPoly minimal_polynomial() { return xpoly(22) * xpoly(2) * xpoly(-6) * xpoly(-8); }

// (x-22)(x+8)(A + (x+4)I) + (9x+82)J + (x-22)K
inline StructureElement claimed_resolvent() {
  using S = StructureElement;
  const IntPoly q = xpoly(22) * xpoly(-8);
  return q * (S::adjacency() + S::scalar(xpoly(-4))) + IntPoly{BigInt(9), BigInt(82)} * S::all_ones() +
         xpoly(22) * S::blocks();
}

// sum_{k>=1} D^k m(x) A^(k-1), the Cayley-Hamilton form of m(x)(xI-A)^(-1).
inline StructureElement resolvent_from_minimal_polynomial() {
  const IntPoly m = minimal_polynomial();
  StructureElement acc;
  StructureElement power = StructureElement::identity();
  for (int k = 1; k <= m.degree(); ++k) {
    acc = acc + shift_down(m, static_cast<std::size_t>(k)) * power;
    power = power * StructureElement::adjacency();
  }
  return acc;
}

inline StructureElement x_minus_a() {
  return StructureElement::scalar(IntPoly::x()) - StructureElement::adjacency();
}

// M = 3A^2 + 12A - 36I - 28J
inline StructureElement projection_m() {
  using S = StructureElement;
  const S a = S::adjacency();
  return cpoly(3) * (a * a) + cpoly(12) * a - cpoly(36) * S::identity() - cpoly(28) * S::all_ones();
}

// Block-constant value of an element with integer coefficients on the 3x3
// block pattern: I and A have no constant block form, so only J and K count.
inline std::array<std::array<BigRat, 3>, 3> block_constants(const StructureElement& e) {
  if (!e.i.is_zero() || !e.a.is_zero()) throw std::invalid_argument("element is not block-constant");
  auto val = [](const IntPoly& p) { return p.is_zero() ? BigRat(0) : BigRat(p[p.size() - 1]); };
  std::array<std::array<BigRat, 3>, 3> out;
  for (int r = 0; r < 3; ++r)
    for (int s = 0; s < 3; ++s) out[r][s] = val(e.j) + (r == s ? val(e.k) : BigRat(0));
  return out;
}

using Matrix3 = std::array<std::array<BigRat, 3>, 3>;

inline Matrix3 mul(const Matrix3& x, const Matrix3& y) {
  Matrix3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      r[i][j] = 0;
      for (int k = 0; k < 3; ++k) r[i][j] += x[i][k] * y[k][j];
    }
  return r;
}

inline std::optional<Matrix3> inverse(Matrix3 m) {
  Matrix3 inv{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) inv[i][j] = i == j ? 1 : 0;
  for (int col = 0; col < 3; ++col) {
    int p = col;
    while (p < 3 && m[p][col] == 0) ++p;
    if (p == 3) return std::nullopt;
    std::swap(m[p], m[col]);
    std::swap(inv[p], inv[col]);
    const BigRat f = 1 / m[col][col];
    for (int j = 0; j < 3; ++j) {
      m[col][j] *= f;
      inv[col][j] *= f;
    }
    for (int i = 0; i < 3; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const BigRat g = m[i][col];
      for (int j = 0; j < 3; ++j) {
        m[i][j] -= g * m[col][j];
        inv[i][j] -= g * inv[col][j];
      }
    }
  }
  return inv;
}

// Neighbour counts n_ij of a vertex of part i into part j. Columns 1-2 come
// from the block constants of M and AM (with one representative per part),
// column 3 from AJ = 22J.
inline Matrix3 quotient_matrix_solve() {
  const StructureElement m = projection_m();
  const StructureElement am = StructureElement::adjacency() * m;
  const auto mb = block_constants(m);
  const auto amb = block_constants(am);
  const auto aj = StructureElement::adjacency() * StructureElement::all_ones();
  if (!(aj == cpoly(22) * StructureElement::all_ones())) throw std::logic_error("AJ != 22J");
  Matrix3 lhs{}, rhs{};
  // lhs columns: M columns 0 and 1 and the all-ones column.
  for (int r = 0; r < 3; ++r) {
    lhs[r][0] = mb[r][0];
    lhs[r][1] = mb[r][1];
    lhs[r][2] = 1;
    rhs[r][0] = amb[r][0];
    rhs[r][1] = amb[r][1];
    rhs[r][2] = 22;
  }
  const auto inv = inverse(lhs);
  if (!inv) throw std::logic_error("quotient system is singular");
  return mul(rhs, *inv);
}

// ---------------------------------------------------------------------------
// Polynomial determinants.

// Fraction-free Gaussian elimination over Z[x].
inline IntPoly determinant(std::vector<std::vector<IntPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return cpoly(1);
  int sign = 1;
  IntPoly prev = cpoly(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return IntPoly();
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = exact_divide(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      m[i][k] = IntPoly();
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

inline unsigned valuation_at(IntPoly p, long root) {
  if (p.is_zero()) throw std::invalid_argument("valuation of the zero polynomial");
  unsigned v = 0;
  const IntPoly f = xpoly(root);
  while (divides(f, p)) {
    p = exact_divide(p, f);
    ++v;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Small graphs.

struct SmallGraph {
  unsigned n = 0;
  std::vector<std::uint64_t> adj;

  explicit SmallGraph(unsigned vertices = 0) : n(vertices), adj(vertices, 0) {
    if (vertices > 64) throw std::invalid_argument("small graphs have at most 64 vertices");
  }
  void add_edge(unsigned u, unsigned v) {
    if (u == v) throw std::invalid_argument("loops are not allowed");
    adj[u] |= std::uint64_t(1) << v;
    adj[v] |= std::uint64_t(1) << u;
  }
  bool edge(unsigned u, unsigned v) const { return adj[u] >> v & 1; }
  unsigned degree(unsigned v) const { return static_cast<unsigned>(std::popcount(adj[v])); }
  unsigned edges() const {
    unsigned s = 0;
    for (auto r : adj) s += static_cast<unsigned>(std::popcount(r));
    return s / 2;
  }
  SmallGraph induced(std::uint64_t mask) const {
    std::vector<unsigned> keep;
    for (unsigned v = 0; v < n; ++v)
      if (mask >> v & 1) keep.push_back(v);
    SmallGraph g(static_cast<unsigned>(keep.size()));
    for (unsigned a = 0; a < keep.size(); ++a)
      for (unsigned b = a + 1; b < keep.size(); ++b)
        if (edge(keep[a], keep[b])) g.add_edge(a, b);
    return g;
  }
};

// Disjoint cycles on consecutive labels.
inline SmallGraph cycle_union(const std::vector<unsigned>& lengths) {
  unsigned total = 0;
  for (unsigned l : lengths) {
    if (l < 3) throw std::invalid_argument("cycles have length at least 3");
    total += l;
  }
  SmallGraph g(total);
  unsigned base = 0;
  for (unsigned l : lengths) {
    for (unsigned t = 0; t < l; ++t) g.add_edge(base + t, base + (t + 1) % l);
    base += l;
  }
  return g;
}

// Cycle i on {4i, 4i+1, 4i+2, 4i+3} in that cyclic order.
inline SmallGraph five_squares() { return cycle_union({4, 4, 4, 4, 4}); }

// Components as connected vertex masks.
inline std::vector<std::uint64_t> components(const SmallGraph& g) {
  std::vector<std::uint64_t> out;
  std::uint64_t seen = 0;
  for (unsigned v = 0; v < g.n; ++v) {
    if (seen >> v & 1) continue;
    std::uint64_t comp = std::uint64_t(1) << v, frontier = comp;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= g.adj[std::countr_zero(f)];
      frontier = next & ~comp;
      comp |= next;
    }
    seen |= comp;
    out.push_back(comp);
  }
  return out;
}

// Backtracking isomorphism test with degree and neighbour-degree refinement.
inline bool isomorphic(const SmallGraph& g, const SmallGraph& h) {
  if (g.n != h.n || g.edges() != h.edges()) return false;
  const unsigned n = g.n;
  auto signature = [](const SmallGraph& x, unsigned v) {
    std::vector<unsigned> nd;
    for (std::uint64_t m = x.adj[v]; m; m &= m - 1) nd.push_back(x.degree(static_cast<unsigned>(std::countr_zero(m))));
    std::sort(nd.begin(), nd.end());
    nd.insert(nd.begin(), x.degree(v));
    return nd;
  };
  std::vector<std::vector<unsigned>> sg(n), sh(n);
  for (unsigned v = 0; v < n; ++v) {
    sg[v] = signature(g, v);
    sh[v] = signature(h, v);
  }
  {
    auto a = sg, b = sh;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  std::vector<int> map(n, -1);
  std::uint64_t used = 0;
  std::function<bool(unsigned)> rec = [&](unsigned v) {
    if (v == n) return true;
    for (unsigned w = 0; w < n; ++w) {
      if (used >> w & 1 || sg[v] != sh[w]) continue;
      bool ok = true;
      for (unsigned u = 0; u < v && ok; ++u) ok = g.edge(u, v) == h.edge(static_cast<unsigned>(map[u]), w);
      if (!ok) continue;
      map[v] = static_cast<int>(w);
      used |= std::uint64_t(1) << w;
      if (rec(v + 1)) return true;
      used &= ~(std::uint64_t(1) << w);
    }
    map[v] = -1;
    return false;
  };
  return rec(0);
}

// ---------------------------------------------------------------------------
// Subgraph condition I.

struct ConditionIVerdict {
  bool pass = false;
  unsigned s = 0;
  IntPoly numerator;        // det of the denominator-cleared matrix
  unsigned x6_valuation = 0;
  std::string factored;
  std::string reason;
};

inline std::vector<IntPoly> condition_factor_basis() {
  std::vector<IntPoly> basis;
  for (long r : {22, 12, 2, -2, -3, -4, -5, -6, -8}) basis.push_back(xpoly(r));
  return basis;
}

// X is the adjacency of Gamma[T u S] with T the first 20 vertices. The matrix
//   (x+4)I + X + (9x+82)J/((x-22)(x+8)) + (J_20 (+) J_s)/(x+8)
// times (x-22)(x+8) has determinant N; membership of N / ((x-22)(x+8))^n in
// (x+6)^(5+s) / ((x-22)(x-2)^(22-s)(x+8)^2) Z[x] is a divisibility test.
inline ConditionIVerdict subgraph_condition_I(const SmallGraph& x, unsigned s) {
  const unsigned n = x.n;
  if (n != 20 + s) throw std::invalid_argument("graph must have 20 + s vertices");
  if (s > 22) throw std::invalid_argument("s exceeds the admissible range");
  const IntPoly q = xpoly(22) * xpoly(-8);
  const IntPoly diag = q * xpoly(-4);
  const IntPoly ones{BigInt(9), BigInt(82)};
  const IntPoly blk = xpoly(22);
  std::vector<std::vector<IntPoly>> m(n, std::vector<IntPoly>(n));
  for (unsigned r = 0; r < n; ++r)
    for (unsigned c = 0; c < n; ++c) {
      IntPoly e = ones;
      if (r == c) e += diag;
      if (x.edge(r, c)) e += q;
      if ((r < 20) == (c < 20)) e += blk;
      m[r][c] = e;
    }
  ConditionIVerdict v;
  v.s = s;
  v.numerator = determinant(m);
  v.x6_valuation = valuation_at(v.numerator, -6);
  v.factored = factor_over(v.numerator, condition_factor_basis()).str();
  const IntPoly lhs = v.numerator * pow(xpoly(2), 22 - s);
  const IntPoly rhs = pow(xpoly(22), n - 1) * pow(xpoly(-8), n - 2) * pow(xpoly(-6), 5 + s);
  v.pass = divides(rhs, lhs);
  if (!v.pass)
    v.reason = "determinant has (x+6)^" + std::to_string(v.x6_valuation) + ", needs divisibility by " +
               "(x-22)^" + std::to_string(n - 1) + "(x+8)^" + std::to_string(n - 2) + "(x+6)^" +
               std::to_string(5 + s);
  return v;
}

// Matrix determinant lemma closed form for a disjoint union of cycles, s = 0,
// already multiplied by ((x-22)(x+8))^20:
//   ((x-22)(x+8))^19 (x+6)^c (x-12)(x-2) prod over cycles prod_{lambda != 2} (x+4+lambda).
inline IntPoly closed_form_condition_I(const std::vector<unsigned>& lengths) {
  IntPoly r = pow(xpoly(22) * xpoly(-8), 19) * pow(xpoly(-6), static_cast<unsigned>(lengths.size())) * xpoly(12) *
              xpoly(2);
  for (unsigned l : lengths) {
    const SmallGraph c = cycle_union({l});
    Matrix<int> a(l, l, 0);
    for (unsigned i = 0; i < l; ++i)
      for (unsigned j = 0; j < l; ++j) a(i, j) = c.edge(i, j) ? 1 : 0;
    // prod (x+4+lambda) = (-1)^l charpoly(-x-4); drop lambda = 2 via (x+6).
    const IntPoly ch = charpoly(a);
    IntPoly sub;
    for (const auto& coef : ch.coefficients()) sub = sub * IntPoly{BigInt(-1), BigInt(-4)} + IntPoly::constant(coef);
    if (l % 2) sub = -sub;
    r *= exact_divide(sub, xpoly(-6));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Cycle structure of Gamma[T].

inline std::vector<std::vector<unsigned>> cycle_partitions(unsigned total = 20) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned max_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (unsigned p = std::min(left, max_part); p >= 3; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(total, total);
  for (auto& p : out) std::sort(p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

// omega(-6) = 5 - sum_i (1^T u[C_i])^2 / |C_i| given the per-cycle counts.
inline BigRat omega_minus6(const std::vector<unsigned>& lengths, const std::vector<unsigned>& counts) {
  if (lengths.size() != counts.size()) throw std::invalid_argument("one count per cycle");
  unsigned total = 0, ones = 0;
  BigRat s = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (counts[i] > lengths[i]) throw std::invalid_argument("count exceeds cycle length");
    total += lengths[i];
    ones += counts[i];
    s += BigRat(counts[i] * counts[i]) / BigRat(lengths[i]);
  }
  if (total != 20 || ones != 10) throw std::invalid_argument("needs 20 vertices and 10 neighbours");
  return 5 - s;
}

// Whether some 0/1 neighbourhood with ten ones makes omega(-6) vanish.
inline bool omega_can_vanish(const std::vector<unsigned>& lengths) {
  std::vector<unsigned> counts(lengths.size(), 0);
  std::function<bool(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == lengths.size()) return left == 0 && omega_minus6(lengths, counts) == 0;
    for (unsigned k = 0; k <= std::min(left, lengths[i]); ++k) {
      counts[i] = k;
      if (rec(i + 1, left - k)) return true;
    }
    counts[i] = 0;
    return false;
  };
  return rec(0, 10);
}

struct CyclePartitionVerdict {
  std::vector<unsigned> lengths;
  bool condition_I = false;
  unsigned x6_valuation = 0;
  bool omega_zero = false;
  bool survives() const { return condition_I && omega_zero; }
};

inline std::vector<CyclePartitionVerdict> cycle_partition_verdicts() {
  std::vector<CyclePartitionVerdict> out;
  for (const auto& p : cycle_partitions()) {
    CyclePartitionVerdict v;
    v.lengths = p;
    const auto c1 = subgraph_condition_I(cycle_union(p), 0);
    v.condition_I = c1.pass;
    v.x6_valuation = c1.x6_valuation;
    v.omega_zero = omega_can_vanish(p);
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<std::vector<unsigned>> cycle_partition_survivors() {
  std::vector<std::vector<unsigned>> out;
  for (const auto& v : cycle_partition_verdicts())
    if (v.survives()) out.push_back(v.lengths);
  return out;
}

// ---------------------------------------------------------------------------
// Neighbourhoods of outside vertices in T = 5C4.

struct NeighborhoodVector {
  std::uint32_t mask = 0;
  unsigned ones = 0;   // 1^T u
  unsigned beta = 0;   // u^T X u
  unsigned alpha = 0;  // u^T X^2 u
};

inline NeighborhoodVector make_neighborhood(const SmallGraph& x, std::uint32_t mask) {
  NeighborhoodVector v;
  v.mask = mask;
  v.ones = static_cast<unsigned>(std::popcount(mask));
  for (unsigned w = 0; w < x.n; ++w) {
    const unsigned d = static_cast<unsigned>(std::popcount(x.adj[w] & mask));
    v.alpha += d * d;
    if (mask >> w & 1) v.beta += d;
  }
  return v;
}

inline bool valid_neighborhood(const NeighborhoodVector& v) { return v.ones == 10 && v.beta == 6 && v.alpha == 28; }

// Pair statistics (u^T v, u^T X v).
inline std::pair<unsigned, unsigned> pair_statistics(const SmallGraph& x, std::uint32_t u, std::uint32_t v) {
  unsigned b = 0;
  for (std::uint32_t m = u; m; m &= m - 1) b += static_cast<unsigned>(std::popcount(x.adj[std::countr_zero(m)] & v));
  return {static_cast<unsigned>(std::popcount(u & v)), b};
}

inline std::vector<NeighborhoodVector> neighborhood_enumerate() {
  const SmallGraph x = five_squares();
  std::vector<NeighborhoodVector> out;
  for (std::uint32_t m = 0; m < (1u << 20); ++m) {
    if (std::popcount(m) != 10) continue;
    const auto v = make_neighborhood(x, m);
    if (valid_neighborhood(v)) out.push_back(v);
  }
  return out;
}

// 3K2 + 4K1 on the support.
inline bool induces_three_edges_four_points(const SmallGraph& x, std::uint32_t mask) {
  const SmallGraph g = x.induced(mask);
  if (g.n != 10 || g.edges() != 3) return false;
  for (unsigned v = 0; v < g.n; ++v)
    if (g.degree(v) > 1) return false;
  return true;
}

// Gamma[T u {u}] for a neighbourhood mask; the outside vertex is 20.
inline SmallGraph attach(const SmallGraph& x, std::uint32_t mask) {
  SmallGraph g(x.n + 1);
  for (unsigned a = 0; a < x.n; ++a)
    for (unsigned b = a + 1; b < x.n; ++b)
      if (x.edge(a, b)) g.add_edge(a, b);
  for (unsigned a = 0; a < x.n; ++a)
    if (mask >> a & 1) g.add_edge(a, x.n);
  return g;
}

// The 21-vertex graph: centre joined to an edge of three squares and to an
// antipodal pair of the other two.
inline SmallGraph figure_graph() {
  SmallGraph g(21);
  const SmallGraph x = five_squares();
  for (unsigned a = 0; a < 20; ++a)
    for (unsigned b = a + 1; b < 20; ++b)
      if (x.edge(a, b)) g.add_edge(a, b);
  for (unsigned v : {0u, 1u, 7u, 4u, 9u, 10u, 15u, 13u, 19u, 17u}) g.add_edge(v, 20);
  return g;
}

// ---------------------------------------------------------------------------
// Subgraph condition II with symbolic neighbourhood statistics.

// Polynomial in x whose coefficients are integer polynomials in (a, b).
class ParamPoly {
 public:
  using Monomial = std::pair<unsigned, unsigned>;
  using Bivariate = std::map<Monomial, BigInt>;

  ParamPoly() = default;
  ParamPoly(const IntPoly& p) { add(Monomial{0, 0}, p); }  // NOLINT: implicit lift
  static ParamPoly alpha() { return monomial({1, 0}); }
  static ParamPoly beta() { return monomial({0, 1}); }

  friend ParamPoly operator+(ParamPoly x, const ParamPoly& y) {
    for (const auto& [m, p] : y.t_) x.add(m, p);
    return x;
  }
  friend ParamPoly operator-(ParamPoly x, const ParamPoly& y) {
    for (const auto& [m, p] : y.t_) x.add(m, -p);
    return x;
  }
  friend ParamPoly operator*(const ParamPoly& x, const ParamPoly& y) {
    ParamPoly r;
    for (const auto& [m1, p1] : x.t_)
      for (const auto& [m2, p2] : y.t_) r.add({m1.first + m2.first, m1.second + m2.second}, p1 * p2);
    return r;
  }
  friend bool operator==(const ParamPoly& x, const ParamPoly& y) { return x.t_ == y.t_; }

  bool is_zero() const { return t_.empty(); }
  const std::map<Monomial, IntPoly>& terms() const { return t_; }

  // Coefficient of y^k in p(y + root), as a polynomial in (a, b).
  Bivariate taylor_coefficient(long root, unsigned k) const {
    Bivariate out;
    for (const auto& [m, p] : t_) {
      const RatPoly sh = taylor_shift(to_rational(p), BigRat(root));
      const auto& c = sh.coefficients();
      if (k < c.size()) {
        const BigRat v = c[c.size() - 1 - k];
        if (!is_integer(v)) throw std::logic_error("non-integral Taylor coefficient");
        if (v != 0) out[m] = v.get_num();
      }
    }
    return out;
  }

  ParamPoly divide(const IntPoly& d) const {
    ParamPoly r;
    for (const auto& [m, p] : t_) r.add(m, exact_divide(p, d));
    return r;
  }

  IntPoly substitute(const BigInt& a, const BigInt& b) const {
    IntPoly r;
    for (const auto& [m, p] : t_) r += p * (pow_int(a, m.first) * pow_int(b, m.second));
    return r;
  }

 private:
  static ParamPoly monomial(Monomial m) {
    ParamPoly r;
    r.add(m, cpoly(1));
    return r;
  }
  void add(const Monomial& m, const IntPoly& p) {
    if (p.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, p);
      return;
    }
    it->second += p;
    if (it->second.is_zero()) t_.erase(it);
  }
  std::map<Monomial, IntPoly> t_;
};

using Bivariate = ParamPoly::Bivariate;

inline BigInt evaluate(const Bivariate& f, const BigRat& a, const BigRat& b, BigRat* out) {
  BigRat s = 0;
  for (const auto& [m, c] : f) s += BigRat(c) * pow_rat(a, m.first) * pow_rat(b, m.second);
  *out = s;
  return is_integer(s) ? s.get_num() : BigInt(0);
}

inline BigRat evaluate_rat(const Bivariate& f, const BigRat& a, const BigRat& b) {
  BigRat s;
  (void)evaluate(f, a, b, &s);
  return s;
}

inline std::string format_bivariate(const Bivariate& f) {
  if (f.empty()) return "0";
  std::string s;
  // Highest total degree first.
  std::vector<std::pair<ParamPoly::Monomial, BigInt>> terms(f.begin(), f.end());
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    const unsigned dx = x.first.first + x.first.second, dy = y.first.first + y.first.second;
    if (dx != dy) return dx > dy;
    return x.first.first > y.first.first;
  });
  for (const auto& [m, c] : terms) {
    const bool neg = c < 0;
    const BigInt a = abs(c);
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    std::string mono;
    for (unsigned i = 0; i < m.first; ++i) mono += mono.empty() ? "a" : "*a";
    for (unsigned i = 0; i < m.second; ++i) mono += mono.empty() ? "b" : "*b";
    if (mono.empty())
      s += a.get_str();
    else
      s += (a == 1 ? "" : a.get_str() + "*") + mono;
  }
  return s;
}

// Denominator L = (x-12)(x+6)(x+8)(x+2)(x+4) times the condition II matrix
//   (x+4)I + 10(x^2+4x-30)J/((x-12)(x+6)(x+8)) - B^T B/(x+4)
//     - B^T (X^2 - (x+4)X) B / ((x+2)(x+4)(x+6))
// with the Gram data given symbolically.
struct GramEntry {
  ParamPoly btb, btxb, btx2b;
};

inline ParamPoly condition_II_entry(const GramEntry& g, bool diagonal) {
  const IntPoly l = xpoly(12) * xpoly(-6) * xpoly(-8) * xpoly(-2) * xpoly(-4);
  ParamPoly e = ParamPoly(cpoly(10) * IntPoly{BigInt(1), BigInt(4), BigInt(-30)} * xpoly(-2) * xpoly(-4));
  if (diagonal) e = e + ParamPoly(xpoly(-4) * l);
  e = e - ParamPoly(xpoly(12) * xpoly(-6) * xpoly(-8) * xpoly(-2)) * g.btb;
  e = e - ParamPoly(xpoly(12) * xpoly(-8)) * (g.btx2b - ParamPoly(xpoly(-4)) * g.btxb);
  return e;
}

inline ParamPoly param_determinant(const std::vector<std::vector<ParamPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return ParamPoly(cpoly(1));
  if (n == 1) return m[0][0];
  ParamPoly r;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<ParamPoly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<ParamPoly> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(std::move(row));
    }
    const ParamPoly t = m[0][c] * param_determinant(minor);
    r = c % 2 ? r - t : r + t;
  }
  return r;
}

struct LinearEquation {
  BigInt a, b, c;  // a*alpha + b*beta = c
  friend bool operator==(const LinearEquation&, const LinearEquation&) = default;
};

inline LinearEquation to_linear(const Bivariate& f) {
  LinearEquation e{0, 0, 0};
  for (const auto& [m, c] : f) {
    if (m == ParamPoly::Monomial{1, 0})
      e.a = c;
    else if (m == ParamPoly::Monomial{0, 1})
      e.b = c;
    else if (m == ParamPoly::Monomial{0, 0})
      e.c = -c;
    else
      throw std::logic_error("equation is not linear");
  }
  return e;
}

inline LinearEquation normalized(LinearEquation e) {
  BigInt g = gcd(gcd(e.a, e.b), e.c);
  if (g == 0) return e;
  if (e.a < 0 || (e.a == 0 && e.b < 0)) g = -g;
  return {e.a / g, e.b / g, e.c / g};
}

// Whether target is a Q-linear combination of the given bivariates.
inline bool in_span(const std::vector<Bivariate>& basis, const Bivariate& target) {
  std::set<ParamPoly::Monomial> monos;
  for (const auto& b : basis)
    for (const auto& [m, c] : b) monos.insert(m);
  for (const auto& [m, c] : target) monos.insert(m);
  const std::vector<ParamPoly::Monomial> ms(monos.begin(), monos.end());
  // Rows are monomials, columns the basis plus the target.
  std::vector<std::vector<BigRat>> a(ms.size(), std::vector<BigRat>(basis.size() + 1, BigRat(0)));
  for (std::size_t r = 0; r < ms.size(); ++r) {
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (auto it = basis[k].find(ms[r]); it != basis[k].end()) a[r][k] = it->second;
    if (auto it = target.find(ms[r]); it != target.end()) a[r][basis.size()] = it->second;
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < basis.size() && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      const BigRat f = a[i][col] / a[row][col];
      for (std::size_t j = col; j < a[i].size(); ++j) a[i][j] -= f * a[row][j];
    }
    ++row;
  }
  for (std::size_t i = row; i < a.size(); ++i)
    if (a[i][basis.size()] != 0) return false;
  return true;
}

inline Bivariate to_bivariate(const LinearEquation& e) {
  Bivariate b;
  if (e.a != 0) b[{1, 0}] = e.a;
  if (e.b != 0) b[{0, 1}] = e.b;
  if (e.c != 0) b[{0, 0}] = -e.c;
  return b;
}

struct SingleVertexSolution {
  ParamPoly numerator;               // L times the 1x1 condition II matrix
  std::vector<LinearEquation> equations;  // from the reduction mod (x+6)^2
  BigRat alpha, beta;
};

// One outside vertex: u^T u = 10, alpha = u^T X^2 u, beta = u^T X u.
inline SingleVertexSolution condition_II_single() {
  GramEntry g{ParamPoly(cpoly(10)), ParamPoly::beta(), ParamPoly::alpha()};
  SingleVertexSolution out;
  out.numerator = condition_II_entry(g, true);
  for (unsigned k = 0; k < 2; ++k) out.equations.push_back(to_linear(out.numerator.taylor_coefficient(-6, k)));
  const auto& e1 = out.equations[0];
  const auto& e2 = out.equations[1];
  const BigInt det = e1.a * e2.b - e1.b * e2.a;
  if (det == 0) throw std::logic_error("condition II reduction is degenerate");
  out.alpha = BigRat(e1.c * e2.b - e1.b * e2.c, det);
  out.beta = BigRat(e1.a * e2.c - e1.c * e2.a, det);
  out.alpha.canonicalize();
  out.beta.canonicalize();
  return out;
}

// The displayed single-vertex polynomial
//   (x+2)(x^5+10x^4-88x^3-1444x^2-5468x-4656) - (x-12)(x+8)(alpha - (x+4)beta).
inline ParamPoly displayed_single_vertex_polynomial() {
  const IntPoly q{BigInt(1), BigInt(10), BigInt(-88), BigInt(-1444), BigInt(-5468), BigInt(-4656)};
  return ParamPoly(xpoly(-2) * q) -
         ParamPoly(xpoly(12) * xpoly(-8)) * (ParamPoly::alpha() - ParamPoly(xpoly(-4)) * ParamPoly::beta());
}

struct PairSolution {
  ParamPoly determinant;            // det of L times the 2x2 matrix
  ParamPoly fg;                     // det / ((x+6)^2 (x-12)(x+8))
  bool factorization_matches = false;  // fg equals displayed_f() * displayed_g()
  std::vector<Bivariate> equations;  // reductions of f g modulo (x+6)^2
  std::vector<std::pair<BigInt, BigInt>> integer_solutions;
  LinearEquation line{0, 0, 0};
  bool line_proved = false;         // every real common zero lies on the line
  unsigned beta_min = 0, beta_max = 0;
  std::vector<std::pair<unsigned, unsigned>> pairs;
};

inline ParamPoly displayed_f() {
  using P = ParamPoly;
  const P a = P::alpha(), b = P::beta();
  auto X = [](unsigned k) { return P(IntPoly::monomial(BigInt(1), k)); };
  auto C = [](long v) { return P(cpoly(v)); };
  return X(5) + C(6) * X(4) - (a + C(94)) * X(3) + (C(2) * a + b - C(950)) * X(2) +
         (C(104) * a - C(4) * b - C(2704)) * X(1) + C(192) * a - C(96) * b - C(1248);
}

inline ParamPoly displayed_g() {
  using P = ParamPoly;
  const P a = P::alpha(), b = P::beta();
  auto X = [](unsigned k) { return P(IntPoly::monomial(BigInt(1), k)); };
  auto C = [](long v) { return P(cpoly(v)); };
  return X(3) + C(10) * X(2) + (a + C(22)) * X(1) + C(2) * a - b + C(18);
}

namespace detail {

// Substitute beta = (c - a*alpha)/b (b != 0) into f: a polynomial in alpha.
inline RatPoly on_line(const Bivariate& f, const LinearEquation& l) {
  // beta = p0 + p1 alpha
  const BigRat p0 = BigRat(l.c) / BigRat(l.b), p1 = -BigRat(l.a) / BigRat(l.b);
  const RatPoly beta{p1, p0};
  const RatPoly alpha{BigRat(1), BigRat(0)};
  RatPoly r;
  for (const auto& [m, c] : f) r += pow(alpha, m.first) * pow(beta, m.second) * BigRat(c);
  return r;
}

// Exact division of f by a*alpha + b*beta - c (b != 0), as a polynomial in
// beta over Q[alpha]. Returns nullopt if the line does not divide f.
inline std::optional<Bivariate> divide_by_line(const Bivariate& f, const LinearEquation& l) {
  if (l.b == 0) return std::nullopt;
  unsigned top = 0;
  for (const auto& [m, c] : f) top = std::max(top, m.second);
  std::vector<RatPoly> by_beta(top + 1);
  for (const auto& [m, c] : f) by_beta[m.second] += RatPoly::monomial(BigRat(c), m.first);
  // f = b * (beta - r(alpha)) * q with r = (c - a alpha)/b.
  const RatPoly r{-BigRat(l.a) / BigRat(l.b), BigRat(l.c) / BigRat(l.b)};
  std::vector<RatPoly> q(top + 1);
  RatPoly carry;
  for (unsigned k = top + 1; k-- > 0;) {
    const RatPoly cur = by_beta[k] + carry;
    if (k == 0) {
      if (!cur.is_zero()) return std::nullopt;
      break;
    }
    q[k - 1] = cur;
    carry = r * cur;
  }
  std::map<ParamPoly::Monomial, BigRat> terms;
  BigInt den = 1;
  for (unsigned k = 0; k < top; ++k) {
    const auto& c = q[k].coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      const BigRat v = c[i] / BigRat(l.b);
      terms[{static_cast<unsigned>(c.size() - 1 - i), k}] = v;
      den = lcm(den, v.get_den());
    }
  }
  Bivariate out;
  for (const auto& [m, v] : terms) out[m] = BigRat(v * BigRat(den)).get_num();
  return out;
}

inline unsigned total_degree(const Bivariate& f) {
  unsigned d = 0;
  for (const auto& [m, c] : f) d = std::max(d, m.first + m.second);
  return d;
}

// Real roots of a nonzero polynomial of degree <= 2 over Q, or nullopt when
// they are irrational.
inline std::optional<std::vector<BigRat>> small_real_roots(const RatPoly& p) {
  if (p.degree() <= 0) return std::vector<BigRat>{};
  if (p.degree() == 1) return std::vector<BigRat>{-p[1] / p[0]};
  if (p.degree() > 2) return std::nullopt;
  const BigRat a = p[0], b = p[1], c = p[2];
  const BigRat disc = b * b - 4 * a * c;
  if (disc < 0) return std::vector<BigRat>{};
  const BigInt n = isqrt(disc.get_num()), d = isqrt(disc.get_den());
  if (n * n != disc.get_num() || d * d != disc.get_den()) return std::nullopt;
  const BigRat r = BigRat(n) / BigRat(d);
  if (r == 0) return std::vector<BigRat>{-b / (2 * a)};
  return std::vector<BigRat>{(-b - r) / (2 * a), (-b + r) / (2 * a)};
}

// Every real common zero of e0 and e1 lies on the line l. Strips all
// factors of l, then intersects what is left.
inline bool zeros_on_line(Bivariate e0, Bivariate e1, const LinearEquation& l) {
  for (Bivariate* e : {&e0, &e1}) {
    if (e->empty()) return false;
    while (auto q = divide_by_line(*e, l)) *e = *q;
  }
  if (total_degree(e0) == 0 || total_degree(e1) == 0) return true;
  if (total_degree(e0) > 1) std::swap(e0, e1);
  if (total_degree(e0) != 1) return false;
  const LinearEquation ql = to_linear(e0);
  if (ql.b == 0) return false;
  const RatPoly h = on_line(e1, ql);
  if (h.is_zero()) return false;
  const auto roots = small_real_roots(h);
  if (!roots) return false;
  for (const auto& r : *roots) {
    const BigRat beta = (BigRat(ql.c) - BigRat(ql.a) * r) / BigRat(ql.b);
    if (BigRat(l.a) * r + BigRat(l.b) * beta != BigRat(l.c)) return false;
  }
  return true;
}

}  // namespace detail

// Two non-adjacent outside vertices u, v with alpha = u^T v, beta = u^T X v.
inline PairSolution condition_II_pair(const SmallGraph& x = five_squares(),
                                      std::optional<std::uint32_t> anchor = std::nullopt) {
  using P = ParamPoly;
  PairSolution out;
  const GramEntry diag{P(cpoly(10)), P(cpoly(6)), P(cpoly(28))};
  // u^T X^2 v = 2 (sum_i 1^T u_i 1^T v_i - beta) = 40 - 2 beta on 5C4 with two
  // neighbours in each square.
  const GramEntry off{P::alpha(), P::beta(), P(cpoly(40)) - P(cpoly(2)) * P::beta()};
  out.determinant = param_determinant({{condition_II_entry(diag, true), condition_II_entry(off, false)},
                                       {condition_II_entry(off, false), condition_II_entry(diag, true)}});
  // det = f g (x+6)^2 (x-12)(x+8); the division throws if a factor is missing.
  out.fg = out.determinant.divide(xpoly(-6) * xpoly(-6) * xpoly(12) * xpoly(-8));
  out.factorization_matches = out.fg == displayed_f() * displayed_g();
  out.equations = {out.fg.taylor_coefficient(-6, 0), out.fg.taylor_coefficient(-6, 1)};
  // Integer common zeros in the admissible box.
  for (long a = 0; a <= 10; ++a)
    for (long b = 0; b <= 40; ++b) {
      bool zero = true;
      for (const auto& e : out.equations) zero = zero && evaluate_rat(e, a, b) == 0;
      if (zero) out.integer_solutions.push_back({a, b});
    }
  if (out.integer_solutions.size() >= 2) {
    const auto& [a0, b0] = out.integer_solutions.front();
    const auto& [a1, b1] = out.integer_solutions.back();
    LinearEquation l{b1 - b0, a0 - a1, 0};
    l.c = l.a * a0 + l.b * b0;
    l = normalized(l);
    bool collinear = l.b != 0;
    for (const auto& [a, b] : out.integer_solutions) collinear = collinear && l.a * a + l.b * b == l.c;
    if (collinear) {
      out.line = l;
      out.line_proved = detail::zeros_on_line(out.equations[0], out.equations[1], l);
    }
  }
  // Range of beta = (X u)^T v over valid v for a fixed valid anchor u.
  const auto all = neighborhood_enumerate();
  const std::uint32_t u = anchor ? *anchor : all.front().mask;
  out.beta_min = ~0u;
  for (const auto& v : all) {
    const auto [al, be] = pair_statistics(x, u, v.mask);
    (void)al;
    out.beta_min = std::min(out.beta_min, be);
    out.beta_max = std::max(out.beta_max, be);
  }
  if (out.line_proved)
    for (unsigned a = 0; a <= 10; ++a) {
      const BigInt rest = out.line.c - out.line.a * a;
      if (rest % out.line.b != 0) continue;
      const BigInt b = rest / out.line.b;
      if (b >= out.beta_min && b <= out.beta_max) out.pairs.push_back({a, static_cast<unsigned>(b.get_ui())});
    }
  return out;
}

// ---------------------------------------------------------------------------
// The graph G_u on B_u and its clique number.

inline bool allowed_pair(std::pair<unsigned, unsigned> st,
                         const std::vector<std::pair<unsigned, unsigned>>& allowed) {
  return std::find(allowed.begin(), allowed.end(), st) != allowed.end();
}

inline const std::vector<std::pair<unsigned, unsigned>>& default_allowed_pairs() {
  static const std::vector<std::pair<unsigned, unsigned>> p{{4, 14}, {5, 10}, {6, 6}};
  return p;
}

struct CompatibilityGraph {
  std::uint32_t anchor = 0;
  std::vector<std::uint32_t> vertices;
  std::vector<std::vector<std::uint64_t>> adj;

  std::size_t size() const { return vertices.size(); }
  bool edge(std::size_t i, std::size_t j) const { return adj[i][j / 64] >> (j % 64) & 1; }
  std::size_t degree(std::size_t i) const {
    std::size_t d = 0;
    for (auto w : adj[i]) d += static_cast<std::size_t>(std::popcount(w));
    return d;
  }
  std::size_t edges() const {
    std::size_t s = 0;
    for (std::size_t i = 0; i < size(); ++i) s += degree(i);
    return s / 2;
  }
};

inline CompatibilityGraph build_Gu(std::uint32_t anchor,
                                   const std::vector<std::pair<unsigned, unsigned>>& allowed = default_allowed_pairs()) {
  const SmallGraph x = five_squares();
  if (!valid_neighborhood(make_neighborhood(x, anchor))) throw std::invalid_argument("anchor is not a valid neighbourhood");
  CompatibilityGraph g;
  g.anchor = anchor;
  for (const auto& v : neighborhood_enumerate())
    if (allowed_pair(pair_statistics(x, anchor, v.mask), allowed)) g.vertices.push_back(v.mask);
  const std::size_t n = g.vertices.size(), words = (n + 63) / 64;
  g.adj.assign(n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (allowed_pair(pair_statistics(x, g.vertices[i], g.vertices[j]), allowed)) {
        g.adj[i][j / 64] |= std::uint64_t(1) << (j % 64);
        g.adj[j][i / 64] |= std::uint64_t(1) << (i % 64);
      }
  return g;
}

inline std::uint32_t default_anchor() { return neighborhood_enumerate().front().mask; }

// Degree and triangle count per vertex, sorted: an isomorphism invariant.
inline std::vector<std::pair<std::size_t, std::size_t>> invariant_vector(const CompatibilityGraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t words = g.adj.empty() ? 0 : g.adj[0].size();
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::size_t tri = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (!g.edge(i, j)) continue;
      for (std::size_t w = 0; w < words; ++w) tri += static_cast<std::size_t>(std::popcount(g.adj[i][w] & g.adj[j][w]));
    }
    out.push_back({g.degree(i), tri / 2});
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CliqueResult {
  unsigned size = 0;          // largest clique found
  bool exact = true;          // size is the clique number
  // With stop_at = k: true once a k-clique exists, false once none can.
  std::optional<bool> reaches;
  std::vector<std::size_t> witness;
  std::uint64_t nodes = 0;
};

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline bool any(const Bits& b) {
  for (auto w : b)
    if (w) return true;
  return false;
}

// Branch and bound with greedy colouring bounds (Tomita style).
class CliqueSearch {
 public:
  CliqueSearch(const std::vector<Bits>& adj, std::size_t n, std::optional<unsigned> stop_at)
      : adj_(adj), n_(n), words_((n + 63) / 64), stop_(stop_at) {}

  CliqueResult run() {
    Bits all(words_, 0);
    for (std::size_t v = 0; v < n_; ++v) all[v / 64] |= std::uint64_t(1) << (v % 64);
    // Refutation: only cliques of size stop_at are of interest.
    if (stop_ && *stop_ > 0) floor_ = *stop_ - 1;
    expand(all);
    if (stop_) {
      res_.reaches = stopped_;
      res_.exact = false;
    }
    return res_;
  }

 private:
  void colour(const Bits& p, std::vector<std::size_t>& order, std::vector<unsigned>& bound) {
    Bits uncoloured = p;
    unsigned c = 0;
    while (any(uncoloured)) {
      ++c;
      Bits q = uncoloured;
      while (any(q)) {
        std::size_t v = first(q);
        q[v / 64] &= ~(std::uint64_t(1) << (v % 64));
        uncoloured[v / 64] &= ~(std::uint64_t(1) << (v % 64));
        for (std::size_t w = 0; w < words_; ++w) q[w] &= ~adj_[v][w];
        order.push_back(v);
        bound.push_back(c);
      }
    }
  }

  static std::size_t first(const Bits& b) {
    for (std::size_t w = 0; w < b.size(); ++w)
      if (b[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(b[w]));
    return b.size() * 64;
  }

  void expand(Bits p) {
    if (stopped_) return;
    ++res_.nodes;
    std::vector<std::size_t> order;
    std::vector<unsigned> bound;
    colour(p, order, bound);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (cur_.size() + bound[i] <= std::max(res_.size, floor_)) return;
      const std::size_t v = order[i];
      cur_.push_back(v);
      Bits np(words_);
      for (std::size_t w = 0; w < words_; ++w) np[w] = p[w] & adj_[v][w];
      if (!any(np)) {
        if (cur_.size() > res_.size) {
          res_.size = static_cast<unsigned>(cur_.size());
          res_.witness = cur_;
          if (stop_ && res_.size >= *stop_) stopped_ = true;
        }
      } else {
        expand(np);
      }
      cur_.pop_back();
      if (stopped_) return;
      p[v / 64] &= ~(std::uint64_t(1) << (v % 64));
    }
  }

  const std::vector<Bits>& adj_;
  std::size_t n_, words_;
  std::optional<unsigned> stop_;
  unsigned floor_ = 0;
  bool stopped_ = false;
  std::vector<std::size_t> cur_;
  CliqueResult res_;
};

}  // namespace detail

// Exact clique number. With stop_at = k the search prunes everything that
// cannot reach k and ends at the first k-clique; `reaches` holds the answer.
inline CliqueResult max_clique(const std::vector<std::vector<std::uint64_t>>& adj, std::size_t n,
                               std::optional<unsigned> stop_at = std::nullopt) {
  detail::CliqueSearch s(adj, n, stop_at);
  return s.run();
}

inline CliqueResult max_clique(const CompatibilityGraph& g, std::optional<unsigned> stop_at = std::nullopt) {
  return max_clique(g.adj, g.size(), stop_at);
}

// ---------------------------------------------------------------------------
// G_u file: "anchor=<5 hex digits> n=<count>", then one row per vertex giving
// the adjacency bitset as a hex number (bit j = neighbour j).

inline std::string hex_row(const std::vector<std::uint64_t>& bits, std::size_t n) {
  const std::size_t digits = (n + 3) / 4;
  std::string s(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    unsigned nib = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const std::size_t j = d * 4 + b;
      if (j < n && (bits[j / 64] >> (j % 64) & 1)) nib |= 1u << b;
    }
    s[digits - 1 - d] = "0123456789abcdef"[nib];
  }
  return s;
}

inline std::string format_gu(const CompatibilityGraph& g) {
  std::ostringstream os;
  char anchor[8];
  std::snprintf(anchor, sizeof anchor, "%05x", g.anchor);
  os << "anchor=" << anchor << " n=" << g.size() << '\n';
  for (std::size_t i = 0; i < g.size(); ++i) os << hex_row(g.adj[i], g.size()) << '\n';
  return os.str();
}

inline CompatibilityGraph parse_gu(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) throw FormatError("empty G_u file");
  unsigned anchor = 0;
  std::size_t n = 0;
  if (std::sscanf(header.c_str(), "anchor=%5x n=%zu", &anchor, &n) != 2) throw FormatError("bad G_u header");
  CompatibilityGraph g;
  g.anchor = anchor;
  const std::size_t words = (n + 63) / 64, digits = (n + 3) / 4;
  g.adj.assign(n, std::vector<std::uint64_t>(words, 0));
  std::string row;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(is, row) || row.size() != digits) throw FormatError("bad G_u row " + std::to_string(i));
    for (std::size_t d = 0; d < digits; ++d) {
      const char ch = row[digits - 1 - d];
      const int nib = std::isdigit(static_cast<unsigned char>(ch)) ? ch - '0'
                      : (ch >= 'a' && ch <= 'f')                   ? ch - 'a' + 10
                                                                   : -1;
      if (nib < 0) throw FormatError("bad hex digit in G_u row");
      for (unsigned b = 0; b < 4; ++b)
        if (nib >> b & 1) {
          const std::size_t j = d * 4 + b;
          if (j >= n) throw FormatError("G_u row has bits beyond n");
          g.adj[i][j / 64] |= std::uint64_t(1) << (j % 64);
        }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (g.edge(i, i)) throw FormatError("G_u has a loop");
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.edge(i, j) != g.edge(j, i)) throw FormatError("G_u adjacency is not symmetric");
  }
  g.vertices.assign(n, 0);
  return g;
}

}  // namespace eigencert::decaen
