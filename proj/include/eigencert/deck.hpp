#pragma once

#include "eigencert/factored.hpp"
#include "eigencert/seidel.hpp"
#include "eigencert/simplex.hpp"
#include "eigencert/sturm.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eigencert {

struct DeckMember {
  IntPoly quotient;            // f = Min_p * member / p, degree e-1
  FactoredPolynomial member;   // (p/Min_p) * f
};

struct Deck {
  FactoredPolynomial base;
  int n = 0;
  int e = 0;
  IntPoly min_poly;
  std::vector<DeckMember> members;  // canonical order: by quotient coefficients
  IntPoly target;                   // Min_p * p' / p

  std::size_t size() const { return members.size(); }

  // Index of the member equal to m, if any.
  std::optional<std::size_t> find(const FactoredPolynomial& m) const {
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i].member == m) return i;
    return std::nullopt;
  }
};

class UnsaturatedClasses : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Min_p * p'/p = sum over factors q of mult(q) * q' * Min/q.
inline IntPoly reduced_derivative(const FactoredPolynomial& p) {
  const IntPoly min = p.min_poly();
  IntPoly out;
  for (const auto& f : p.factors())
    out += IntPoly::constant(BigInt(f.multiplicity)) * derivative(f.poly) * exact_divide(min, f.poly);
  return out;
}

// Irreducible factors used to write deck members in factored form.
inline std::vector<IntPoly> default_factor_basis(const FactoredPolynomial& p) {
  std::vector<IntPoly> basis;
  for (int r = -5; r <= 25; ++r) basis.push_back(IntPoly::linear(BigInt(r)));
  for (const auto& f : p.factors())
    if (f.poly.degree() > 1) basis.push_back(f.poly);
  return basis;
}

// Affine lattice {b0 + H z : z in Z^r} cut out by congruences on integer
// vectors.
struct AffineLattice {
  std::vector<BigInt> offset;              // b0
  std::vector<std::vector<BigInt>> basis;  // columns of H
  bool empty = false;

  explicit AffineLattice(std::size_t dim) : offset(dim, BigInt(0)) {
    for (std::size_t j = 0; j < dim; ++j) {
      std::vector<BigInt> col(dim, BigInt(0));
      col[j] = 1;
      basis.push_back(std::move(col));
    }
  }

  // Restrict to a.b == t (mod 2^m).
  void add_congruence(const std::vector<BigInt>& a, const BigInt& t, unsigned long m) {
    if (empty || m == 0) return;
    const BigInt mod = pow2(m);
    BigInt rhs = t;
    for (std::size_t i = 0; i < a.size(); ++i) rhs -= a[i] * offset[i];
    rhs = mod_pow2(rhs, m);
    std::vector<BigInt> g(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      BigInt s = 0;
      for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * basis[j][i];
      g[j] = mod_pow2(s, m);
    }
    // Unimodular column operations gathering gcd(g) into column 0.
    for (std::size_t j = 1; j < g.size(); ++j) {
      while (g[j] != 0) {
        BigInt q = floor_div(g[0], g[j]);
        g[0] -= q * g[j];
        for (std::size_t i = 0; i < offset.size(); ++i) basis[0][i] -= q * basis[j][i];
        std::swap(g[0], g[j]);
        std::swap(basis[0], basis[j]);
      }
    }
    if (g.empty() || g[0] == 0) {
      if (rhs != 0) empty = true;
      return;
    }
    if (g[0] < 0) {
      g[0] = -g[0];
      for (auto& v : basis[0]) v = -v;
    }
    // g0 z0 == rhs (mod 2^m), g0 = 2^v * odd
    const unsigned long v = std::min(valuation2(g[0]), m);
    if (!divisible_by_pow2(rhs, v)) {
      empty = true;
      return;
    }
    const unsigned long rest = m - v;
    const BigInt odd = g[0] >> v;
    BigInt inv;
    const BigInt modr = pow2(rest);
    if (rest > 0) {
      mpz_invert(inv.get_mpz_t(), odd.get_mpz_t(), modr.get_mpz_t());
    } else {
      inv = 0;
    }
    BigInt z0 = rest > 0 ? mod_pow2((rhs >> v) * inv, rest) : BigInt(0);
    for (std::size_t i = 0; i < offset.size(); ++i) {
      offset[i] += z0 * basis[0][i];
      basis[0][i] *= modr;
    }
    (void)mod;
  }

  // LLL-reduces the basis (delta = 3/4) under the inner product
  // sum_i w_i x_i y_i.
  void reduce(const std::vector<BigRat>& w) {
    const std::size_t r = basis.size();
    if (r < 2) return;
    std::vector<std::vector<BigRat>> mu(r, std::vector<BigRat>(r, BigRat(0)));
    std::vector<BigRat> bstar(r);
    std::vector<std::vector<BigRat>> gs(r);
    auto gram_schmidt = [&] {
      for (std::size_t i = 0; i < r; ++i) {
        gs[i].assign(basis[i].begin(), basis[i].end());
        for (std::size_t j = 0; j < i; ++j) {
          BigRat num = 0;
          for (std::size_t k = 0; k < basis[i].size(); ++k) num += w[k] * BigRat(basis[i][k]) * gs[j][k];
          mu[i][j] = num / bstar[j];
          for (std::size_t k = 0; k < gs[i].size(); ++k) gs[i][k] -= mu[i][j] * gs[j][k];
        }
        bstar[i] = 0;
        for (std::size_t k = 0; k < gs[i].size(); ++k) bstar[i] += w[k] * gs[i][k] * gs[i][k];
      }
    };
    gram_schmidt();
    std::size_t k = 1;
    while (k < r) {
      for (std::size_t j = k; j-- > 0;) {
        BigRat m = mu[k][j];
        BigInt q = floor(m + BigRat(1, 2));
        if (q != 0) {
          for (std::size_t i = 0; i < basis[k].size(); ++i) basis[k][i] -= q * basis[j][i];
          gram_schmidt();
        }
      }
      if (bstar[k] >= (BigRat(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
        ++k;
      } else {
        std::swap(basis[k], basis[k - 1]);
        gram_schmidt();
        k = std::max<std::size_t>(k - 1, 1);
      }
    }
  }

  std::vector<BigInt> point(const std::vector<BigInt>& z) const {
    std::vector<BigInt> b = offset;
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t i = 0; i < b.size(); ++i) b[i] += z[j] * basis[j][i];
    return b;
  }
};

struct DeckStats {
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  std::size_t interlacing = 0;  // leaves passing the interlacing test
};

namespace detail {

// coefficient vector (leading-first) padded on the left to length len
inline std::vector<BigInt> padded(const IntPoly& p, std::size_t len) {
  std::vector<BigInt> v(len, BigInt(0));
  const auto& c = p.coefficients();
  if (c.size() > len) throw std::logic_error("polynomial longer than requested padding");
  std::copy(c.begin(), c.end(), v.begin() + static_cast<long>(len - c.size()));
  return v;
}

class DeckBuilder {
 public:
  DeckBuilder(const FactoredPolynomial& p, const CongruenceClassSet* classes)
      : p_(p), classes_(classes) {
    n_ = p.degree();
    min_ = p.min_poly();
    e_ = min_.degree();
    reduced_ = p.reduced_poly();
    member_even_ = (n_ - 1) % 2 == 0;
    if (!member_even_) {
      if (!classes_ || !classes_->saturated || classes_->n != static_cast<unsigned>(n_ - 1))
        throw UnsaturatedClasses("deck needs the saturated congruence classes of order " +
                                 std::to_string(n_ - 1));
    }
    const IntPoly full = p.expand();
    if (full.degree() < 2 || full[1] != 0 || full[2] != -binomial(n_, 2))
      throw std::invalid_argument("base polynomial must have a_1 = 0 and a_2 = -C(n,2)");
  }

  Deck run(DeckStats* stats) {
    Deck d;
    d.base = p_;
    d.n = n_;
    d.e = e_;
    d.min_poly = min_;
    d.target = reduced_derivative(p_);

    // f = x^(e-1) + b1 x^(e-2) + ..., with b1, b2 fixed.
    fixed_.assign(e_, BigInt(0));
    fixed_[0] = 1;
    if (e_ >= 2) fixed_[1] = min_[1];
    if (e_ >= 3) fixed_[2] = min_[2] + n_ - 1;
    free_ = e_ >= 3 ? static_cast<std::size_t>(e_ - 3) : 0;

    AffineLattice lat(free_);
    add_parity(lat);
    if (!lat.empty) {
      auto rows = constraints();
      std::vector<BigRat> w(free_);
      for (std::size_t j = 0; j < free_; ++j) w[j] = BigRat(1) / BigRat(box_[3 + j] * box_[3 + j]);
      lat.reduce(w);
      // Branch on the longest reduced vector first: its coordinate has the
      // narrowest range.
      std::reverse(lat.basis.begin(), lat.basis.end());
      to_lattice(lat, rows);
      std::vector<BigInt> z;
      search(lat, z);
    }
    std::sort(found_.begin(), found_.end(),
              [](const DeckMember& a, const DeckMember& b) {
                return a.quotient.coefficients() < b.quotient.coefficients();
              });
    d.members = std::move(found_);
    if (stats) *stats = stats_;
    return d;
  }

 private:
  IntPoly quotient_from(const std::vector<BigInt>& b) const {
    std::vector<BigInt> c = fixed_;
    for (std::size_t i = 0; i < free_; ++i) c[3 + i] = b[i];
    return IntPoly(std::move(c));
  }

  // Coefficient k of member(x-1) must be divisible by 2^k (even order) or
  // 2^(k-1) (odd order). member(x-1) is affine in the free coefficients.
  void add_parity(AffineLattice& lat) {
    const IntPoly rs = taylor_shift(reduced_, BigInt(-1));
    const std::size_t len = static_cast<std::size_t>(n_);  // member degree n-1
    std::vector<BigInt> fixed_part = padded(rs * taylor_shift(IntPoly(fixed_), BigInt(-1)), len);
    std::vector<std::vector<BigInt>> cols;
    for (std::size_t j = 0; j < free_; ++j) {
      const std::size_t power = static_cast<std::size_t>(e_ - 1) - (3 + j);
      IntPoly mono = taylor_shift(IntPoly::monomial(BigInt(1), power), BigInt(-1));
      cols.push_back(padded(rs * mono, len));
    }
    for (std::size_t k = 1; k < len; ++k) {
      const unsigned long m = member_even_ ? k : k - 1;
      std::vector<BigInt> a(free_);
      for (std::size_t j = 0; j < free_; ++j) a[j] = cols[j][k];
      lat.add_congruence(a, -fixed_part[k], m);
      if (lat.empty) return;
    }
  }

  // Interlacing as linear inequalities on the free coefficients, relaxed
  // outward at irrational roots of Min_p; then mapped into lattice
  // coordinates.
  using Rows = std::vector<std::pair<std::vector<BigRat>, BigRat>>;  // g.b >= h

  Rows constraints() {
    Rows rows;
    auto roots = isolate_real_roots(min_);
    if (static_cast<int>(roots.size()) != e_) throw std::invalid_argument("Min_p must be totally real");
    // Isolation can leave an outer endpoint near the Cauchy bound.
    for (auto& iv : roots) iv = refine(min_, iv, BigRat(1, 4));
    BigInt bound = 0;
    for (const auto& iv : roots) {
      BigInt a = std::max(abs(floor(iv.lo)), abs(ceil(iv.hi))) + 1;
      if (a > bound) bound = a;
    }
    // Roots of f lie among those of Min_p, so |b_i| <= C(e-1, i) bound^i.
    box_.assign(e_, BigInt(0));
    for (int i = 0; i < e_; ++i) box_[i] = binomial(e_ - 1, i) * pow_int(bound, i);
    const auto& box = box_;

    int sigma = (e_ % 2 == 1) ? 1 : -1;  // sign of Min' at the smallest root
    for (std::size_t r = 0; r < roots.size(); ++r, sigma = -sigma) {
      RootInterval iv = roots[r];
      std::optional<BigRat> exact;
      for (const auto& f : p_.factors())
        if (f.poly.degree() == 1) {
          BigRat lam(-f.poly[1]);
          if (lam > iv.lo && lam < iv.hi) exact = lam;
        }
      BigRat at;
      BigRat slack = 0;
      if (exact) {
        at = *exact;
      } else {
        iv = refine(min_, iv, BigRat(1, BigInt(1) << 100));
        at = (iv.lo + iv.hi) / 2;
        const BigRat rad = (iv.hi - iv.lo) / 2;
        // |f(lambda) - f(at)| <= sum_j |f^(j)(at)/j!| rad^j, with each
        // Taylor coefficient bounded over the box.
        BigRat am = abs(at) + 1;
        BigRat radp = rad;
        for (int j = 1; j < e_; ++j, radp *= rad) {
          BigRat tj = 0;
          for (int i = 0; i + j <= e_ - 1; ++i)
            tj += BigRat(box[i] * binomial(e_ - 1 - i, j)) * pow_rat(am, e_ - 1 - i - j);
          slack += tj * radp;
        }
      }
      // sigma * f(at) >= -slack
      std::vector<BigRat> g(free_);
      BigRat h = -slack;
      BigRat apow = 1;
      for (int i = e_ - 1; i >= 0; --i, apow *= at) {
        BigRat term = sigma * apow;
        if (i >= 3)
          g[i - 3] = term;
        else
          h -= term * fixed_[i];
      }
      rows.push_back({g, h});
    }
    for (std::size_t j = 0; j < free_; ++j) {
      std::vector<BigRat> g(free_, BigRat(0));
      g[j] = 1;
      rows.push_back({g, BigRat(-box[3 + j])});
      g[j] = -1;
      rows.push_back({g, BigRat(-box[3 + j])});
    }
    return rows;
  }

  void to_lattice(const AffineLattice& lat, const Rows& rows) {
    const std::size_t r = lat.basis.size();
    zrows_.clear();
    for (const auto& [g, h] : rows) {
      std::vector<BigRat> gz(r, BigRat(0));
      BigRat hz = h;
      for (std::size_t i = 0; i < free_; ++i) {
        hz -= g[i] * lat.offset[i];
        for (std::size_t j = 0; j < r; ++j) gz[j] += g[i] * lat.basis[j][i];
      }
      zrows_.push_back({std::move(gz), std::move(hz)});
    }
  }

  // Depth-first over lattice coordinates; each coordinate range comes from an
  // LP over the remaining ones with the prefix substituted.
  void search(const AffineLattice& lat, std::vector<BigInt>& z) {
    ++stats_.nodes;
    const std::size_t t = z.size();
    const std::size_t r = lat.basis.size();
    if (t == r) {
      leaf(lat.point(z));
      return;
    }
    Polyhedron poly(r - t);
    for (const auto& [g, h] : zrows_) {
      BigRat hh = h;
      for (std::size_t j = 0; j < t; ++j) hh -= g[j] * z[j];
      poly.add_ge(std::vector<BigRat>(g.begin() + static_cast<long>(t), g.end()), hh);
    }
    std::vector<BigRat> obj(r - t, BigRat(0));
    obj[0] = 1;
    LpResult lo = poly.minimize(obj);
    if (lo.status == LpStatus::infeasible) return;
    if (lo.status != LpStatus::optimal) throw std::logic_error("deck search region is unbounded");
    LpResult hi = poly.maximize(obj);
    const BigInt from = ceil(lo.value);
    const BigInt to = floor(hi.value);
    for (BigInt v = from; v <= to; ++v) {
      z.push_back(v);
      search(lat, z);
      z.pop_back();
    }
  }

  void leaf(const std::vector<BigInt>& b) {
    ++stats_.leaves;
    IntPoly f = quotient_from(b);
    if (e_ >= 2 && !interlaces(f, min_)) return;
    ++stats_.interlacing;
    IntPoly member = reduced_ * f;
    if (member[1] != 0 || member[2] != -binomial(n_ - 1, 2)) return;
    const IntPoly shifted = taylor_shift(member, BigInt(-1));
    if (!type2_check(shifted, member_even_ ? Type2Mode::type2 : Type2Mode::weak)) return;
    if (!member_even_ && !classes_->contains(member)) return;
    found_.push_back({f, factor_over(member, default_factor_basis(p_))});
  }

  FactoredPolynomial p_;
  const CongruenceClassSet* classes_;
  int n_ = 0;
  int e_ = 0;
  IntPoly min_;
  IntPoly reduced_;
  bool member_even_ = false;
  std::vector<BigInt> fixed_;
  std::size_t free_ = 0;
  std::vector<DeckMember> found_;
  std::vector<BigInt> box_;
  Rows zrows_;
  DeckStats stats_;
};

}  // namespace detail

// Deck(p): every interlacing characteristic polynomial of p. Members of odd
// degree must also lie in a class of `classes`.
inline Deck build_deck(const FactoredPolynomial& p, const CongruenceClassSet* classes,
                       DeckStats* stats = nullptr) {
  detail::DeckBuilder b(p, classes);
  return b.run(stats);
}

}  // namespace eigencert
