#pragma once

#include "eigencert/bigint.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace eigencert {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<BigRat> x;
  BigRat value;
  // When infeasible: y with y.A_j <= 0 for every column and y.b > 0.
  std::vector<BigRat> farkas;
};

using RatMatrix = std::vector<std::vector<BigRat>>;

namespace detail {

// Dense two-phase tableau with Bland's rule; exact throughout.
class Tableau {
 public:
  Tableau(const RatMatrix& a, const std::vector<BigRat>& b) : m_(a.size()), n_(a.empty() ? 0 : a[0].size()) {
    width_ = n_ + m_ + 1;
    t_.assign(m_, std::vector<BigRat>(width_, BigRat(0)));
    flip_.assign(m_, 1);
    for (std::size_t i = 0; i < m_; ++i) {
      if (a[i].size() != n_) throw std::invalid_argument("ragged constraint matrix");
      flip_[i] = b[i] < 0 ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = flip_[i] * a[i][j];
      t_[i][n_ + i] = 1;
      t_[i][width_ - 1] = flip_[i] * b[i];
    }
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  // Phase 1: minimize the sum of artificials. Returns the Farkas vector when
  // the system is infeasible.
  std::optional<std::vector<BigRat>> phase1() {
    std::vector<BigRat> cost(width_ - 1, BigRat(0));
    for (std::size_t i = 0; i < m_; ++i) cost[n_ + i] = 1;
    set_objective(cost);
    run(width_ - 1);
    if (z_[width_ - 1] != 0) {
      // y_i = c_art - reduced cost of artificial i, then undo row flips.
      std::vector<BigRat> y(m_);
      for (std::size_t i = 0; i < m_; ++i) y[i] = (1 - z_[n_ + i]) * flip_[i];
      return y;
    }
    drive_out_artificials();
    return std::nullopt;
  }

  // Phase 2 over the original columns; false when unbounded.
  bool phase2(const std::vector<BigRat>& c) {
    std::vector<BigRat> cost(width_ - 1, BigRat(0));
    for (std::size_t j = 0; j < n_; ++j) cost[j] = c[j];
    set_objective(cost);
    return run(n_);
  }

  std::vector<BigRat> solution() const {
    std::vector<BigRat> x(n_, BigRat(0));
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (basis_[i] < n_) x[basis_[i]] = t_[i][width_ - 1];
    return x;
  }

  BigRat objective() const { return -z_[width_ - 1]; }

 private:
  void set_objective(const std::vector<BigRat>& cost) {
    cost_ = cost;
    z_.assign(width_, BigRat(0));
    for (std::size_t j = 0; j + 1 < width_; ++j) z_[j] = cost[j];
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const BigRat& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < width_; ++j) z_[j] -= cb * t_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const BigRat inv = 1 / t_[r][c];
    for (auto& v : t_[r]) v *= inv;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const BigRat f = t_[i][c];
      for (std::size_t j = 0; j < width_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    if (z_[c] != 0) {
      const BigRat f = z_[c];
      for (std::size_t j = 0; j < width_; ++j)
        if (t_[r][j] != 0) z_[j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Columns >= limit may not enter. Returns false when unbounded.
  bool run(std::size_t limit) {
    while (true) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (z_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == limit) return true;
      std::optional<std::size_t> leave;
      BigRat best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (t_[i][enter] <= 0) continue;
        BigRat ratio = t_[i][width_ - 1] / t_[i][enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < t_.size();) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < n_; ++j)
        if (t_[i][j] != 0) {
          col = j;
          break;
        }
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        // Redundant row.
        t_.erase(t_.begin() + static_cast<long>(i));
        basis_.erase(basis_.begin() + static_cast<long>(i));
      }
    }
  }

  std::size_t m_, n_, width_;
  RatMatrix t_;
  std::vector<int> flip_;
  std::vector<std::size_t> basis_;
  std::vector<BigRat> z_;
  std::vector<BigRat> cost_;
};

}  // namespace detail

// minimize c.x subject to A x = b, x >= 0.
inline LpResult solve_standard_form(const RatMatrix& a, const std::vector<BigRat>& b,
                                    const std::vector<BigRat>& c) {
  if (a.size() != b.size()) throw std::invalid_argument("row count mismatch");
  const std::size_t n = a.empty() ? c.size() : a[0].size();
  if (c.size() != n) throw std::invalid_argument("objective length mismatch");
  LpResult res;
  if (a.empty()) {
    // No constraints: optimum 0 at x = 0 unless some cost is negative.
    for (const auto& v : c)
      if (v < 0) {
        res.status = LpStatus::unbounded;
        return res;
      }
    res.status = LpStatus::optimal;
    res.x.assign(n, BigRat(0));
    res.value = 0;
    return res;
  }
  detail::Tableau t(a, b);
  if (auto y = t.phase1()) {
    res.status = LpStatus::infeasible;
    res.farkas = std::move(*y);
    return res;
  }
  if (!t.phase2(c)) {
    res.status = LpStatus::unbounded;
    return res;
  }
  res.status = LpStatus::optimal;
  res.x = t.solution();
  res.value = t.objective();
  return res;
}

// {x free : G x <= h}; optimizes linear objectives over it.
class Polyhedron {
 public:
  explicit Polyhedron(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }

  void add_le(std::vector<BigRat> g, BigRat h) {
    if (g.size() != dim_) throw std::invalid_argument("constraint has wrong dimension");
    g_.push_back(std::move(g));
    h_.push_back(std::move(h));
  }
  void add_ge(std::vector<BigRat> g, BigRat h) {
    for (auto& v : g) v = -v;
    add_le(std::move(g), -h);
  }

  LpResult minimize(const std::vector<BigRat>& obj) const {
    // x = xp - xn, one slack per row.
    const std::size_t rows = g_.size();
    const std::size_t cols = 2 * dim_ + rows;
    RatMatrix a(rows, std::vector<BigRat>(cols, BigRat(0)));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        a[i][j] = g_[i][j];
        a[i][dim_ + j] = -g_[i][j];
      }
      a[i][2 * dim_ + i] = 1;
    }
    std::vector<BigRat> c(cols, BigRat(0));
    for (std::size_t j = 0; j < dim_; ++j) {
      c[j] = obj[j];
      c[dim_ + j] = -obj[j];
    }
    LpResult r = solve_standard_form(a, h_, c);
    if (r.status == LpStatus::optimal) {
      std::vector<BigRat> x(dim_);
      for (std::size_t j = 0; j < dim_; ++j) x[j] = r.x[j] - r.x[dim_ + j];
      r.x = std::move(x);
    }
    return r;
  }

  LpResult maximize(std::vector<BigRat> obj) const {
    for (auto& v : obj) v = -v;
    LpResult r = minimize(obj);
    r.value = -r.value;
    return r;
  }

  bool feasible() const { return minimize(std::vector<BigRat>(dim_, BigRat(0))).status != LpStatus::infeasible; }

 private:
  std::size_t dim_;
  RatMatrix g_;
  std::vector<BigRat> h_;
};

}  // namespace eigencert
