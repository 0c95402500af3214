#pragma once

#include "eigencert/factored.hpp"
#include "eigencert/polynomial.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace eigencert {

// Row-major dense square matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0)) : r_(rows), c_(cols), d_(rows * cols, fill) {}

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

  bool is_square() const { return r_ == c_; }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = i + 1; j < c_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
  }

 private:
  std::size_t r_ = 0;
  std::size_t c_ = 0;
  std::vector<T> d_;
};

// Division-free characteristic polynomial det(xI - A) by Berkowitz's
// algorithm; valid in any commutative ring (including Z/2^32 via unsigned
// wraparound). Returns leading-first coefficients of length n+1.
template <class Ring, class Entry>
std::vector<Ring> berkowitz(const Matrix<Entry>& a) {
  if (!a.is_square()) throw std::invalid_argument("characteristic polynomial needs a square matrix");
  const std::size_t n = a.rows();
  std::vector<Ring> p{Ring(1)};
  std::vector<Ring> v, w, t;
  for (std::size_t r = 0; r < n; ++r) {
    // Leading block is r x r; new column C = a(0..r-1, r), row R = a(r, 0..r-1).
    t.assign(r + 2, Ring(0));
    t[0] = Ring(1);
    t[1] = Ring(0) - Ring(a(r, r));
    v.resize(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = Ring(a(i, r));
    for (std::size_t k = 2; k < r + 2; ++k) {
      Ring dot(0);
      for (std::size_t i = 0; i < r; ++i) dot += Ring(a(r, i)) * v[i];
      t[k] = Ring(0) - dot;
      if (k + 1 < r + 2) {
        w.assign(r, Ring(0));
        for (std::size_t i = 0; i < r; ++i) {
          Ring s(0);
          for (std::size_t j = 0; j < r; ++j) s += Ring(a(i, j)) * v[j];
          w[i] = s;
        }
        v.swap(w);
      }
    }
    std::vector<Ring> q(r + 2, Ring(0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) q[i] += t[i - j] * p[j];
    p.swap(q);
  }
  return p;
}

// Symmetric matrix with zero diagonal and off-diagonal entries +-1, stored as
// the packed strict upper triangle (bit set means -1).
class SeidelMatrix {
 public:
  SeidelMatrix() = default;
  explicit SeidelMatrix(std::size_t n) : n_(n), bits_((pairs(n) + 63) / 64, 0) {}

  static SeidelMatrix from_matrix(const Matrix<int>& m) {
    if (!m.is_square()) throw std::invalid_argument("Seidel matrix must be square");
    SeidelMatrix s(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m(i, i) != 0) throw std::invalid_argument("Seidel matrix needs a zero diagonal");
      for (std::size_t j = i + 1; j < m.rows(); ++j) {
        if (m(i, j) != m(j, i)) throw std::invalid_argument("Seidel matrix must be symmetric");
        if (m(i, j) != 1 && m(i, j) != -1) throw std::invalid_argument("off-diagonal entries must be +-1");
        s.set(i, j, m(i, j));
      }
    }
    return s;
  }

  // Uniform independent signs on the upper triangle.
  template <class Gen>
  static SeidelMatrix random(std::size_t n, Gen& gen) {
    SeidelMatrix s(n);
    for (auto& w : s.bits_) w = gen();
    const std::size_t tail = pairs(n) % 64;
    if (tail && !s.bits_.empty()) s.bits_.back() &= (std::uint64_t(1) << tail) - 1;
    return s;
  }

  std::size_t order() const { return n_; }

  int operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0;
    if (i > j) std::swap(i, j);
    const std::size_t k = index(i, j);
    return ((bits_[k / 64] >> (k % 64)) & 1u) ? -1 : 1;
  }

  void set(std::size_t i, std::size_t j, int value) {
    if (i == j) throw std::invalid_argument("diagonal of a Seidel matrix is zero");
    if (i > j) std::swap(i, j);
    const std::size_t k = index(i, j);
    const std::uint64_t mask = std::uint64_t(1) << (k % 64);
    if (value < 0)
      bits_[k / 64] |= mask;
    else
      bits_[k / 64] &= ~mask;
  }

  // Conjugation by diag(signs).
  SeidelMatrix switched(const std::vector<int>& signs) const {
    SeidelMatrix s(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) s.set(i, j, (*this)(i, j) * signs[i] * signs[j]);
    return s;
  }

  Matrix<int> dense() const {
    Matrix<int> m(n_, n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

 private:
  static std::size_t pairs(std::size_t n) { return n * (n - 1) / 2; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * n_ - i * (i + 1) / 2 + (j - i - 1); }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline IntPoly charpoly(const Matrix<int>& m) {
  if (!m.is_square()) throw std::invalid_argument("characteristic polynomial needs a square matrix");
  return IntPoly(berkowitz<BigInt>(m));
}

inline IntPoly charpoly(const Matrix<BigInt>& m) {
  if (!m.is_square()) throw std::invalid_argument("characteristic polynomial needs a square matrix");
  return IntPoly(berkowitz<BigInt>(m));
}

inline IntPoly charpoly(const SeidelMatrix& s) { return charpoly(s.dense()); }

using Residues = std::vector<std::uint32_t>;

// Characteristic polynomial coefficients reduced into [0, 2^e), leading-first.
inline Residues charpoly_mod(const SeidelMatrix& s, unsigned e) {
  if (e == 0 || e > 31) throw std::invalid_argument("modulus exponent must be in 1..31");
  const Matrix<int> m = s.dense();
  Matrix<std::uint32_t> w(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = static_cast<std::uint32_t>(m(i, j));
  std::vector<std::uint32_t> c = berkowitz<std::uint32_t>(w);
  const std::uint32_t mask = (std::uint32_t(1) << e) - 1;
  for (auto& v : c) v &= mask;
  return c;
}

inline Residues reduce_residues(const IntPoly& p, unsigned e) {
  Residues r;
  r.reserve(p.size());
  for (const auto& v : p.coefficients()) r.push_back(static_cast<std::uint32_t>(mod_pow2(v, e).get_ui()));
  return r;
}

// Upper bound on the number of classes mod 2^e for odd order.
inline std::uint64_t congruence_class_bound(unsigned e) {
  if (e < 2) return 2;
  const std::uint64_t k = e - 2;
  return std::uint64_t(1) << (k * (k - 1) / 2 + 1);
}

struct CongruenceClassSet {
  unsigned n = 0;
  unsigned e = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  bool saturated = false;
  std::set<Residues> classes;

  bool contains(const Residues& r) const { return classes.count(r) != 0; }
  bool contains(const IntPoly& p) const { return contains(reduce_residues(p, e)); }
  std::size_t size() const { return classes.size(); }
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The generator for sample i depends only on (seed, i), so the result does
// not depend on the number of threads.
inline std::mt19937_64 sample_generator(std::uint64_t seed, std::uint64_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  return std::mt19937_64(seq);
}

// Samples uniform random Seidel matrices of order n until the residues of
// their characteristic polynomials fill the known bound, or the budget runs
// out. Samples are consumed in index order, so `samples` is the length of the
// shortest prefix that reaches the final set.
inline CongruenceClassSet build_congruence_classes(unsigned n, unsigned e, std::uint64_t budget,
                                                   std::uint64_t seed, unsigned jobs = 1) {
  if (n % 2 == 0) throw std::invalid_argument("congruence classes are built for odd order only");
  CongruenceClassSet out;
  out.n = n;
  out.e = e;
  out.seed = seed;
  const std::uint64_t bound = congruence_class_bound(e);
  if (jobs == 0) jobs = 1;
  const std::uint64_t batch = std::max<std::uint64_t>(64, 16 * jobs);
  std::vector<Residues> buf;
  std::uint64_t next = 0;
  while (next < budget && out.classes.size() < bound) {
    const std::uint64_t count = std::min(batch, budget - next);
    buf.assign(count, Residues{});
    std::atomic<std::uint64_t> cursor{0};
    auto work = [&] {
      for (std::uint64_t k; (k = cursor.fetch_add(1)) < count;) {
        auto gen = sample_generator(seed, next + k);
        buf[k] = charpoly_mod(SeidelMatrix::random(n, gen), e);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (std::uint64_t k = 0; k < count; ++k) {
      out.classes.insert(std::move(buf[k]));
      if (out.classes.size() > bound) throw std::logic_error("congruence class bound exceeded");
      if (out.classes.size() == bound) {
        next += k + 1;
        out.samples = next;
        out.saturated = true;
        return out;
      }
    }
    next += count;
  }
  out.samples = next;
  out.saturated = out.classes.size() == bound;
  return out;
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

inline std::string format_classes(const CongruenceClassSet& s) {
  std::ostringstream os;
  os << "n=" << s.n << " e=" << s.e << " seed=" << s.seed << " count=" << s.classes.size() << "\n";
  for (const auto& r : s.classes) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i];
    os << "\n";
  }
  return os.str();
}

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline CongruenceClassSet parse_classes(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) throw FormatError("empty class file");
  CongruenceClassSet s;
  std::size_t count = 0;
  unsigned long long seed = 0;
  if (std::sscanf(header.c_str(), "n=%u e=%u seed=%llu count=%zu", &s.n, &s.e, &seed, &count) != 4)
    throw FormatError("bad class file header: " + header);
  s.seed = seed;
  if (s.e == 0 || s.e > 31) throw FormatError("bad modulus exponent");
  const std::uint32_t mod = std::uint32_t(1) << s.e;
  std::string line;
  Residues prev;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Residues r;
    unsigned long v;
    while (ls >> v) {
      if (v >= mod) throw FormatError("residue out of range");
      r.push_back(static_cast<std::uint32_t>(v));
    }
    if (r.size() != s.n + 1) throw FormatError("residue vector has wrong length");
    if (!prev.empty() && !(prev < r)) throw FormatError("class file is not strictly sorted");
    prev = r;
    s.classes.insert(std::move(r));
  }
  if (s.classes.size() != count) throw FormatError("class count does not match header");
  s.saturated = s.n % 2 == 1 && count == congruence_class_bound(s.e);
  return s;
}

// The class file plus a sidecar "<path>.sha256" holding the digest and the
// sample count, since the header format has no room for them.
inline void write_classes(const std::string& path, const CongruenceClassSet& s) {
  const std::string body = format_classes(s);
  std::ofstream(path, std::ios::binary) << body;
  std::ofstream(path + ".sha256", std::ios::binary) << sha256_hex(body) << " samples=" << s.samples << "\n";
  std::ifstream check(path, std::ios::binary);
  if (!check) throw std::runtime_error("cannot write " + path);
}

// Returns nothing when the file is missing or its digest does not match.
inline std::optional<CongruenceClassSet> read_classes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ifstream side(path + ".sha256");
  if (!in || !side) return std::nullopt;
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::string digest, extra;
  side >> digest >> extra;
  if (digest != sha256_hex(body)) return std::nullopt;
  try {
    auto s = parse_classes(body);
    if (extra.rfind("samples=", 0) == 0) s.samples = std::stoull(extra.substr(8));
    return s;
  } catch (const FormatError&) {
    return std::nullopt;
  }
}

// Spectra of S = J - I - 2A for a k-regular graph A on n vertices: the
// all-ones eigenvalue k of A goes to n-1-2k and every other eigenvalue mu to
// -1-2mu. Spectra are factored polynomials over linear factors.
enum class BridgeDirection { seidel_to_graph, graph_to_seidel };

inline FactoredPolynomial graph_bridge(const FactoredPolynomial& spectrum, unsigned n, long k,
                                       BridgeDirection dir) {
  if (spectrum.degree() != static_cast<int>(n)) throw std::invalid_argument("multiplicities must sum to n");
  std::map<BigInt, unsigned> eig;
  for (const auto& f : spectrum.factors()) {
    if (f.poly.degree() != 1) throw std::invalid_argument("spectral bridge needs integral eigenvalues");
    eig[-f.poly[1]] += f.multiplicity;
  }
  const BigInt seidel_ones = BigInt(n) - 1 - 2 * BigInt(k);
  const BigInt graph_ones = k;
  std::vector<FactoredPolynomial::Factor> out;
  auto take_ones = [&](const BigInt& from, const BigInt& to) {
    auto it = eig.find(from);
    if (it == eig.end()) throw std::invalid_argument("all-ones eigenvalue missing from the spectrum");
    if (--it->second == 0) eig.erase(it);
    out.push_back({IntPoly::linear(to), 1});
  };
  if (dir == BridgeDirection::seidel_to_graph) {
    take_ones(seidel_ones, graph_ones);
    for (auto& [theta, m] : eig) {
      BigInt t = -1 - theta;
      if (!divisible_by_pow2(t, 1)) throw std::invalid_argument("Seidel eigenvalue has the wrong parity");
      out.push_back({IntPoly::linear(t / 2), m});
    }
  } else {
    take_ones(graph_ones, seidel_ones);
    for (auto& [mu, m] : eig) out.push_back({IntPoly::linear(-1 - 2 * mu), m});
  }
  FactoredPolynomial r(std::move(out));
  if (r.degree() != static_cast<int>(n)) throw std::logic_error("multiplicity bookkeeping failed");
  return r;
}

struct TraceVerdict {
  BigInt forced;     // sum of multiplicity * eigenvalue^2
  BigInt available;  // m(m-1) = tr T^2 for a Seidel matrix of order m
  bool contradiction;
};

inline TraceVerdict trace_contradiction(unsigned m, const std::vector<std::pair<BigInt, unsigned>>& forced) {
  unsigned total = 0;
  BigInt s = 0;
  for (const auto& [lambda, mult] : forced) {
    total += mult;
    s += BigInt(mult) * lambda * lambda;
  }
  if (total > m) throw std::invalid_argument("forced multiplicities exceed the order");
  BigInt avail = BigInt(m) * (m - 1);
  return {s, avail, s > avail};
}

}  // namespace eigencert
