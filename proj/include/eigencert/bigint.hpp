#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eigencert {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const BigInt& x) { return sgn(x); }
inline int sign(const BigRat& x) { return sgn(x); }
inline int sign(long x) { return (x > 0) - (x < 0); }

inline bool is_integer(const BigRat& x) { return x.get_den() == 1; }

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt pow_int(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigRat pow_rat(const BigRat& base, unsigned long e) {
  BigRat r(pow_int(base.get_num(), e), pow_int(base.get_den(), e));
  return r;
}

inline BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// 2-adic valuation; zero has infinite valuation, reported as ULONG_MAX.
inline unsigned long valuation2(const BigInt& x) {
  if (x == 0) return static_cast<unsigned long>(-1);
  return mpz_scan1(x.get_mpz_t(), 0);
}

inline bool divisible_by_pow2(const BigInt& x, unsigned long e) {
  return mpz_divisible_2exp_p(x.get_mpz_t(), e) != 0;
}

// Non-negative residue of x modulo 2^e.
inline BigInt mod_pow2(const BigInt& x, unsigned long e) {
  BigInt r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), x.get_mpz_t(), e);
  return r;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline BigInt floor(const BigRat& x) { return floor_div(x.get_num(), x.get_den()); }

inline BigInt ceil(const BigRat& x) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline bool is_perfect_square(const BigInt& x) {
  return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

inline BigInt isqrt(const BigInt& x) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

inline std::string to_string(const BigInt& x) { return x.get_str(); }

inline std::string to_string(const BigRat& x) { return x.get_str(); }

inline BigInt parse_bigint(const std::string& s) {
  BigInt r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("not an integer: " + s);
  return r;
}

inline BigRat parse_bigrat(const std::string& s) {
  BigRat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
  r.canonicalize();
  return r;
}

}  // namespace eigencert
