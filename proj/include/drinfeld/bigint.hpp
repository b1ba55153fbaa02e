#pragma once

// Exact integer / rational arithmetic. Backed by GMP; nothing outside this
// header touches mpz_t / mpq_t directly.

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace drinfeld {

using BigInt = mpz_class;
using BigRat = mpq_class;

// mpz_class lacks a long long constructor; on LP64 long carries 64 bits.
inline BigInt to_big(long long v) { return BigInt(static_cast<long>(v)); }

inline BigInt big_pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt big_binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Exact quotient; throws if the division has a remainder.
inline BigInt big_divexact(const BigInt& a, const BigInt& b) {
  if (b == 0) throw std::runtime_error("division by zero");
  BigInt q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) throw std::runtime_error("inexact division");
  return q;
}

// Natural log of a positive BigInt, computed from mantissa + exponent so it
// stays accurate far beyond double range.
inline double big_ln(const BigInt& a) {
  if (a <= 0) throw std::runtime_error("big_ln: argument must be positive");
  signed long exp2 = 0;
  double m = mpz_get_d_2exp(&exp2, a.get_mpz_t());
  return std::log(m) + static_cast<double>(exp2) * std::log(2.0);
}

inline double to_double(const BigRat& r) { return r.get_d(); }

// mpq_class(num, den) does not reduce; every rational built from parts goes
// through here so downstream arithmetic sees canonical values.
inline BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::runtime_error("division by zero");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}
inline BigRat make_rat(long long num, long long den) {
  return make_rat(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

inline std::string to_string(const BigInt& a) { return a.get_str(); }
inline std::string to_string(const BigRat& r) { return r.get_str(); }

}  // namespace drinfeld
