#pragma once

// Exact integer linear algebra: fraction-free determinants (Bareiss), Smith
// normal form, and exact characteristic polynomials. Characteristic
// polynomials are computed deterministically by CRT over fixed 62-bit primes
// with a Hessenberg reduction per prime; coefficients are reconstructed
// against a rigorous bound |c_k| <= C(n,k) * rho^k with rho a norm bound on
// the spectral radius. Faddeev-LeVerrier over big integers is kept for small
// matrices and as a cross-check.

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "drinfeld/bigint.hpp"

namespace drinfeld {

struct BigMat {
  int rows = 0, cols = 0;
  std::vector<BigInt> a;

  BigMat() = default;
  BigMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, BigInt(0)) {}
  BigInt& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const BigInt& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

// ---- Bareiss fraction-free elimination -------------------------------------

inline BigInt bareiss_det(BigMat m) {
  if (m.rows != m.cols) throw std::runtime_error("determinant of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    int pivot = -1;
    for (int i = k; i < n; ++i)
      if (m.at(i, k) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != k) {
      for (int j = k; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        BigInt t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = t;
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

// ---- Smith normal form ------------------------------------------------------

// Nonzero elementary divisors d_1 | d_2 | ... of an integer matrix.
inline std::vector<BigInt> smith_divisors(BigMat m) {
  int R = m.rows, C = m.cols;
  int t = 0;
  int limit = std::min(R, C);
  while (t < limit) {
    // smallest-magnitude nonzero pivot in the remaining block
    int pi = -1, pj = -1;
    for (int i = t; i < R; ++i)
      for (int j = t; j < C; ++j)
        if (m.at(i, j) != 0 &&
            (pi < 0 || mpz_cmpabs(m.at(i, j).get_mpz_t(), m.at(pi, pj).get_mpz_t()) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    for (int j = 0; j < C; ++j) std::swap(m.at(t, j), m.at(pi, j));
    for (int i = 0; i < R; ++i) std::swap(m.at(i, t), m.at(i, pj));

    bool clean = true;
    for (int i = t + 1; i < R; ++i) {
      if (m.at(i, t) == 0) continue;
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), m.at(i, t).get_mpz_t(), m.at(t, t).get_mpz_t());
      for (int j = t; j < C; ++j) m.at(i, j) -= q * m.at(t, j);
      if (m.at(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < C; ++j) {
      if (m.at(t, j) == 0) continue;
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), m.at(t, j).get_mpz_t(), m.at(t, t).get_mpz_t());
      for (int i = t; i < R; ++i) m.at(i, j) -= q * m.at(i, t);
      if (m.at(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // remainders left; re-pivot on a smaller entry

    // divisibility: pivot must divide every remaining entry
    bool fixed = false;
    for (int i = t + 1; i < R && !fixed; ++i)
      for (int j = t + 1; j < C && !fixed; ++j)
        if (m.at(i, j) % m.at(t, t) != 0) {
          for (int jj = t; jj < C; ++jj) m.at(t, jj) += m.at(i, jj);
          fixed = true;
        }
    if (fixed) continue;
    ++t;
  }
  std::vector<BigInt> div;
  for (int k = 0; k < t; ++k) {
    BigInt d = m.at(k, k);
    if (d < 0) d = -d;
    div.push_back(d);
  }
  return div;
}

// ---- deterministic prime pool for CRT ---------------------------------------

namespace detail {

inline uint64_t mulmod_u64(uint64_t x, uint64_t y, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
}

inline uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, p);
    b = mulmod_u64(b, b, p);
    e >>= 1;
  }
  return r;
}

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t s : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % s == 0) return n == s;
  }
  uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Fixed descending sequence of primes below 2^62.
inline std::vector<uint64_t> crt_primes(size_t count) {
  static std::mutex mu;
  static std::vector<uint64_t> pool;
  static uint64_t next_candidate = (uint64_t(1) << 62) - 1;
  std::lock_guard<std::mutex> lock(mu);
  while (pool.size() < count) {
    while (!is_prime_u64(next_candidate)) next_candidate -= 2;
    pool.push_back(next_candidate);
    next_candidate -= 2;
  }
  return std::vector<uint64_t>(pool.begin(), pool.begin() + count);
}

inline uint64_t mod_of_bigint(const BigInt& v, uint64_t p) {
  BigInt r;
  mpz_mod_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r.get_ui();
}

// char poly of A mod p, monic, coefficients c[0..n] with c[n] = 1
inline std::vector<uint64_t> charpoly_mod_p(const BigMat& A, uint64_t p) {
  int n = A.rows;
  std::vector<uint64_t> h(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h[static_cast<size_t>(i) * n + j] = mod_of_bigint(A.at(i, j), p);
  auto H = [&](int i, int j) -> uint64_t& { return h[static_cast<size_t>(i) * n + j]; };

  // similarity reduction to upper Hessenberg form
  for (int k = 0; k + 2 < n; ++k) {
    int pivot = -1;
    for (int i = k + 1; i < n; ++i)
      if (H(i, k) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != k + 1) {
      for (int j = 0; j < n; ++j) std::swap(H(k + 1, j), H(pivot, j));
      for (int i = 0; i < n; ++i) std::swap(H(i, k + 1), H(i, pivot));
    }
    uint64_t inv = powmod_u64(H(k + 1, k), p - 2, p);
    for (int i = k + 2; i < n; ++i) {
      if (H(i, k) == 0) continue;
      uint64_t f = mulmod_u64(H(i, k), inv, p);
      // row_i -= f * row_{k+1};  col_{k+1} += f * col_i
      for (int j = 0; j < n; ++j) {
        uint64_t sub = mulmod_u64(f, H(k + 1, j), p);
        H(i, j) = (H(i, j) + p - sub) % p;
      }
      for (int i2 = 0; i2 < n; ++i2) {
        uint64_t add = mulmod_u64(f, H(i2, i), p);
        H(i2, k + 1) = (H(i2, k + 1) + add) % p;
      }
    }
  }

  // p_k = charpoly of the leading k x k block of the Hessenberg matrix:
  // p_k(x) = (x - H[k-1][k-1]) p_{k-1}(x)
  //          - sum_{m=1}^{k-1} H[k-1-m][k-1] (prod_{l=k-m}^{k-1} H[l][l-1]) p_{k-1-m}(x)
  std::vector<std::vector<uint64_t>> P(n + 1);
  P[0] = {1};
  for (int k = 1; k <= n; ++k) {
    std::vector<uint64_t> pk(k + 1, 0);
    uint64_t diag = H(k - 1, k - 1);
    for (int t = 0; t < k; ++t) {
      pk[t + 1] = (pk[t + 1] + P[k - 1][t]) % p;
      uint64_t sub = mulmod_u64(diag, P[k - 1][t], p);
      pk[t] = (pk[t] + p - sub) % p;
    }
    uint64_t subprod = 1;
    for (int m = 1; m <= k - 1; ++m) {
      subprod = mulmod_u64(subprod, H(k - m, k - m - 1), p);
      if (subprod == 0) break;
      uint64_t coeff = mulmod_u64(subprod, H(k - 1 - m, k - 1), p);
      if (coeff == 0) continue;
      for (int t = 0; t <= k - 1 - m; ++t) {
        uint64_t sub = mulmod_u64(coeff, P[k - 1 - m][t], p);
        pk[t] = (pk[t] + p - sub) % p;
      }
    }
    P[k] = std::move(pk);
  }
  return P[n];
}

}  // namespace detail

// Exact characteristic polynomial det(xI - A) of an integer matrix, as
// coefficients c[0..n] with c[n] = 1.
inline std::vector<BigInt> charpoly_exact(const BigMat& A) {
  if (A.rows != A.cols) throw std::runtime_error("charpoly of non-square matrix");
  int n = A.rows;
  if (n == 0) return {BigInt(1)};

  // rho bounds the spectral radius; |c_k| = |e_{n-k}(lambda)| <= C(n, n-k) rho^{n-k}
  BigInt rho = 0;
  for (int i = 0; i < n; ++i) {
    BigInt row = 0;
    for (int j = 0; j < n; ++j) {
      BigInt v = A.at(i, j);
      row += v < 0 ? -v : v;
    }
    if (row > rho) rho = row;
  }
  BigInt bound = 1;
  if (rho > 0) {
    BigInt rp = 1;
    for (int k = 1; k <= n; ++k) {
      rp *= rho;
      BigInt b = big_binomial(n, k) * rp;
      if (b > bound) bound = b;
    }
  }

  BigInt need = 2 * bound + 1, have = 1;
  std::vector<uint64_t> primes;
  while (have < need) {
    primes = detail::crt_primes(primes.size() + 1);
    have *= BigInt(detail::crt_primes(primes.size()).back());
  }
  primes = detail::crt_primes(primes.size());

  std::vector<std::vector<uint64_t>> residues;
  residues.reserve(primes.size());
  for (uint64_t p : primes) residues.push_back(detail::charpoly_mod_p(A, p));

  // incremental CRT with symmetric lift
  std::vector<BigInt> coeff(n + 1, BigInt(0));
  BigInt modulus = 1;
  for (size_t pi = 0; pi < primes.size(); ++pi) {
    uint64_t p = primes[pi];
    if (pi == 0) {
      for (int k = 0; k <= n; ++k) coeff[k] = BigInt(residues[pi][k]);
      modulus = BigInt(p);
    } else {
      BigInt minv;
      BigInt pm(p);
      if (mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pm.get_mpz_t()) == 0)
        throw std::runtime_error("internal: CRT moduli not coprime");
      uint64_t inv = minv.get_ui();
      for (int k = 0; k <= n; ++k) {
        uint64_t cur = detail::mod_of_bigint(coeff[k], p);
        uint64_t target = residues[pi][k];
        uint64_t delta = detail::mulmod_u64((target + p - cur) % p, inv, p);
        coeff[k] += modulus * BigInt(delta);
      }
      modulus *= p;
    }
  }
  BigInt half = modulus / 2;
  for (BigInt& c : coeff)
    if (c > half) c -= modulus;
  return coeff;
}

// Faddeev-LeVerrier over big integers; O(n^4) multiplications, used for small
// matrices and as an independent oracle for charpoly_exact.
inline std::vector<BigInt> charpoly_faddeev(const BigMat& A) {
  if (A.rows != A.cols) throw std::runtime_error("charpoly of non-square matrix");
  int n = A.rows;
  std::vector<BigInt> c(n + 1, BigInt(0));
  c[n] = 1;
  if (n == 0) return c;
  BigMat M(n, n);  // M_0 = 0
  BigInt ck = 1;   // coefficient produced at the previous step
  for (int k = 1; k <= n; ++k) {
    // M_k = A * (M_{k-1} + c_{n-k+1} I)
    BigMat T = M;
    for (int i = 0; i < n; ++i) T.at(i, i) += ck;
    BigMat next(n, n);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        const BigInt& av = A.at(i, l);
        if (av == 0) continue;
        for (int j = 0; j < n; ++j) next.at(i, j) += av * T.at(l, j);
      }
    M = next;
    BigInt tr = 0;
    for (int i = 0; i < n; ++i) tr += M.at(i, i);
    ck = big_divexact(-tr, BigInt(k));
    c[n - k] = ck;
  }
  return c;
}

}  // namespace drinfeld
