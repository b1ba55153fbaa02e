#pragma once

// The polynomial ring A = F_q[T]: dense coefficient vectors, lowest degree
// first, never any trailing zero. The empty vector is the zero polynomial
// (degree -1 here, standing in for -infinity). Norm |a| = q^deg(a).
//
// Text format used by every CLI flag naming an ideal generator: monomials
// "c*T^k" joined by "+", with coefficient 1 and exponents 0,1 omissible,
// e.g. "T^3+T+1", "2*T^2+1". Coefficients are element indices 0..q-1.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/fq.hpp"

namespace drinfeld {

class FqPoly {
 public:
  FqPoly() : F_(&FqField::get(2)) {}  // zero polynomial over F_2
  explicit FqPoly(const FqField& f) : F_(&f) {}
  FqPoly(const FqField& f, std::vector<uint8_t> coeffs) : F_(&f), c_(std::move(coeffs)) {
    trim();
  }
  static FqPoly zero(const FqField& f) { return FqPoly(f); }
  static FqPoly one(const FqField& f) { return FqPoly(f, {1}); }
  static FqPoly constant(const FqField& f, uint8_t c) { return FqPoly(f, {c}); }
  // T^k
  static FqPoly t_power(const FqField& f, int k) {
    std::vector<uint8_t> c(k + 1, 0);
    c[k] = 1;
    return FqPoly(f, std::move(c));
  }

  const FqField& field() const { return *F_; }
  int q() const { return F_->q(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  uint8_t coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
  }
  const std::vector<uint8_t>& coeffs() const { return c_; }
  uint8_t leading() const {
    if (c_.empty()) throw std::runtime_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  bool operator==(const FqPoly& o) const { return c_ == o.c_; }
  bool operator!=(const FqPoly& o) const { return c_ != o.c_; }

  FqPoly operator+(const FqPoly& o) const {
    std::vector<uint8_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F_->add(coeff(i), o.coeff(i));
    return FqPoly(*F_, std::move(r));
  }
  FqPoly operator-(const FqPoly& o) const {
    std::vector<uint8_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F_->sub(coeff(i), o.coeff(i));
    return FqPoly(*F_, std::move(r));
  }
  FqPoly operator*(const FqPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(*F_);
    std::vector<uint8_t> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] = F_->add(r[i + j], F_->mul(c_[i], o.c_[j]));
    }
    return FqPoly(*F_, std::move(r));
  }
  FqPoly scaled(uint8_t s) const {
    std::vector<uint8_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = F_->mul(c_[i], s);
    return FqPoly(*F_, std::move(r));
  }
  FqPoly shifted(int k) const {  // multiply by T^k
    if (is_zero()) return *this;
    std::vector<uint8_t> r(c_.size() + k, 0);
    std::copy(c_.begin(), c_.end(), r.begin() + k);
    return FqPoly(*F_, std::move(r));
  }
  FqPoly monic() const {
    if (is_zero()) return *this;
    return scaled(F_->inv(c_.back()));
  }

  // Packed integer value sum c_i q^i. Total order used for deterministic
  // enumeration: ascending value = lexicographic on coefficients, highest
  // degree most significant.
  uint64_t packed() const {
    uint64_t v = 0;
    for (int i = degree(); i >= 0; --i) v = v * static_cast<uint64_t>(q()) + c_[i];
    return v;
  }
  static FqPoly from_packed(const FqField& f, uint64_t v) {
    std::vector<uint8_t> c;
    while (v > 0) {
      c.push_back(static_cast<uint8_t>(v % f.q()));
      v /= f.q();
    }
    return FqPoly(f, std::move(c));
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += "+";
      if (i == 0) {
        s += std::to_string(static_cast<int>(c_[i]));
      } else {
        if (c_[i] != 1) s += std::to_string(static_cast<int>(c_[i])) + "*";
        s += (i == 1) ? "T" : "T^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  const FqField* F_;
  std::vector<uint8_t> c_;
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
};

// a = b*quotient + remainder with deg(remainder) < deg(b).
inline std::pair<FqPoly, FqPoly> poly_divmod(const FqPoly& a, const FqPoly& b) {
  if (b.is_zero()) throw std::runtime_error("division by zero polynomial");
  const FqField& F = a.field();
  if (a.degree() < b.degree()) return {FqPoly::zero(F), a};
  std::vector<uint8_t> rem(a.coeffs());
  std::vector<uint8_t> quo(a.degree() - b.degree() + 1, 0);
  uint8_t lead_inv = F.inv(b.leading());
  for (int k = a.degree(); k >= b.degree(); --k) {
    uint8_t c = rem[k];
    if (c == 0) continue;
    uint8_t f = F.mul(c, lead_inv);
    quo[k - b.degree()] = f;
    for (int j = 0; j <= b.degree(); ++j)
      rem[k - b.degree() + j] = F.sub(rem[k - b.degree() + j], F.mul(f, b.coeff(j)));
  }
  return {FqPoly(F, std::move(quo)), FqPoly(F, std::move(rem))};
}

inline FqPoly poly_mod(const FqPoly& a, const FqPoly& b) { return poly_divmod(a, b).second; }

// Monic gcd; gcd(0,0) = 0.
inline FqPoly poly_gcd(FqPoly a, FqPoly b) {
  while (!b.is_zero()) {
    FqPoly r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return a.is_zero() ? a : a.monic();
}

// g = gcd(a,b) monic, with g = s*a + t*b.
inline void poly_ext_gcd(const FqPoly& a, const FqPoly& b, FqPoly& g, FqPoly& s, FqPoly& t) {
  const FqField& F = a.field();
  FqPoly r0 = a, r1 = b;
  FqPoly s0 = FqPoly::one(F), s1 = FqPoly::zero(F);
  FqPoly t0 = FqPoly::zero(F), t1 = FqPoly::one(F);
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    FqPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = r1; r1 = r;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  if (r0.is_zero()) {
    g = r0; s = s0; t = t0;
    return;
  }
  uint8_t li = F.inv(r0.leading());
  g = r0.scaled(li);
  s = s0.scaled(li);
  t = t0.scaled(li);
}

// All monic polynomials of exact degree d, ascending packed order.
inline std::vector<FqPoly> enumerate_monic(const FqField& F, int d) {
  std::vector<FqPoly> out;
  uint64_t count = 1;
  for (int i = 0; i < d; ++i) count *= F.q();
  out.reserve(count);
  uint64_t lead = 1;
  for (int i = 0; i < d; ++i) lead *= F.q();
  for (uint64_t low = 0; low < count; ++low) out.push_back(FqPoly::from_packed(F, lead + low));
  return out;
}

namespace detail {
inline const std::vector<FqPoly>& monic_primes_cached(const FqField& F, int d);
}

// f monic of degree >= 1 is irreducible iff it has no monic prime divisor of
// degree <= deg(f)/2.
inline bool is_irreducible(const FqPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const FqField& F = f.field();
  for (int e = 1; 2 * e <= f.degree(); ++e)
    for (const FqPoly& p : detail::monic_primes_cached(F, e))
      if (poly_mod(f, p).is_zero()) return false;
  return true;
}

// All monic irreducibles of exact degree d, ascending packed order.
inline std::vector<FqPoly> enumerate_monic_primes(int q, int d) {
  if (!FqField::supported(q)) throw std::runtime_error("unsupported q: " + std::to_string(q));
  if (d < 1) throw std::runtime_error("enumerate_monic_primes: degree must be >= 1");
  const FqField& F = FqField::get(q);
  return detail::monic_primes_cached(F, d);
}

namespace detail {
// Fills the cache bottom-up so every lookup needs only one lock acquisition;
// map nodes are stable, so returned references stay valid.
inline const std::vector<FqPoly>& monic_primes_cached(const FqField& F, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<FqPoly>> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (int e = 1; e <= d; ++e) {
    auto key = std::make_pair(F.q(), e);
    if (cache.count(key)) continue;
    std::vector<FqPoly> primes;
    if (e == 1) {
      primes = enumerate_monic(F, 1);
    } else {
      for (const FqPoly& f : enumerate_monic(F, e)) {
        bool irred = true;
        for (int g = 1; 2 * g <= e && irred; ++g)
          for (const FqPoly& p : cache.at({F.q(), g}))
            if (poly_mod(f, p).is_zero()) {
              irred = false;
              break;
            }
        if (irred) primes.push_back(f);
      }
    }
    cache.emplace(key, std::move(primes));
  }
  return cache.at({F.q(), d});
}
}  // namespace detail

// Monic prime-power factorization (trial division; desk-scale degrees).
inline std::vector<std::pair<FqPoly, int>> factor_monic(FqPoly f) {
  if (!f.is_monic()) throw std::runtime_error("factor_monic: input must be monic");
  const FqField& F = f.field();
  std::vector<std::pair<FqPoly, int>> out;
  for (int e = 1; e <= f.degree(); ++e) {
    if (2 * e > f.degree() && f.degree() > 0) break;
    for (const FqPoly& p : detail::monic_primes_cached(F, e)) {
      if (f.degree() < p.degree()) break;
      int mult = 0;
      while (true) {
        auto [q, r] = poly_divmod(f, p);
        if (!r.is_zero()) break;
        f = q;
        ++mult;
      }
      if (mult > 0) out.emplace_back(p, mult);
    }
  }
  if (f.degree() >= 1) out.emplace_back(f, 1);  // remaining factor is prime
  return out;
}

// ---- text parsing -----------------------------------------------------------

inline FqPoly parse_poly(const FqField& F, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::runtime_error("polynomial parse error: empty input");

  FqPoly result = FqPoly::zero(F);
  size_t pos = 0;
  while (pos < s.size()) {
    size_t end = s.find('+', pos);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = (end == std::string::npos) ? s.size() : end + 1;
    if (term.empty()) throw std::runtime_error("polynomial parse error: empty term");

    int coeff = 1, exp = 0;
    size_t i = 0;
    bool saw_star = false;
    if (std::isdigit(static_cast<unsigned char>(term[0]))) {
      size_t j = 0;
      coeff = 0;
      while (j < term.size() && std::isdigit(static_cast<unsigned char>(term[j]))) {
        coeff = coeff * 10 + (term[j] - '0');
        if (coeff >= 256) throw std::runtime_error("polynomial parse error: coefficient too large");
        ++j;
      }
      i = j;
      if (i < term.size() && term[i] == '*') {
        ++i;
        saw_star = true;
      }
    }
    if (saw_star && (i >= term.size() || term[i] != 'T'))
      throw std::runtime_error("polynomial parse error: expected T after * in '" + term + "'");
    if (i < term.size()) {
      if (term[i] != 'T') throw std::runtime_error("polynomial parse error: expected T in '" + term + "'");
      ++i;
      exp = 1;
      if (i < term.size()) {
        if (term[i] != '^') throw std::runtime_error("polynomial parse error: expected ^ in '" + term + "'");
        ++i;
        if (i >= term.size() || !std::isdigit(static_cast<unsigned char>(term[i])))
          throw std::runtime_error("polynomial parse error: bad exponent in '" + term + "'");
        exp = 0;
        while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) {
          exp = exp * 10 + (term[i] - '0');
          if (exp > 64) throw std::runtime_error("polynomial parse error: exponent too large");
          ++i;
        }
      }
    }
    if (i != term.size()) throw std::runtime_error("polynomial parse error: trailing characters in '" + term + "'");
    if (coeff >= F.q())
      throw std::runtime_error("polynomial parse error: coefficient " + std::to_string(coeff) +
                               " out of range for q=" + std::to_string(F.q()));
    if (coeff != 0)
      result = result + FqPoly::t_power(F, exp).scaled(static_cast<uint8_t>(coeff));
  }
  return result;
}

}  // namespace drinfeld
