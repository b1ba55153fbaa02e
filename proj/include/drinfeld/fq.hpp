#pragma once

// Finite fields F_q for q in {2,3,4,5,7,8,9,11,13,16}.
//
// Elements are integer indices 0..q-1. For prime q the index is the residue
// mod p. For prime powers the index encodes the coefficient vector of the
// element in the polynomial basis of F_p[x]/(conway(x)), base-p digits with
// digit i the coefficient of x^i. Full add/mul/inv tables are built once per
// q, so all arithmetic is table lookups and exhaustive axiom checks are cheap.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace drinfeld {

class FqField {
 public:
  static const FqField& get(int q);
  static bool supported(int q) {
    for (int s : kSupportedQ)
      if (s == q) return true;
    return false;
  }
  static constexpr std::array<int, 10> kSupportedQ = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

  int q() const { return q_; }
  int characteristic() const { return p_; }
  uint8_t primitive() const { return primitive_; }

  uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q_ + b]; }
  uint8_t sub(uint8_t a, uint8_t b) const { return add_[a * q_ + neg_[b]]; }
  uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q_ + b]; }
  uint8_t neg(uint8_t a) const { return neg_[a]; }
  uint8_t inv(uint8_t a) const {
    if (a == 0) throw std::runtime_error("division by zero in F_q");
    return inv_[a];
  }
  uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }

 private:
  explicit FqField(int q);

  int q_, p_, ext_deg_;
  uint8_t primitive_ = 0;
  std::vector<uint8_t> add_, mul_, neg_, inv_;
};

inline FqField::FqField(int q) : q_(q) {
  if (!supported(q)) throw std::runtime_error("unsupported q: " + std::to_string(q));
  int p = 2;
  while (q % p != 0) ++p;
  p_ = p;
  ext_deg_ = 0;
  for (int t = q; t > 1; t /= p) ++ext_deg_;

  // Conway-style defining polynomials, coefficients lowest degree first.
  std::vector<int> conway;
  if (q == 4) conway = {1, 1, 1};           // x^2 + x + 1 over F_2
  else if (q == 8) conway = {1, 1, 0, 1};   // x^3 + x + 1 over F_2
  else if (q == 9) conway = {2, 2, 1};      // x^2 + 2x + 2 over F_3
  else if (q == 16) conway = {1, 1, 0, 0, 1};  // x^4 + x + 1 over F_2

  auto digits = [&](int v) {
    std::vector<int> d(ext_deg_, 0);
    for (int i = 0; i < ext_deg_; ++i) {
      d[i] = v % p_;
      v /= p_;
    }
    return d;
  };
  auto undigits = [&](const std::vector<int>& d) {
    int v = 0;
    for (int i = ext_deg_ - 1; i >= 0; --i) v = v * p_ + d[i];
    return v;
  };

  add_.assign(q * q, 0);
  mul_.assign(q * q, 0);
  neg_.assign(q, 0);
  inv_.assign(q, 0);

  for (int a = 0; a < q; ++a) {
    auto da = digits(a);
    for (int b = 0; b < q; ++b) {
      auto db = digits(b);
      std::vector<int> ds(ext_deg_, 0);
      for (int i = 0; i < ext_deg_; ++i) ds[i] = (da[i] + db[i]) % p_;
      add_[a * q + b] = static_cast<uint8_t>(undigits(ds));

      // polynomial product reduced mod the defining polynomial
      std::vector<int> prod(2 * ext_deg_ - 1, 0);
      for (int i = 0; i < ext_deg_; ++i)
        for (int j = 0; j < ext_deg_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      for (int k = static_cast<int>(prod.size()) - 1; k >= ext_deg_; --k) {
        int c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (int i = 0; i < ext_deg_; ++i) {
          int idx = k - ext_deg_ + i;
          prod[idx] = ((prod[idx] - c * conway[i]) % p_ + p_) % p_;
        }
      }
      std::vector<int> dm(prod.begin(), prod.begin() + ext_deg_);
      mul_[a * q + b] = static_cast<uint8_t>(undigits(dm));
    }
    std::vector<int> dn(ext_deg_, 0);
    for (int i = 0; i < ext_deg_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = static_cast<uint8_t>(undigits(dn));
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = static_cast<uint8_t>(b);

  // smallest generator of the multiplicative group
  for (int g = 1; g < q; ++g) {
    int x = g, order = 1;
    while (x != 1) {
      x = mul_[x * q + g];
      ++order;
    }
    if (order == q - 1) {
      primitive_ = static_cast<uint8_t>(g);
      break;
    }
  }
}

inline const FqField& FqField::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<FqField>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(q);
  if (it == registry.end())
    it = registry.emplace(q, std::unique_ptr<FqField>(new FqField(q))).first;
  return *it->second;
}

// An element of F_q: an index plus the field it lives in. Immutable value type.
struct FqElem {
  const FqField* F;
  uint8_t v;

  FqElem(const FqField& f, uint8_t val) : F(&f), v(val) {}
  int q() const { return F->q(); }

  FqElem operator+(FqElem o) const { return {*F, F->add(v, o.v)}; }
  FqElem operator-(FqElem o) const { return {*F, F->sub(v, o.v)}; }
  FqElem operator*(FqElem o) const { return {*F, F->mul(v, o.v)}; }
  FqElem operator/(FqElem o) const { return {*F, F->div(v, o.v)}; }
  FqElem operator-() const { return {*F, F->neg(v)}; }
  bool operator==(FqElem o) const { return v == o.v; }
  bool operator!=(FqElem o) const { return v != o.v; }
  bool is_zero() const { return v == 0; }
  FqElem inv() const { return {*F, F->inv(v)}; }
};

}  // namespace drinfeld
