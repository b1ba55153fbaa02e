#pragma once

// Residue rings A/n and the projective line P^1(A/n).
//
// A point is an unimodular pair (u : v), i.e. the ideal generated by u, v and
// n is all of A/n. Canonical form: scale so the last unit coordinate equals 1
// ((u:v) -> (u/v : 1) when v is a unit, else (1 : v/u) when u is a unit); if
// neither coordinate is a unit (possible only when n has at least two prime
// factors) take the representative minimizing the packed coefficient vector
// of (u, v) over all unit scalings.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "drinfeld/fq_poly.hpp"

namespace drinfeld {

struct Modulus {
  FqPoly n;
  int d;             // deg n
  bool prime;
  std::vector<std::pair<FqPoly, int>> factors;
  uint64_t size;     // |A/n| = q^d

  std::vector<uint8_t> unit_mask;    // indexed by packed residue
  std::vector<uint32_t> inv_packed;  // packed inverse for units
  std::vector<FqPoly> units;         // populated only for multi-factor n

  static constexpr uint64_t kTableLimit = uint64_t(1) << 22;

  explicit Modulus(FqPoly modulus) : n(std::move(modulus)), d(n.degree()) {
    if (!n.is_monic() || d < 1) throw std::runtime_error("modulus must be monic of degree >= 1");
    const FqField& F = n.field();
    size = 1;
    for (int i = 0; i < d; ++i) {
      size *= F.q();
      if (size > kTableLimit) throw std::runtime_error("modulus too large for residue tables");
    }
    factors = factor_monic(n);
    prime = factors.size() == 1 && factors[0].second == 1;

    unit_mask.assign(size, 0);
    inv_packed.assign(size, 0);
    for (uint64_t r = 0; r < size; ++r) {
      FqPoly f = FqPoly::from_packed(F, r);
      FqPoly g, s, t;
      poly_ext_gcd(f, n, g, s, t);
      if (g.is_one()) {
        unit_mask[r] = 1;
        inv_packed[r] = static_cast<uint32_t>(poly_mod(s, n).packed());
      }
    }
    if (factors.size() > 1)
      for (uint64_t r = 0; r < size; ++r)
        if (unit_mask[r]) units.push_back(FqPoly::from_packed(F, r));
  }

  const FqField& field() const { return n.field(); }
  bool is_unit(const FqPoly& reduced) const { return unit_mask[reduced.packed()] != 0; }
  FqPoly inverse(const FqPoly& reduced) const {
    uint64_t r = reduced.packed();
    if (!unit_mask[r]) throw std::runtime_error("inverse of non-unit residue");
    return FqPoly::from_packed(field(), inv_packed[r]);
  }
  FqPoly reduce(const FqPoly& f) const { return poly_mod(f, n); }
};

class ResidueClass {
 public:
  ResidueClass(const Modulus& m, const FqPoly& r) : m_(&m), rep_(m.reduce(r)) {}
  const FqPoly& rep() const { return rep_; }
  const Modulus& modulus() const { return *m_; }
  uint64_t packed() const { return rep_.packed(); }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_unit() const { return m_->is_unit(rep_); }

  ResidueClass operator+(const ResidueClass& o) const { return {*m_, rep_ + o.rep_}; }
  ResidueClass operator-(const ResidueClass& o) const { return {*m_, rep_ - o.rep_}; }
  ResidueClass operator*(const ResidueClass& o) const { return {*m_, rep_ * o.rep_}; }
  ResidueClass inverse() const { return {*m_, m_->inverse(rep_)}; }
  bool operator==(const ResidueClass& o) const { return rep_ == o.rep_; }
  bool operator!=(const ResidueClass& o) const { return rep_ != o.rep_; }

 private:
  const Modulus* m_;
  FqPoly rep_;
};

struct P1Point {
  ResidueClass u, v;
  uint64_t key(uint64_t size) const { return u.packed() * size + v.packed(); }
};

inline bool p1_unimodular(const Modulus& m, const FqPoly& u, const FqPoly& v) {
  return poly_gcd(poly_gcd(u, v), m.n).is_one();
}

// Canonical representative of (u : v); throws on non-unimodular input.
inline std::pair<FqPoly, FqPoly> p1_canonicalize(const Modulus& m, const FqPoly& u_in,
                                                 const FqPoly& v_in) {
  const FqField& F = m.field();
  FqPoly u = m.reduce(u_in), v = m.reduce(v_in);
  if (!p1_unimodular(m, u, v)) throw std::runtime_error("pair is not unimodular");
  if (m.is_unit(v)) {
    FqPoly s = m.inverse(v);
    return {m.reduce(u * s), FqPoly::one(F)};
  }
  if (m.is_unit(u)) {
    FqPoly s = m.inverse(u);
    return {FqPoly::one(F), m.reduce(v * s)};
  }
  // Mixed non-unit coordinates: n has >= 2 prime factors, scan unit scalings.
  bool have = false;
  std::pair<uint64_t, uint64_t> best{0, 0};
  std::pair<FqPoly, FqPoly> best_pair{u, v};
  for (const FqPoly& s : m.units) {
    FqPoly su = m.reduce(u * s), sv = m.reduce(v * s);
    std::pair<uint64_t, uint64_t> k{su.packed(), sv.packed()};
    if (!have || k < best) {
      have = true;
      best = k;
      best_pair = {su, sv};
    }
  }
  return best_pair;
}

// The full projective line, enumerated once per modulus: every unimodular
// pair class exactly once, canonical, sorted by packed key.
class P1Space {
 public:
  explicit P1Space(FqPoly modulus) : mod_(std::make_shared<Modulus>(std::move(modulus))) {
    enumerate();
  }

  const Modulus& modulus() const { return *mod_; }
  const FqField& field() const { return mod_->field(); }
  size_t size() const { return points_.size(); }
  const P1Point& point(uint32_t i) const { return points_[i]; }

  uint32_t canonical_index(const FqPoly& u, const FqPoly& v) const {
    auto [cu, cv] = p1_canonicalize(*mod_, u, v);
    auto it = index_.find(cu.packed() * mod_->size + cv.packed());
    if (it == index_.end()) throw std::runtime_error("point not in enumeration");
    return it->second;
  }

  uint32_t infinity_index() const { return inf_index_; }  // the point (1 : 0)

 private:
  std::shared_ptr<Modulus> mod_;
  std::vector<P1Point> points_;
  std::unordered_map<uint64_t, uint32_t> index_;
  uint32_t inf_index_ = 0;

  void enumerate() {
    const Modulus& m = *mod_;
    const FqField& F = m.field();

    // local points of P^1(A/p^e): (u : 1) for all u, (1 : p*w) for small w
    struct LocalSet {
      FqPoly modulus;
      std::vector<std::pair<FqPoly, FqPoly>> pts;
    };
    std::vector<LocalSet> locals;
    for (auto& [p, e] : m.factors) {
      LocalSet ls;
      ls.modulus = FqPoly::one(F);
      for (int i = 0; i < e; ++i) ls.modulus = ls.modulus * p;
      int dloc = ls.modulus.degree();
      uint64_t cnt = 1;
      for (int i = 0; i < dloc; ++i) cnt *= F.q();
      for (uint64_t r = 0; r < cnt; ++r)
        ls.pts.push_back({FqPoly::from_packed(F, r), FqPoly::one(F)});
      uint64_t cnt2 = 1;
      for (int i = 0; i < dloc - p.degree(); ++i) cnt2 *= F.q();
      for (uint64_t r = 0; r < cnt2; ++r)
        ls.pts.push_back({FqPoly::one(F), poly_mod(p * FqPoly::from_packed(F, r), ls.modulus)});
      locals.push_back(std::move(ls));
    }

    // CRT basis: b_i = 1 mod m_i, 0 mod m_j (j != i)
    std::vector<FqPoly> crt_basis;
    for (size_t i = 0; i < locals.size(); ++i) {
      FqPoly mi = locals[i].modulus;
      auto [rest, rem] = poly_divmod(m.n, mi);
      if (!rem.is_zero()) throw std::runtime_error("internal: bad factorization");
      FqPoly g, s, t;
      poly_ext_gcd(rest, mi, g, s, t);  // s*rest + t*mi = 1
      if (!g.is_one()) throw std::runtime_error("internal: factors not coprime");
      crt_basis.push_back(m.reduce(rest * s));
    }

    std::vector<size_t> idx(locals.size(), 0);
    while (true) {
      FqPoly u = FqPoly::zero(F), v = FqPoly::zero(F);
      for (size_t i = 0; i < locals.size(); ++i) {
        const auto& [lu, lv] = locals[i].pts[idx[i]];
        u = u + crt_basis[i] * lu;
        v = v + crt_basis[i] * lv;
      }
      auto [cu, cv] = p1_canonicalize(m, u, v);
      points_.push_back({ResidueClass(m, cu), ResidueClass(m, cv)});

      size_t k = 0;
      while (k < locals.size() && ++idx[k] == locals[k].pts.size()) idx[k++] = 0;
      if (k == locals.size()) break;
    }

    std::sort(points_.begin(), points_.end(), [&](const P1Point& a, const P1Point& b) {
      return a.key(m.size) < b.key(m.size);
    });
    for (uint32_t i = 0; i < points_.size(); ++i) {
      auto [it, fresh] = index_.emplace(points_[i].key(m.size), i);
      (void)it;
      if (!fresh) throw std::runtime_error("internal: duplicate canonical point");
    }

    // |P^1(A/n)| = |n| * prod_{p | n} (1 + |p|^-1), exact in this order
    uint64_t expected = m.size;
    for (auto& [p, e] : m.factors) {
      (void)e;
      uint64_t absp = 1;
      for (int i = 0; i < p.degree(); ++i) absp *= F.q();
      expected = expected / absp * (absp + 1);
    }
    if (points_.size() != expected) throw std::runtime_error("internal: P1 size mismatch");

    inf_index_ = canonical_index(FqPoly::one(F), FqPoly::zero(F));
  }
};

}  // namespace drinfeld
