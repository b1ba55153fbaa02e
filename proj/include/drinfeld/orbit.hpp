#pragma once

// Orbits of the vertex/edge stabilizer groups on P^1(A/n).
//
// G_0 = GL_2(F_q); for i >= 1, G_i is the group of upper-triangular matrices
// (a b; 0 d) with a, d units in F_q and deg b <= i. The type-0 edge group is
// the Borel B = G_0 cap G_1. A matrix (a b; c d) acts on points by
// (u : v) -> (a u + b v : c u + d v).
//
// Orbits are computed by breadth-first closure under a generating set:
// diag(alpha, 1), diag(1, alpha) for a primitive alpha, the unipotents
// (1 T^k; 0 1) for 0 <= k <= i, and the Weyl element (0 1; 1 0) only for the
// type-0 vertex group. Weights come from orbit sizes via orbit-stabilizer:
// w = |G| / ((q-1) * |orbit|), always a positive integer.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "drinfeld/p1.hpp"

namespace drinfeld {

struct UpperGroupSpec {
  int i;            // type index >= 0
  int q;
  bool edge_group;  // for i = 0, use the Borel B instead of GL_2(F_q)

  // |G_0| = (q^2-1)(q^2-q), |B| = q(q-1)^2, |G_i| = (q-1)^2 q^{i+1}
  unsigned long long order() const {
    unsigned long long uq = q;
    if (i == 0 && !edge_group) return (uq * uq - 1) * (uq * uq - uq);
    unsigned long long pw = 1;
    for (int k = 0; k <= i; ++k) {
      pw *= uq;
      if (pw > (1ull << 62)) throw std::runtime_error("group order overflow");
    }
    return (uq - 1) * (uq - 1) * pw;
  }
};

// 2x2 matrix over A acting on P^1(A/n); entries kept reduced.
struct ActionMatrix {
  FqPoly a, b, c, d;
};

inline std::vector<ActionMatrix> group_generators(const UpperGroupSpec& spec, const Modulus& m) {
  const FqField& F = m.field();
  uint8_t alpha = F.primitive();
  FqPoly zero = FqPoly::zero(F), one = FqPoly::one(F);
  FqPoly al = FqPoly::constant(F, alpha);
  std::vector<ActionMatrix> gens;
  if (F.q() > 2) {
    gens.push_back({al, zero, zero, one});
    gens.push_back({one, zero, zero, al});
  }
  int max_k = spec.edge_group && spec.i == 0 ? 0 : spec.i;
  for (int k = 0; k <= max_k; ++k)
    gens.push_back({one, m.reduce(FqPoly::t_power(F, k)), zero, one});
  if (spec.i == 0 && !spec.edge_group) gens.push_back({zero, one, one, zero});
  return gens;
}

// Permutation of point indices induced by one matrix.
inline std::vector<uint32_t> action_permutation(const ActionMatrix& g, const P1Space& space) {
  const Modulus& m = space.modulus();
  std::vector<uint32_t> perm(space.size());
  for (uint32_t idx = 0; idx < space.size(); ++idx) {
    const P1Point& pt = space.point(idx);
    FqPoly nu = m.reduce(g.a * pt.u.rep() + g.b * pt.v.rep());
    FqPoly nv = m.reduce(g.c * pt.u.rep() + g.d * pt.v.rep());
    perm[idx] = space.canonical_index(nu, nv);
  }
  return perm;
}

struct OrbitPartition {
  std::vector<std::vector<uint32_t>> blocks;   // each sorted ascending, blocks ordered by min
  std::vector<uint32_t> block_of;              // point index -> block id
  std::vector<long long> weight;               // per block
};

inline OrbitPartition orbit_partition(const UpperGroupSpec& spec, const P1Space& space) {
  std::vector<std::vector<uint32_t>> perms;
  for (const ActionMatrix& g : group_generators(spec, space.modulus()))
    perms.push_back(action_permutation(g, space));

  OrbitPartition part;
  part.block_of.assign(space.size(), UINT32_MAX);
  unsigned long long group_order = spec.order();
  unsigned long long qm1 = static_cast<unsigned long long>(spec.q) - 1;

  std::vector<uint32_t> stack;
  for (uint32_t s = 0; s < space.size(); ++s) {
    if (part.block_of[s] != UINT32_MAX) continue;
    uint32_t id = static_cast<uint32_t>(part.blocks.size());
    std::vector<uint32_t> orbit;
    stack.assign(1, s);
    part.block_of[s] = id;
    while (!stack.empty()) {
      uint32_t x = stack.back();
      stack.pop_back();
      orbit.push_back(x);
      for (const auto& perm : perms) {
        uint32_t y = perm[x];
        if (part.block_of[y] == UINT32_MAX) {
          part.block_of[y] = id;
          stack.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    unsigned long long denom = qm1 * orbit.size();
    if (group_order % denom != 0)
      throw std::runtime_error("non-integral weight: |G|=" + std::to_string(group_order) +
                               " orbit=" + std::to_string(orbit.size()));
    part.weight.push_back(static_cast<long long>(group_order / denom));
    part.blocks.push_back(std::move(orbit));
  }
  return part;
}

}  // namespace drinfeld
