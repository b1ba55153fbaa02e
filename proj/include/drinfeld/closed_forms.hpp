#pragma once

// Closed-form counting data for the core of Gamma_0(p)\T, p prime of degree
// d >= 3, all exact:
//
//   s(p)   edges of the p-fibre dual graph; genus g(p) = s(p) - 1
//   N(p)   order of the cyclic component group at p
//   |V(core)| = 2q(q^{d-1}-1)/((q-1)^2(q+1)) + (q-2)(d-1)/(q-1) + kappa q/(q+1)
//   sum 1/w over the core = 2q(q^{d-1}-1)/((q-1)^2(q+1))
//   prod w(v) / prod w(e) over the core = (q-1)(q+1)^kappa
//   total inverse weight incl. cusp tails = 2(q^d+1)(q-1)/((q^2-1)(q-1)^2)
//
// The inverse-weight sum follows from the per-type orbit weights: the
// weight-(q+1) type-0 vertex (present iff kappa = 1) and the d-1 vertices of
// weight q-1 contribute kappa q/(q+1) + (d-1)(q-2)/(q-1) less than their
// count, which cancels the last two terms of |V(core)|.

#include <stdexcept>

#include "drinfeld/bigint.hpp"

namespace drinfeld {

struct ClosedForms {
  int q = 0, d = 0, kappa = 0;
  BigInt s;                        // s(p)
  BigInt genus;                    // g(p) = s(p) - 1
  BigInt component_group_at_p;     // N(p)
  BigInt core_vertex_count;        // |V(G_0(p))|
  BigRat core_inverse_weight_sum;
  BigInt weight_product_ratio;     // prod w(v) / prod w(e), an integer
  BigRat total_inverse_weight;     // volume identity value for the full diagram
};

inline ClosedForms closed_forms(int q, int d) {
  if (d < 3) throw std::runtime_error("closed forms need d >= 3");
  ClosedForms f;
  f.q = q;
  f.d = d;
  f.kappa = (d % 2 == 0) ? 1 : 0;
  BigInt Q(q);
  BigInt absp = big_pow(Q, d);
  BigInt q2m1 = Q * Q - 1;

  f.s = (f.kappa == 1) ? big_divexact(absp - 1, q2m1) : big_divexact(absp - Q, q2m1) + 1;
  f.genus = f.s - 1;
  f.component_group_at_p =
      (f.kappa == 1) ? big_divexact(absp - 1, q2m1) : big_divexact(absp - 1, Q - 1);

  BigRat main = make_rat(BigInt(2) * Q * (big_pow(Q, d - 1) - 1),
                         (Q - 1) * (Q - 1) * (Q + 1));
  BigRat vcount = main + make_rat(BigInt(q - 2) * BigInt(d - 1), Q - 1) +
                  make_rat(BigInt(f.kappa) * Q, Q + 1);
  vcount.canonicalize();
  if (vcount.get_den() != 1) throw std::runtime_error("internal: vertex count not integral");
  f.core_vertex_count = vcount.get_num();
  f.core_inverse_weight_sum = main;
  f.weight_product_ratio = (Q - 1) * big_pow(Q + 1, f.kappa);
  f.total_inverse_weight = make_rat(BigInt(2) * (absp + 1) * (Q - 1), q2m1 * (Q - 1) * (Q - 1));
  return f;
}

}  // namespace drinfeld
