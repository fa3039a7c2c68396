#pragma once

#include "orqi/relation.hpp"

namespace orqi {

/// Self-admissible elements. Every set contained in its own dual lives here.
inline Mask x_zero(const CostRelation& s) {
  Mask m = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s.related(i, i)) m |= Mask{1} << i;
  return m;
}

/// All K with c_dual(K) == K, by brute force over subsets of the
/// self-admissible core (no invariant set can leave it).
inline std::vector<Mask> enumerate_invariant_sets(const CostRelation& s, int cap = 20) {
  const Mask x0 = x_zero(s);
  if (popcount(x0) > cap)
    throw std::invalid_argument("enumerate_invariant_sets: self-admissible core exceeds cap");
  std::vector<Mask> out;
  // Walk the submasks of x0, empty set included.
  Mask k = 0;
  while (true) {
    if (c_dual(s, k) == k) out.push_back(k);
    if (k == x0) break;
    k = (k - x0) & x0;  // next submask in increasing numeric order
  }
  sort_family(out);
  return out;
}

struct InvariantClassification {
  enum class Kind { UniqueX0, NoneExists, Ambiguous };
  Mask x0 = 0;
  Kind kind = Kind::UniqueX0;
  std::vector<Mask> invariant_sets;
};

/// Trichotomy on the dual of the self-admissible core:
///   equal      -> the core is the one and only invariant set;
///   escapes    -> no invariant set at all;
///   proper sub -> inconclusive, settled by enumeration (possibly empty).
inline InvariantClassification classify(const CostRelation& s, int enumerate_cap = 20) {
  InvariantClassification out;
  out.x0 = x_zero(s);
  const Mask tx0 = c_dual(s, out.x0);
  if (tx0 == out.x0) {
    out.kind = InvariantClassification::Kind::UniqueX0;
    out.invariant_sets = {out.x0};
  } else if (!subset_of(tx0, out.x0)) {
    out.kind = InvariantClassification::Kind::NoneExists;
  } else {
    out.kind = InvariantClassification::Kind::Ambiguous;
    out.invariant_sets = enumerate_invariant_sets(s, enumerate_cap);
  }
  return out;
}

/// Greedily grows k0 to a maximal almost-invariant set: keep adjoining the
/// next element compatible with itself and with everything taken so far.
/// One pass is enough since eligibility only shrinks as the set grows.
/// The result K satisfies c_dual(K) & X0 == K.
inline Mask maximal_almost_invariant(const CostRelation& s, Mask k0,
                                     const std::vector<int>* order = nullptr) {
  if (!subset_of(k0, c_dual(s, k0)))
    throw std::invalid_argument("maximal_almost_invariant: seed is not almost invariant");
  std::vector<int> idx;
  if (order) {
    if (order->size() != static_cast<std::size_t>(s.size()))
      throw std::invalid_argument("maximal_almost_invariant: order must list every element once");
    idx = *order;
  } else {
    idx.resize(static_cast<std::size_t>(s.size()));
    for (int i = 0; i < s.size(); ++i) idx[static_cast<std::size_t>(i)] = i;
  }
  Mask k = k0;
  for (int z : idx) {
    const Mask zbit = Mask{1} << z;
    if (k & zbit) continue;
    if (!s.related(z, z)) continue;
    if (subset_of(k | zbit, c_dual(s, k | zbit))) k |= zbit;
  }
  if ((c_dual(s, k) & x_zero(s)) != k)
    throw std::logic_error("maximal_almost_invariant: maximality postcondition failed");
  return k;
}

}  // namespace orqi
