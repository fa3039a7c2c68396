#pragma once

#include "orqi/table.hpp"

namespace orqi {

/// Parameters for the small-image catalog below. Only the sets a given
/// kind consumes need to be supplied; they must be strictly nested.
struct CatalogParams {
  std::optional<Mask> k0;
  std::optional<Mask> k1;
  std::optional<Mask> k2;
};

/// Materializes the four smallest order-reversing quasi involutions,
/// classed by image size:
///   kind 1: image {X}, everything maps to X
///   kind 2: image {X, K}, subsets of K map to X, the rest to K
///   kind 3: image {X, K1, K2}, T swaps X and K1 and fixes K2
///   kind 4: image {X, K0, K1, K2}, T swaps X with K0 and K1 with K2
/// With the chain written as C_0 c C_1 c ... c C_m = X, a set whose
/// smallest chain cover is C_i maps to C_{m-i}; reversing the rank this
/// way is what makes the table order reversing.
inline TransformTable simple_orqi_catalog(int kind, const GroundSet& ground,
                                          const CatalogParams& params = {}) {
  if (kind < 1 || kind > 4) throw std::invalid_argument("simple_orqi_catalog: kind must be 1..4");
  const Mask full = ground.full();
  const int need = kind - 1;
  std::vector<Mask> chain;
  const std::array<std::optional<Mask>, 3> given{params.k0, params.k1, params.k2};
  for (int i = 3 - need; i < 3; ++i) {
    if (!given[static_cast<std::size_t>(i)])
      throw std::invalid_argument("simple_orqi_catalog: kind " + std::to_string(kind) + " needs " +
                                  std::to_string(need) + " chain set(s)");
    chain.push_back(*given[static_cast<std::size_t>(i)]);
  }
  chain.push_back(full);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!subset_of(chain[i], chain[i + 1]) || chain[i] == chain[i + 1])
      throw std::invalid_argument("simple_orqi_catalog: chain sets must be strictly nested");

  std::vector<Mask> entries(std::size_t{1} << ground.size());
  for (Mask l = 0; l <= full; ++l) {
    std::size_t rank = chain.size() - 1;  // the X link covers everything
    for (std::size_t i = 0; i < chain.size(); ++i)
      if (subset_of(l, chain[i])) {
        rank = i;
        break;
      }
    entries[l] = chain[chain.size() - 1 - rank];
  }
  return TransformTable(ground, std::move(entries));
}

}  // namespace orqi
