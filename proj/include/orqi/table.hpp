#pragma once

#include <optional>
#include <utility>

#include "orqi/relation.hpp"
#include "orqi/rng.hpp"

namespace orqi {

/// Materialized set transform on a small ground set: one output mask per
/// subset. Index k holds the image of the subset whose mask is k.
class TransformTable {
 public:
  TransformTable() = default;

  TransformTable(GroundSet ground, std::vector<Mask> entries)
      : ground_(std::move(ground)), entries_(std::move(entries)) {
    if (ground_.size() > kMaxTable)
      throw std::invalid_argument("transform table ground set capped at 16 elements");
    if (entries_.size() != (std::size_t{1} << ground_.size()))
      throw std::invalid_argument("transform table must cover all subsets");
    for (Mask img : entries_)
      if (img & ~ground_.full()) throw std::invalid_argument("table image exceeds ground set");
  }

  /// Tabulates K -> c_dual(K) for every subset.
  static TransformTable from_relation(const CostRelation& s) {
    const int n = s.size();
    if (n > kMaxTable)
      throw std::invalid_argument("transform table ground set capped at 16 elements");
    std::vector<Mask> entries(std::size_t{1} << n);
    for (Mask k = 0; k <= s.ground().full(); ++k) entries[k] = c_dual(s, k);
    return TransformTable(s.ground(), std::move(entries));
  }

  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  std::size_t subsets() const { return entries_.size(); }
  Mask apply(Mask k) const { return entries_.at(k); }
  const std::vector<Mask>& entries() const { return entries_; }

  bool operator==(const TransformTable& o) const {
    return ground_ == o.ground_ && entries_ == o.entries_;
  }

 private:
  GroundSet ground_;
  std::vector<Mask> entries_;
};

struct OrqiVerdict {
  enum class Kind { Ok, NotQuasiInvolution, NotOrderReversing };

  Kind kind = Kind::Ok;
  // NotQuasiInvolution: `set` with set not within apply(apply(set)).
  // NotOrderReversing: `sub` within `set`, yet apply(set) not within apply(sub).
  Mask set = 0;
  Mask sub = 0;

  bool ok() const { return kind == Kind::Ok; }
};

struct IsOrqiOptions {
  bool exhaustive = false;   // force the full pair scan regardless of size
  std::uint64_t samples = 200000;
  std::uint64_t seed = 1;
};

/// Checks the two defining laws: every set lands inside its double image,
/// and growing a set can only shrink its image. The containment law is
/// always scanned in full; the pair law is scanned in full up to 8 elements
/// (or when forced) and sampled above that.
inline OrqiVerdict is_orqi(const TransformTable& t, const IsOrqiOptions& opt = {}) {
  const std::size_t count = t.subsets();
  for (Mask k = 0; k < count; ++k)
    if (!subset_of(k, t.apply(t.apply(k))))
      return {OrqiVerdict::Kind::NotQuasiInvolution, k, 0};

  if (t.size() <= 8 || opt.exhaustive) {
    for (Mask k = 0; k < count; ++k) {
      const Mask img = t.apply(k);
      // Proper submasks of k, descending.
      for (Mask l = (k - 1) & k;; l = (l - 1) & k) {
        if (!subset_of(img, t.apply(l)))
          return {OrqiVerdict::Kind::NotOrderReversing, k, l};
        if (l == 0) break;
      }
    }
    return {};
  }

  Rng rng(opt.seed);
  for (std::uint64_t i = 0; i < opt.samples; ++i) {
    const Mask k = rng.next_u64() & t.ground().full();
    const Mask l = rng.next_u64() & k;
    if (!subset_of(t.apply(k), t.apply(l)))
      return {OrqiVerdict::Kind::NotOrderReversing, k, l};
  }
  return {};
}

struct InducedRelationResult {
  std::optional<CostRelation> relation;
  // Present when the singleton fibers are not mirror images; (x, y) has
  // y in the image of {x} but x missing from the image of {y}.
  std::optional<std::pair<int, int>> asymmetry;
};

/// Reads the relation back off the transform: y relates to x exactly when
/// y survives dualizing the singleton {x}. For a genuine quasi involution
/// the singleton images are symmetric and the relation reproduces the
/// whole table through c_dual.
inline InducedRelationResult induced_relation(const TransformTable& t) {
  const int n = t.size();
  std::vector<Mask> rows(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) rows[static_cast<std::size_t>(x)] = t.apply(Mask{1} << x);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if ((rows[static_cast<std::size_t>(x)] >> y & 1) && !(rows[static_cast<std::size_t>(y)] >> x & 1))
        return {std::nullopt, std::make_pair(x, y)};
  return {CostRelation(t.ground(), std::move(rows)), std::nullopt};
}

}  // namespace orqi
