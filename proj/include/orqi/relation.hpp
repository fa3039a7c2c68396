#pragma once

#include <optional>
#include <set>
#include <utility>

#include "orqi/core.hpp"

namespace orqi {

/// Symmetric sign relation on a finite ground set X. Entry (x, y) records
/// whether the cost of the pair is admissible; the induced duality sends
/// K to the set of y admissible against every x in K.
///
/// Rows double as fibers: row(x) = { y : rel(x, y) }.
class CostRelation {
 public:
  CostRelation() = default;

  CostRelation(GroundSet ground, std::vector<Mask> rows)
      : ground_(std::move(ground)), rows_(std::move(rows)) {
    if (rows_.size() != static_cast<std::size_t>(ground_.size()))
      throw std::invalid_argument("relation row count must equal ground size");
    const Mask full = ground_.full();
    for (auto& r : rows_)
      if (r & ~full) throw std::invalid_argument("relation row exceeds ground set");
    if (auto w = asymmetry_witness())
      throw std::invalid_argument("relation must be symmetric; entry (" +
                                  ground_.label(w->first) + ", " + ground_.label(w->second) +
                                  ") disagrees with its mirror");
  }

  /// Builds the relation from a predicate on element index pairs.
  /// The predicate must already be symmetric.
  template <typename Pred>
  static CostRelation from_predicate(GroundSet ground, Pred&& related) {
    const int n = ground.size();
    std::vector<Mask> rows(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (related(x, y)) rows[static_cast<std::size_t>(x)] |= Mask{1} << y;
    return CostRelation(std::move(ground), std::move(rows));
  }

  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  bool related(int x, int y) const { return rows_[static_cast<std::size_t>(x)] >> y & 1; }

  /// Fiber of x: every y admissible against x alone.
  Mask fiber(int x) const {
    if (x < 0 || x >= size()) throw std::invalid_argument("fiber: element out of range");
    return rows_[static_cast<std::size_t>(x)];
  }

  const std::vector<Mask>& rows() const { return rows_; }

  bool operator==(const CostRelation& o) const {
    return ground_ == o.ground_ && rows_ == o.rows_;
  }

 private:
  std::optional<std::pair<int, int>> asymmetry_witness() const {
    for (int x = 0; x < size(); ++x)
      for (int y = x + 1; y < size(); ++y)
        if (related(x, y) != related(y, x)) return std::make_pair(x, y);
    return std::nullopt;
  }

  GroundSet ground_;
  std::vector<Mask> rows_;
};

/// Dual of K: all y admissible against every element of K.
/// The empty set dualizes to the whole ground set.
inline Mask c_dual(const CostRelation& s, Mask k) {
  Mask out = s.ground().full();
  Mask rest = k;
  while (rest) {
    const int x = std::countr_zero(rest);
    rest &= rest - 1;
    out &= s.fiber(x);
  }
  return out;
}

/// Smallest dual-closed superset of K, reached after two applications.
inline Mask envelope(const CostRelation& s, Mask k) {
  return c_dual(s, c_dual(s, k));
}

/// Every set of the form c_dual(K), deduplicated, sorted by
/// (cardinality, mask value). Enumerates all 2^n subsets, so the ground
/// set is capped at the table limit.
inline std::vector<Mask> image_class(const CostRelation& s) {
  const int n = s.size();
  if (n > kMaxTable) throw std::invalid_argument("image_class: ground set too large to enumerate");
  std::set<Mask> seen;
  for (Mask k = 0; k <= s.ground().full(); ++k) seen.insert(c_dual(s, k));
  std::vector<Mask> out(seen.begin(), seen.end());
  sort_family(out);
  return out;
}

struct LatticeLawReport {
  bool holds = true;
  Mask union_mask = 0;     // union of the family
  Mask dual_of_union = 0;  // c_dual applied to the union
  Mask meet_of_duals = 0;  // intersection of the members' duals
};

/// Checks that dualizing a union equals intersecting the duals.
/// An empty family has union {} and empty meet, i.e. both sides are X.
inline LatticeLawReport lattice_law_check(const CostRelation& s, const std::vector<Mask>& family) {
  LatticeLawReport r;
  r.meet_of_duals = s.ground().full();
  for (Mask k : family) {
    r.union_mask |= k;
    r.meet_of_duals &= c_dual(s, k);
  }
  r.dual_of_union = c_dual(s, r.union_mask);
  r.holds = r.dual_of_union == r.meet_of_duals;
  return r;
}

}  // namespace orqi
