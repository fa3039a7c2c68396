#pragma once

#include <map>
#include <variant>

#include "orqi/table.hpp"

namespace orqi {

/// Entrywise negation. Finite ground sets make this exact: the dual cost
/// admits a pair exactly when the original cost rejects it.
inline CostRelation dual_orqi(const CostRelation& s) {
  const Mask full = s.ground().full();
  std::vector<Mask> rows = s.rows();
  for (auto& r : rows) r = ~r & full;
  return CostRelation(s.ground(), std::move(rows));
}

/// Entrywise conjunction; the induced transform is the meet of the inputs'
/// transforms. All relations must share one ground set.
inline CostRelation intersect_orqis(const std::vector<CostRelation>& parts) {
  if (parts.empty()) throw std::invalid_argument("intersect_orqis: need at least one relation");
  std::vector<Mask> rows = parts.front().rows();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!(parts[i].ground() == parts.front().ground()))
      throw std::invalid_argument("intersect_orqis: ground sets differ");
    for (std::size_t x = 0; x < rows.size(); ++x) rows[x] &= parts[i].rows()[x];
  }
  return CostRelation(parts.front().ground(), std::move(rows));
}

/// Conjugation by complement: K -> X \ T(X \ K). Swaps the containment
/// direction of the quasi-involution law while staying order reversing.
inline TransformTable complement_conjugate(const TransformTable& t) {
  const Mask full = t.ground().full();
  std::vector<Mask> entries(t.subsets());
  for (Mask k = 0; k < t.subsets(); ++k) entries[k] = ~t.apply(full & ~k) & full;
  return TransformTable(t.ground(), std::move(entries));
}

inline TransformTable compose(const TransformTable& outer, const TransformTable& inner) {
  if (!(outer.ground() == inner.ground()))
    throw std::invalid_argument("compose: ground sets differ");
  std::vector<Mask> entries(outer.subsets());
  for (Mask k = 0; k < outer.subsets(); ++k) entries[k] = outer.apply(inner.apply(k));
  return TransformTable(outer.ground(), std::move(entries));
}

enum class SandwichPattern { TRT, RTR };

/// Composes T and R in the requested order. T must satisfy the standard
/// laws; R must satisfy them for the opposite order (image of the image
/// shrinks), which is exactly complement conjugation of the standard kind.
inline TransformTable sandwich(const TransformTable& t, const TransformTable& r,
                               SandwichPattern pattern) {
  if (!(t.ground() == r.ground())) throw std::invalid_argument("sandwich: ground sets differ");
  if (!is_orqi(t).ok())
    throw std::invalid_argument("sandwich: T fails the quasi-involution laws");
  if (!is_orqi(complement_conjugate(r)).ok())
    throw std::invalid_argument(
        "sandwich: R must be order reversing with shrinking double image");
  const TransformTable tr = compose(t, r);
  return pattern == SandwichPattern::TRT ? compose(tr, t) : compose(r, tr);
}

/// Keeps only the rows and columns of m0. Labels carry over, so masks in
/// the restricted world can be matched back up by label.
inline CostRelation restrict_to_set(const CostRelation& s, Mask m0) {
  if (m0 == 0 || (m0 & ~s.ground().full()))
    throw std::invalid_argument("restrict_to_set: need a nonempty subset of the ground set");
  std::vector<int> keep;
  for (int i = 0; i < s.size(); ++i)
    if (m0 >> i & 1) keep.push_back(i);
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (int i : keep) labels.push_back(s.ground().label(i));
  std::vector<Mask> rows(keep.size(), 0);
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b)
      if (s.related(keep[a], keep[b])) rows[a] |= Mask{1} << b;
  return CostRelation(GroundSet(std::move(labels)), std::move(rows));
}

/// Embeds a mask of the restricted ground set back into the original one.
inline Mask lift_mask(const CostRelation& whole, const CostRelation& part, Mask sub) {
  Mask out = 0;
  for (int i = 0; i < part.size(); ++i)
    if (sub >> i & 1) out |= Mask{1} << whole.ground().index_of(part.ground().label(i));
  return out;
}

struct SubclassReport {
  enum class Status { Verified, Mismatch, HypothesisUnmet };
  Status status = Status::Verified;
  Mask y = 0;
  Mask y_dual = 0;
  std::vector<Mask> via_restriction;     // image family of the restricted relation
  std::vector<Mask> via_superset_duals;  // { B & Y : B in the image family, dual(Y) within B }
};

/// The image family of the restriction to a dual-closed Y must equal the
/// traces on Y of those image members that contain Y's dual. A Y that is
/// not dual-closed is reported as out of hypothesis rather than checked.
inline SubclassReport subclass_structure(const CostRelation& s, Mask y) {
  SubclassReport rep;
  rep.y = y;
  rep.y_dual = c_dual(s, y);
  if (envelope(s, y) != y) {
    rep.status = SubclassReport::Status::HypothesisUnmet;
    return rep;
  }
  const CostRelation sub = restrict_to_set(s, y);
  for (Mask a : image_class(sub)) rep.via_restriction.push_back(lift_mask(s, sub, a));
  sort_family(rep.via_restriction);

  std::set<Mask> traces;
  for (Mask b : image_class(s))
    if (subset_of(rep.y_dual, b)) traces.insert(b & y);
  rep.via_superset_duals.assign(traces.begin(), traces.end());
  sort_family(rep.via_superset_duals);

  rep.status = rep.via_restriction == rep.via_superset_duals ? SubclassReport::Status::Verified
                                                             : SubclassReport::Status::Mismatch;
  return rep;
}

/// Transform defined only on a chosen family of subsets; images must stay
/// inside the family so that iteration is possible.
class SubFamilyTransform {
 public:
  SubFamilyTransform(GroundSet ground, std::vector<Mask> domain, std::map<Mask, Mask> map)
      : ground_(std::move(ground)), domain_(std::move(domain)), map_(std::move(map)) {
    if (domain_.empty()) throw std::invalid_argument("domain must be nonempty");
    sort_family(domain_);
    domain_.erase(std::unique(domain_.begin(), domain_.end()), domain_.end());
    for (Mask k : domain_) {
      if (k & ~ground_.full()) throw std::invalid_argument("domain member exceeds ground set");
      auto it = map_.find(k);
      if (it == map_.end())
        throw std::invalid_argument("map must cover every domain member");
      if (!contains(it->second))
        throw std::invalid_argument("map image must stay inside the domain");
    }
    if (map_.size() != domain_.size())
      throw std::invalid_argument("map keys must match the domain exactly");
  }

  const GroundSet& ground() const { return ground_; }
  const std::vector<Mask>& domain() const { return domain_; }

  bool contains(Mask k) const {
    return std::find(domain_.begin(), domain_.end(), k) != domain_.end();
  }

  Mask apply(Mask k) const {
    auto it = map_.find(k);
    if (it == map_.end()) throw std::invalid_argument("apply: subset outside the domain");
    return it->second;
  }

 private:
  GroundSet ground_;
  std::vector<Mask> domain_;
  std::map<Mask, Mask> map_;
};

struct RespectsVerdict {
  bool ok = true;
  Mask set = 0;                // covered member K
  std::vector<Mask> cover;     // domain members covering K with meet of images outside T(K)
};

namespace detail {

inline bool cover_violates(const SubFamilyTransform& t, Mask k, const std::vector<Mask>& cover) {
  Mask meet = t.ground().full();
  Mask uni = 0;
  for (Mask c : cover) {
    meet &= t.apply(c);
    uni |= c;
  }
  return subset_of(k, uni) && !subset_of(meet, t.apply(k));
}

// Depth-first enumeration of irredundant covers of k. Every violating cover
// contains a violating irredundant one (shrinking a cover grows the meet of
// images), so searching these suffices.
inline bool find_violating_cover(const SubFamilyTransform& t, Mask k, Mask covered,
                                 std::size_t first, std::vector<Mask>& picked,
                                 RespectsVerdict& out) {
  if (subset_of(k, covered)) {
    for (std::size_t i = 0; i < picked.size(); ++i) {
      Mask rest = 0;
      for (std::size_t j = 0; j < picked.size(); ++j)
        if (j != i) rest |= picked[j];
      if (subset_of(k, rest)) return false;  // redundant member: skip this branch
    }
    if (cover_violates(t, k, picked)) {
      out = {false, k, picked};
      return true;
    }
    return false;
  }
  const auto& dom = t.domain();
  const Mask missing = k & ~covered;
  const Mask want = missing & (~missing + 1);  // lowest missing element
  for (std::size_t i = first; i < dom.size(); ++i) {
    if (!(dom[i] & want)) continue;  // next pick must cover the lowest missing element
    picked.push_back(dom[i]);
    if (find_violating_cover(t, k, covered | dom[i], 0, picked, out)) return true;
    picked.pop_back();
  }
  return false;
}

}  // namespace detail

struct RespectsOptions {
  std::size_t exhaustive_limit = 12;  // domain sizes up to this scan all subcollections
};

/// A transform extends beyond its domain only if covers behave: whenever
/// domain members cover K, the meet of their images must land inside the
/// image of K. Small domains are scanned over all subcollections; larger
/// ones over irredundant covers only, which is enough to find any witness.
inline RespectsVerdict respects_inclusions(const SubFamilyTransform& t,
                                           const RespectsOptions& opt = {}) {
  const auto& dom = t.domain();
  const std::size_t m = dom.size();
  if (m <= opt.exhaustive_limit) {
    for (Mask k : dom) {
      for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << m); ++pick) {
        std::vector<Mask> cover;
        for (std::size_t i = 0; i < m; ++i)
          if (pick >> i & 1) cover.push_back(dom[i]);
        if (detail::cover_violates(t, k, cover)) return {false, k, cover};
      }
    }
    return {};
  }
  RespectsVerdict out;
  std::vector<Mask> picked;
  for (Mask k : dom)
    if (detail::find_violating_cover(t, k, 0, 0, picked, out)) return out;
  return {};
}

struct NotExtendable {
  Mask set = 0;
  std::vector<Mask> cover;
};

/// Rebuilds a full relation from a transform known only on a family:
/// admit every pair drawn from image x double-image of a domain member.
/// Requires the family transform to satisfy the quasi-involution laws on
/// its domain; fails as a value when covers rule an extension out.
inline std::variant<CostRelation, NotExtendable> extend_from_subclass(
    const SubFamilyTransform& t) {
  for (Mask k : t.domain()) {
    if (!subset_of(k, t.apply(t.apply(k))))
      throw std::invalid_argument("extend_from_subclass: domain member escapes its double image");
    for (Mask l : t.domain())
      if (subset_of(l, k) && !subset_of(t.apply(k), t.apply(l)))
        throw std::invalid_argument("extend_from_subclass: transform is not order reversing");
  }
  RespectsVerdict rv = respects_inclusions(t);
  if (!rv.ok) return NotExtendable{rv.set, rv.cover};

  const int n = t.ground().size();
  std::vector<Mask> rows(static_cast<std::size_t>(n), 0);
  for (Mask k : t.domain()) {
    const Mask a = t.apply(k);
    const Mask b = t.apply(a);
    Mask rest = a;
    while (rest) {
      const int x = std::countr_zero(rest);
      rest &= rest - 1;
      rows[static_cast<std::size_t>(x)] |= b;
    }
  }
  CostRelation s(t.ground(), std::move(rows));
  for (Mask k : t.domain())
    if (c_dual(s, k) != t.apply(k))
      throw std::logic_error("extend_from_subclass: rebuilt relation disagrees on the domain");
  return s;
}

}  // namespace orqi
