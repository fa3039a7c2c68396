#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace orqi {

/// Subsets of a ground set are stored as bit masks, one bit per element.
/// Element i of the ground set corresponds to bit (1 << i).
using Mask = std::uint64_t;

constexpr int kMaxGround = 64;   // one machine word per subset
constexpr int kMaxTable = 16;    // materialized transforms hold 2^n entries

constexpr Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
}

constexpr bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

constexpr int popcount(Mask m) { return std::popcount(m); }

/// Finite ground set with stable element labels. Label order fixes the
/// bit layout of every Mask built against this set.
class GroundSet {
 public:
  GroundSet() = default;

  explicit GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty() || labels_.size() > kMaxGround)
      throw std::invalid_argument("ground set size must be in [1, 64]");
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j])
          throw std::invalid_argument("duplicate ground set label: " + labels_[i]);
  }

  /// Ground set {"1", "2", ..., "n"}.
  static GroundSet numbered(int n) {
    std::vector<std::string> ls;
    ls.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) ls.push_back(std::to_string(i));
    return GroundSet(std::move(ls));
  }

  int size() const { return static_cast<int>(labels_.size()); }
  Mask full() const { return full_mask(size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }

  int index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return static_cast<int>(i);
    throw std::invalid_argument("unknown label: " + label);
  }

  Mask mask_of(const std::vector<std::string>& labels) const {
    Mask m = 0;
    for (const auto& l : labels) m |= Mask{1} << index_of(l);
    return m;
  }

  std::vector<std::string> labels_of(Mask m) const {
    std::vector<std::string> out;
    for (int i = 0; i < size(); ++i)
      if (m & (Mask{1} << i)) out.push_back(labels_[static_cast<std::size_t>(i)]);
    return out;
  }

  bool operator==(const GroundSet& o) const { return labels_ == o.labels_; }

 private:
  std::vector<std::string> labels_;
};

/// Canonical ordering used whenever a family of subsets is reported:
/// by cardinality first, then by mask value (element 1 = lowest bit).
inline void sort_family(std::vector<Mask>& family) {
  std::sort(family.begin(), family.end(), [](Mask a, Mask b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
}

}  // namespace orqi
