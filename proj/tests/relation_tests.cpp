#include <catch2/catch_amalgamated.hpp>

#include "orqi/relation.hpp"
#include "orqi/rng.hpp"

namespace {

using namespace orqi;

// Reference dual: try every candidate against every member, no bit tricks.
Mask dual_by_scan(const CostRelation& s, Mask k) {
  Mask out = 0;
  for (int y = 0; y < s.size(); ++y) {
    bool ok = true;
    for (int x = 0; x < s.size(); ++x)
      if ((k >> x & 1) && !s.related(x, y)) {
        ok = false;
        break;
      }
    if (ok) out |= Mask{1} << y;
  }
  return out;
}

// Three elements; 1 pairs with itself and 3, 2 only with itself.
CostRelation three_point() {
  return CostRelation(GroundSet::numbered(3), {0b101, 0b010, 0b001});
}

CostRelation identity_relation(int n) {
  return CostRelation::from_predicate(GroundSet::numbered(n), [](int x, int y) { return x == y; });
}

CostRelation random_relation(Rng& rng, int n, double density = 0.5) {
  std::vector<Mask> rows(static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y)
      if (rng.uniform() < density) {
        rows[static_cast<std::size_t>(x)] |= Mask{1} << y;
        rows[static_cast<std::size_t>(y)] |= Mask{1} << x;
      }
  return CostRelation(GroundSet::numbered(n), std::move(rows));
}

}  // namespace

TEST_CASE("dual collects the elements admissible against the whole set", "[relation]") {
  const CostRelation s = three_point();

  CHECK(c_dual(s, 0b001) == 0b101);  // {1} -> {1, 3}
  CHECK(c_dual(s, 0b011) == 0b000);  // {1, 2} -> {}
  CHECK(c_dual(s, 0b100) == 0b001);  // {3} -> {1}
  CHECK(c_dual(s, 0) == s.ground().full());

  SECTION("matches the elementwise scan on every subset") {
    for (Mask k = 0; k <= s.ground().full(); ++k) CHECK(c_dual(s, k) == dual_by_scan(s, k));
  }

  SECTION("matches the elementwise scan on random relations") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 1 + static_cast<int>(rng.below(10));
      const CostRelation r = random_relation(rng, n, rng.uniform(0.1, 0.9));
      for (Mask k = 0; k <= r.ground().full(); ++k) CHECK(c_dual(r, k) == dual_by_scan(r, k));
    }
  }

  SECTION("singleton duals are the fibers") {
    for (int x = 0; x < s.size(); ++x) CHECK(c_dual(s, Mask{1} << x) == s.fiber(x));
  }
}

TEST_CASE("every set lands inside its double dual", "[relation]") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const CostRelation s = random_relation(rng, 1 + static_cast<int>(rng.below(8)));
    for (Mask k = 0; k <= s.ground().full(); ++k) CHECK(subset_of(k, envelope(s, k)));
  }
}

TEST_CASE("growing a set can only shrink its dual", "[relation]") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const CostRelation s = random_relation(rng, 1 + static_cast<int>(rng.below(7)));
    for (Mask k = 0; k <= s.ground().full(); ++k) {
      const Mask dk = c_dual(s, k);
      for (Mask l = (k - 1) & k;; l = (l - 1) & k) {
        CHECK(subset_of(dk, c_dual(s, l)));
        if (l == 0) break;
      }
    }
  }
}

TEST_CASE("dualizing a union intersects the duals", "[relation]") {
  const CostRelation s = three_point();

  SECTION("worked family") {
    const LatticeLawReport r = lattice_law_check(s, {0b001, 0b010});
    CHECK(r.holds);
    CHECK(r.union_mask == 0b011);
    CHECK(r.dual_of_union == 0b000);
    CHECK(r.meet_of_duals == (Mask{0b101} & 0b010));
  }

  SECTION("empty family gives X on both sides") {
    const LatticeLawReport r = lattice_law_check(s, {});
    CHECK(r.holds);
    CHECK(r.dual_of_union == s.ground().full());
    CHECK(r.meet_of_duals == s.ground().full());
  }

  SECTION("random families on random relations") {
    Rng rng(23);
    for (int trial = 0; trial < 60; ++trial) {
      const CostRelation r = random_relation(rng, 2 + static_cast<int>(rng.below(9)));
      std::vector<Mask> family;
      const int m = static_cast<int>(rng.below(5));
      for (int i = 0; i < m; ++i) family.push_back(rng.next_u64() & r.ground().full());
      CHECK(lattice_law_check(r, family).holds);
    }
  }
}

TEST_CASE("double dual is the smallest dual-closed superset", "[relation]") {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const CostRelation s = random_relation(rng, 1 + static_cast<int>(rng.below(6)));
    const Mask full = s.ground().full();
    for (Mask k = 0; k <= full; ++k) {
      const Mask e = envelope(s, k);
      CHECK(subset_of(k, e));
      CHECK(envelope(s, e) == e);  // the envelope is itself dual-closed
      // No dual-closed set between K and its envelope.
      for (Mask m = 0; m <= full; ++m)
        if (subset_of(k, m) && envelope(s, m) == m) CHECK(subset_of(e, m));
    }
  }
}

TEST_CASE("image class is intersection closed and canonically ordered", "[relation]") {
  SECTION("identity relation images are the singletons, the empty set and X") {
    const CostRelation s = identity_relation(4);
    const std::vector<Mask> image = image_class(s);
    const std::vector<Mask> expect = {0b0000, 0b0001, 0b0010, 0b0100, 0b1000, 0b1111};
    CHECK(image == expect);
  }

  SECTION("pairwise intersections stay inside the class") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      const CostRelation s = random_relation(rng, 2 + static_cast<int>(rng.below(7)));
      const std::vector<Mask> image = image_class(s);
      for (Mask a : image)
        for (Mask b : image)
          CHECK(std::find(image.begin(), image.end(), a & b) != image.end());
    }
  }

  SECTION("family ordering is by cardinality then mask value") {
    std::vector<Mask> fam = {0b111, 0b001, 0b110, 0b010};
    sort_family(fam);
    CHECK(fam == std::vector<Mask>{0b001, 0b010, 0b110, 0b111});
  }
}

TEST_CASE("asymmetric relations are rejected with the offending pair named", "[relation]") {
  CHECK_THROWS_WITH(CostRelation(GroundSet::numbered(2), {0b11, 0b10}),
                    Catch::Matchers::ContainsSubstring("(1, 2)"));
  CHECK_THROWS_AS(CostRelation(GroundSet::numbered(2), {0b11, 0b10}), std::invalid_argument);
}

TEST_CASE("ground sets validate labels and translate masks", "[relation]") {
  CHECK_THROWS_AS(GroundSet({"a", "a"}), std::invalid_argument);
  CHECK_THROWS_AS(GroundSet(std::vector<std::string>{}), std::invalid_argument);

  const GroundSet g({"p", "q", "r"});
  CHECK(g.mask_of({"p", "r"}) == 0b101);
  CHECK(g.labels_of(0b110) == std::vector<std::string>{"q", "r"});
  CHECK_THROWS_AS(g.index_of("missing"), std::invalid_argument);

  SECTION("row shape must match the ground set") {
    CHECK_THROWS_AS(CostRelation(g, {0b101, 0b010}), std::invalid_argument);
    CHECK_THROWS_AS(CostRelation(g, {0b1101, 0b010, 0b100}), std::invalid_argument);
  }
}
