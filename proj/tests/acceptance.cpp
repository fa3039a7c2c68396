// End-to-end acceptance gate.  Each criterion prints one PASS/FAIL line with
// its wall time; the binary exits nonzero if any criterion fails.  Criteria
// with a hard time budget fail when they run over it.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "orqi/algebra.hpp"
#include "orqi/functional.hpp"
#include "orqi/invariants.hpp"
#include "orqi/jbridge.hpp"
#include "orqi/measure.hpp"

namespace {

using orqi::c_dual;
using orqi::classify;
using orqi::CostRelation;
using orqi::GroundSet;
using orqi::induced_relation;
using orqi::InvariantClassification;
using orqi::is_orqi;
using orqi::geom::kInf;
using orqi::Mask;
using orqi::maximal_almost_invariant;
using orqi::NotExtendable;
using orqi::OrqiVerdict;
using orqi::respects_inclusions;
using orqi::Rng;
using orqi::subset_of;
using orqi::SubFamilyTransform;
using orqi::TransformTable;
using orqi::x_zero;
using orqi::fn::a_transform;
using orqi::fn::dual_polar_functional;
using orqi::fn::GridFunction;
using orqi::fn::legendre;
using orqi::fn::rotem_transform;
using orqi::geom::ball_intersection;
using orqi::geom::ball_oracle;
using orqi::geom::body_from_max_affine;
using orqi::geom::body_k0;
using orqi::geom::Box;
using orqi::geom::compare_on_grid;
using orqi::geom::flower_dual;
using orqi::geom::Halfspace;
using orqi::geom::HalfspaceSet;
using orqi::geom::horizon_glue_check;
using orqi::geom::j_transform;
using orqi::geom::linear_grid;
using orqi::geom::MaxAffine;
using orqi::geom::MembershipOracle;
using orqi::geom::polar;
using orqi::geom::ProfileBody;
using orqi::geom::Reuleaux;
using orqi::geom::sample_oracle_to_points;
using orqi::geom::Sense;
using orqi::geom::square_corners;
using orqi::geom::tilde_j;
using orqi::geom::Vec;
using orqi::mc::bs_experiment;
using orqi::mc::gamma2_k0_reference;
using orqi::mc::gaussian_measure;
using orqi::mc::nu_measure;
using orqi::mc::prekopa_condition_check;

// records the first failed expectation and ignores the rest
struct Check {
  bool ok = true;
  std::string why;

  void expect(bool cond, const char* msg) {
    if (ok && !cond) {
      ok = false;
      why = msg;
    }
  }
};

// Every symmetric relation on four points: the dual laws, the triple dual
// identity, envelope minimality, and the union/meet exchange over every one
// of the 65536 subset families.
bool all_four_point_relations(std::string& why) {
  Check c;
  const GroundSet g = GroundSet::numbered(4);
  const Mask full = g.full();

  int pair_bit[4][4] = {};
  {
    int next = 4;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) pair_bit[i][j] = pair_bit[j][i] = next++;
  }

  // union of the subsets named by a family's bits; independent of the relation
  std::vector<std::uint8_t> uni(std::size_t{1} << 16, 0);
  for (std::uint32_t fam = 1; fam < (1u << 16); ++fam)
    uni[fam] =
        static_cast<std::uint8_t>(uni[fam & (fam - 1)] | std::countr_zero(fam));
  std::vector<std::uint8_t> meet(std::size_t{1} << 16, 0);

  std::array<Mask, 16> dual{};
  for (int code = 0; code < 1024 && c.ok; ++code) {
    const CostRelation s = CostRelation::from_predicate(g, [&](int x, int y) {
      const int bit = (x == y) ? x : pair_bit[x][y];
      return ((code >> bit) & 1) == 1;
    });
    for (Mask k = 0; k <= full; ++k) dual[k] = c_dual(s, k);

    std::uint32_t image = 0;
    for (Mask k = 0; k <= full; ++k) image |= 1u << dual[k];

    for (Mask k = 0; k <= full && c.ok; ++k) {
      c.expect(subset_of(k, dual[dual[k]]), "a set escaped its double dual");
      c.expect(dual[dual[dual[k]]] == dual[k], "triple dual drifted");
      for (Mask l = k;; l = (l - 1) & k) {
        c.expect(subset_of(dual[k], dual[l]),
                 "growing a set failed to shrink its dual");
        if (l == 0) break;
      }
      const Mask env = dual[dual[k]];
      for (Mask b = 0; b <= full; ++b)
        if (((image >> b) & 1) != 0 && subset_of(k, b))
          c.expect(subset_of(env, b),
                   "double dual is not the least image superset");
    }
    if (!c.ok) break;

    // dual of a union equals the meet of the duals, for every family
    c.expect(dual[0] == full, "the empty set must dualize to everything");
    meet[0] = static_cast<std::uint8_t>(full);
    for (std::uint32_t fam = 1; fam < (1u << 16); ++fam) {
      meet[fam] = static_cast<std::uint8_t>(meet[fam & (fam - 1)] &
                                            dual[std::countr_zero(fam)]);
      if (dual[uni[fam]] != meet[fam]) {
        c.expect(false, "union dual differs from the meet of duals");
        break;
      }
    }
  }
  why = c.why;
  return c.ok;
}

// Tables born from relations reproduce them, and is_orqi hands back witnesses
// that genuinely violate one of the two laws.
bool table_relation_round_trips(std::string& why) {
  Check c;
  Rng rng(811);

  for (int t = 0; t < 500 && c.ok; ++t) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const GroundSet g = GroundSet::numbered(n);
    std::vector<Mask> rows(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        if ((rng.next_u64() & 1) != 0) {
          rows[static_cast<std::size_t>(i)] |= Mask{1} << j;
          rows[static_cast<std::size_t>(j)] |= Mask{1} << i;
        }
    const CostRelation s(g, rows);
    const TransformTable table = TransformTable::from_relation(s);
    const auto back = induced_relation(table);
    c.expect(back.relation.has_value(), "a tabulated dual lost its relation");
    if (!back.relation.has_value()) break;
    c.expect(*back.relation == s, "the induced relation drifted");
    c.expect(TransformTable::from_relation(*back.relation) == table,
             "re-tabulating the induced relation changed the table");
  }

  int found = 0;
  for (long attempt = 0; attempt < 100000 && found < 100 && c.ok; ++attempt) {
    const int n = 3 + static_cast<int>(rng.below(4));
    const GroundSet g = GroundSet::numbered(n);
    std::vector<Mask> entries(std::size_t{1} << n, 0);
    for (auto& e : entries) e = rng.next_u64() & g.full();
    const TransformTable t(g, entries);
    const OrqiVerdict v = is_orqi(t);
    if (v.ok()) continue;  // the random table happened to satisfy both laws
    ++found;
    if (v.kind == OrqiVerdict::Kind::NotQuasiInvolution) {
      c.expect(!subset_of(v.set, t.apply(t.apply(v.set))),
               "witness does not violate the double image law");
    } else {
      c.expect(v.kind == OrqiVerdict::Kind::NotOrderReversing,
               "unexpected verdict kind");
      c.expect(subset_of(v.sub, v.set), "order witness is not a nested pair");
      c.expect(!subset_of(t.apply(v.set), t.apply(v.sub)),
               "witness does not violate order reversal");
    }
  }
  c.expect(found == 100, "could not collect 100 law-violating tables");
  why = c.why;
  return c.ok;
}

// The small counterexamples come out exactly: the three point relation with a
// unique invariant set, the four point relation with none, the identity
// relation, and the switching family whose extension is refused.
bool counterexamples_classify_exactly(std::string& why) {
  Check c;

  {
    const GroundSet g = GroundSet::numbered(3);
    const CostRelation s(g, {0b101, 0b010, 0b001});
    const auto r = classify(s);
    c.expect(r.kind == InvariantClassification::Kind::Ambiguous, "three point case must be ambiguous");
    c.expect(r.x0 == 0b011, "three point diagonal is off");
    c.expect(r.invariant_sets == std::vector<Mask>{0b010},
             "three point relation must have exactly one invariant set");
  }
  {
    const GroundSet g = GroundSet::numbered(4);
    const CostRelation s(g, {0b0101, 0b1010, 0b0001, 0b0010});
    const auto r = classify(s);
    c.expect(r.kind == InvariantClassification::Kind::Ambiguous, "four point case must be ambiguous");
    c.expect(r.x0 == 0b0011, "four point diagonal is off");
    c.expect(r.invariant_sets.empty(),
             "four point relation must have no invariant set");
  }
  {
    const GroundSet g = GroundSet::numbered(4);
    const CostRelation s(g, {1, 2, 4, 8});
    const auto r = classify(s);
    c.expect(r.kind == InvariantClassification::Kind::Ambiguous, "identity case must be ambiguous");
    c.expect(r.x0 == 0b1111, "identity diagonal must be everything");
    c.expect(r.invariant_sets == (std::vector<Mask>{1, 2, 4, 8}),
             "identity relation must fix exactly the singletons");
  }
  {
    const GroundSet g = GroundSet::numbered(3);
    const SubFamilyTransform t(g, {0b011, 0b101, 0b110},
                               {{0b011, 0b101}, {0b101, 0b011}, {0b110, 0b110}});
    const auto verdict = respects_inclusions(t);
    c.expect(!verdict.ok, "the switching family must fail the cover test");
    c.expect(verdict.set == 0b011, "unexpected violated set");
    c.expect(verdict.cover == (std::vector<Mask>{0b101, 0b110}),
             "unexpected violating cover");
    // the reported cover really does violate: it covers the set, yet the
    // meet of its images escapes the set's own image
    if (!verdict.cover.empty()) {
      Mask uni = 0, meet_img = g.full();
      for (const Mask m : verdict.cover) {
        uni |= m;
        meet_img &= t.apply(m);
      }
      c.expect(subset_of(verdict.set, uni), "reported cover does not cover");
      c.expect(!subset_of(meet_img, t.apply(verdict.set)),
               "reported cover does not witness a violation");
    }
    const auto ext = extend_from_subclass(t);
    c.expect(std::holds_alternative<NotExtendable>(ext),
             "the switching family must refuse to extend");
    if (const auto* blocked = std::get_if<NotExtendable>(&ext)) {
      c.expect(blocked->set == 0b011, "refusal names the wrong set");
      c.expect(blocked->cover == (std::vector<Mask>{0b101, 0b110}),
               "refusal names the wrong cover");
    }
  }
  why = c.why;
  return c.ok;
}

// Greedy growth from a random almost invariant seed stays above the seed and
// lands on a set that is exactly the reflexive part of its own dual.
bool greedy_growth_is_maximal(std::string& why) {
  Check c;
  Rng rng(812);

  for (int t = 0; t < 200 && c.ok; ++t) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const GroundSet g = GroundSet::numbered(n);
    const bool full_diag = (t % 3 == 0);

    Mask diag = 0;
    for (int i = 0; i < n; ++i)
      if (full_diag || (rng.next_u64() & 1) != 0) diag |= Mask{1} << i;
    if (diag == 0) diag = Mask{1} << rng.below(static_cast<std::uint64_t>(n));

    std::vector<Mask> rows(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      if ((diag >> i & 1) != 0) rows[static_cast<std::size_t>(i)] |= Mask{1} << i;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if ((rng.next_u64() & 1) != 0) {
          rows[static_cast<std::size_t>(i)] |= Mask{1} << j;
          rows[static_cast<std::size_t>(j)] |= Mask{1} << i;
        }
    const CostRelation s(g, rows);
    const Mask x0 = x_zero(s);
    c.expect(x0 == diag, "diagonal extraction is off");

    Mask k0 = 0;  // the empty seed is always almost invariant
    for (int tries = 0; tries < 32; ++tries) {
      const Mask cand = rng.next_u64() & x0;
      if (subset_of(cand, c_dual(s, cand))) {
        k0 = cand;
        break;
      }
    }
    const Mask k = maximal_almost_invariant(s, k0);
    c.expect(subset_of(k0, k), "growth lost its seed");
    c.expect((c_dual(s, k) & x0) == k, "grown set is not almost invariant");
    if (x0 == g.full())
      c.expect(c_dual(s, k) == k,
               "with a full diagonal the grown set must be genuinely invariant");
  }
  why = c.why;
  return c.ok;
}

// The plane dualities agree with their closed forms on membership grids.
bool plane_dualities_match_closed_forms(std::string& why) {
  Check c;

  // polar square versus the unit cross polytope, through different arithmetic
  {
    const Box box = Box::cube(2, -1.5, 1.5);
    const auto pol = polar(square_corners()).oracle(box);
    const auto cross = MembershipOracle::from_margin(2, box, [](const Vec& y) {
      return 1.0 - (std::fabs(y[0]) + std::fabs(y[1]));
    });
    const auto rep = compare_on_grid(pol, cross, box, 101);
    c.expect(rep.fraction >= 0.999, "polar square missed the cross polytope");
  }

  // negated polar of the symmetrized image equals the image of the dual body
  for (std::uint64_t seed = 821; seed <= 825 && c.ok; ++seed) {
    Rng r(seed);
    const ProfileBody body = body_from_max_affine(MaxAffine::random(r));
    const auto rep = horizon_glue_check(body, Box::cube(2, -2.5, 2.5), 101);
    c.expect(rep.fraction >= 0.995,
             "glued image identity missed on a random body");
  }

  // the standard body's symmetrized image is the closed unit ball
  if (c.ok) {
    const Box box = Box::cube(2, -1.5, 1.5);
    const auto img = tilde_j(body_k0().oracle(), box);
    const auto ball = ball_oracle(2, 1.0, box);
    c.expect(compare_on_grid(img, ball, box, 101).fraction >= 0.995,
             "standard body image is not the unit ball");
  }

  // the ring of radius sqrt(2) reproduces itself under the flower dual
  if (c.ok) {
    const Box box = Box::cube(2, -4.0, 4.0);
    const auto ring = MembershipOracle::from_margin(2, box, [](const Vec& y) {
      return std::hypot(y[0], y[1]) - std::sqrt(2.0);
    });
    const auto gens = sample_oracle_to_points(ring, 61);
    const auto dual = flower_dual(gens, box);
    c.expect(compare_on_grid(ring, dual, box, 101).fraction >= 0.995,
             "the ring is not fixed by the flower dual");
  }

  // the constant width triangle is the ball intersection over its boundary
  if (c.ok) {
    const Reuleaux tri(1.0);
    const auto region = tri.region();
    const auto meet = ball_intersection(tri.boundary(240), 1.0);
    c.expect(compare_on_grid(region, meet, region.box, 101).fraction >= 0.995,
             "constant width region is not the ball intersection");
  }
  why = c.why;
  return c.ok;
}

// Grid conjugates contract under double application, stabilize after three,
// and fix the model profiles.
bool grid_conjugates_behave(std::string& why) {
  Check c;
  const Box line3 = Box::cube(1, -3.0, 3.0);
  Rng rng(831);

  for (int t = 0; t < 20 && c.ok; ++t) {
    GridFunction f = GridFunction::on(line3, {101, 1});
    for (auto& v : f.values) v = rng.uniform(-1.0, 3.0);
    const GridFunction l = legendre(f);
    const GridFunction ll = legendre(l);
    const GridFunction lll = legendre(ll);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      c.expect(ll.values[i] <= f.values[i] + 1e-12,
               "double conjugate rose above the function");
      c.expect(std::fabs(lll.values[i] - l.values[i]) <= 1e-12,
               "triple conjugate drifted from the single one");
    }
  }

  // the halved square is its own conjugate up to one grid step
  {
    const GridFunction q = GridFunction::sample(
        line3, {201, 1}, [](const Vec& p) { return 0.5 * p[0] * p[0]; });
    const GridFunction lq = legendre(q);
    const double h = 6.0 / 200.0;
    for (std::size_t j = 0; j < lq.values.size(); ++j) {
      const double y = lq.node(j)[0];
      c.expect(std::fabs(lq.values[j] - 0.5 * y * y) <= h * 3.0 + 1e-12,
               "conjugate of the halved square strayed");
    }
  }

  // the profile transform fixes the hyperboloid profile
  const GridFunction hyp = GridFunction::sample(
      line3, {301, 1}, [](const Vec& p) { return std::hypot(p[0], 1.0); });
  {
    const GridFunction tp = dual_polar_functional(hyp);
    for (std::size_t j = 0; j < tp.values.size(); ++j)
      c.expect(std::fabs(tp.values[j] - std::hypot(tp.node(j)[0], 1.0)) <= 2e-2,
               "profile transform moved the hyperboloid profile");
  }

  // ... and the quadrant profile, whose blocked half must blow up
  {
    GridFunction quad = GridFunction::on(line3, {301, 1});
    for (std::size_t j = 0; j < quad.values.size(); ++j)
      quad.values[j] = quad.node(j)[0] >= 0.0 ? 1.0 : kInf;
    const GridFunction tq = dual_polar_functional(quad);
    for (std::size_t j = 0; j < tq.values.size(); ++j) {
      const double y = tq.node(j)[0];
      if (y >= 0.0)
        c.expect(std::fabs(tq.values[j] - 1.0) <= 2e-2,
                 "profile transform moved the quadrant profile");
      else
        c.expect(tq.values[j] >= 1.0 + 2.9 * (-y),
                 "quadrant profile must diverge on the blocked half");
    }
  }

  // the ratio transform also fixes the hyperboloid profile
  {
    const GridFunction tr = rotem_transform(hyp);
    for (std::size_t j = 0; j < tr.values.size(); ++j)
      c.expect(std::fabs(tr.values[j] - std::hypot(tr.node(j)[0], 1.0)) <= 2e-2,
               "ratio transform moved the hyperboloid profile");
  }

  // on a two homogeneous input the ratio conjugate matches the conjugate
  {
    const GridFunction q = GridFunction::sample(
        line3, {301, 1}, [](const Vec& p) { return 0.5 * p[0] * p[0]; });
    const GridFunction a = a_transform(q);
    const GridFunction lq = legendre(q);
    for (std::size_t j = 0; j < a.values.size(); ++j) {
      const double y = a.node(j)[0];
      if (std::fabs(y) >= 1.0)
        c.expect(std::fabs(a.values[j] - lq.values[j]) <=
                     5e-5 * y * y * y * y + 1e-12,
                 "ratio conjugate differs from the conjugate");
    }
  }
  why = c.why;
  return c.ok;
}

// The gaussian mass product: equality within noise for the self dual body,
// and under the cap for perturbed bodies from the same class.
bool mass_product_at_the_cap(std::string& why) {
  Check c;
  const std::vector<double> grid = linear_grid(-30.0, 30.0, 1201);

  const auto rep = bs_experiment(body_k0(), grid, 1000000, 841);
  c.expect(rep.holds, "self dual product exceeded the cap");
  c.expect(std::fabs(rep.margin_sigma) <= 3.0,
           "self dual product strayed from equality beyond noise");
  c.expect(rep.symmetry_fraction == 1.0, "self dual body must sample even");

  for (std::uint64_t seed = 842; seed <= 846 && c.ok; ++seed) {
    Rng r(seed);
    const double alpha = 0.7 + 0.6 * r.uniform();
    const double beta = 0.1 + 0.5 * r.uniform();
    const double delta = 0.1 + 0.6 * r.uniform();
    const ProfileBody body{
        [alpha, beta, delta](double x) {
          return alpha * std::hypot(x, 1.0) + beta * std::fabs(x) + delta;
        },
        Box{{-4.0, 0.0}, {4.0, 8.0}}};
    const auto pr = bs_experiment(body, grid, 1000000, seed);
    c.expect(pr.symmetry_fraction == 1.0, "perturbed body must sample even");
    c.expect(pr.holds, "perturbed body exceeded the cap");
  }

  if (c.ok) {
    const auto direct = gaussian_measure(body_k0().oracle(), 1000000, 847);
    c.expect(std::fabs(direct.mean - gamma2_k0_reference()) <=
                 3.0 * direct.std_error,
             "sampled mass strayed from the quadrature reference");
  }
  why = c.why;
  return c.ok;
}

// The carried measure matches direct gaussian mass through the point map,
// and the section product inequality holds for the two model pairs.
bool carried_measure_and_sections(std::string& why) {
  Check c;

  for (std::uint64_t seed = 851; seed <= 855 && c.ok; ++seed) {
    Rng r(seed);
    const ProfileBody body = body_from_max_affine(MaxAffine::random(r));
    const auto k = body.oracle();
    const auto direct = gaussian_measure(k, 400000, seed + 100);
    const auto carried =
        nu_measure(j_transform(k, Box::cube(2, -8.0, 8.0)), 400000, seed + 200);
    c.expect(std::fabs(direct.mean - carried.mean) <=
                 3.0 * std::hypot(direct.std_error, carried.std_error),
             "carried mass strayed from the direct mass");
  }

  if (c.ok) {
    const Box box = Box::cube(2, -1.5, 1.5);
    const auto ball = ball_oracle(2, 1.0, box);
    c.expect(prekopa_condition_check(ball, ball, 10, 40000, 856).holds,
             "section product failed on the ball");
  }
  if (c.ok) {
    const Box box = Box::cube(2, -1.5, 1.5);
    HalfspaceSet square{2, {}};
    HalfspaceSet diamond{2, {}};
    for (const double s0 : {-1.0, 1.0}) {
      square.constraints.push_back({Vec{s0, 0.0}, 1.0, Sense::Le});
      square.constraints.push_back({Vec{0.0, s0}, 1.0, Sense::Le});
      for (const double s1 : {-1.0, 1.0})
        diamond.constraints.push_back({Vec{s0, s1}, 1.0, Sense::Le});
    }
    c.expect(prekopa_condition_check(square.oracle(box), diamond.oracle(box),
                                     10, 40000, 857)
                 .holds,
             "section product failed on the square slab pair");
  }
  why = c.why;
  return c.ok;
}

struct Criterion {
  const char* name;
  double budget_seconds;  // zero means no explicit budget
  bool (*run)(std::string&);
};

}  // namespace

int main() {
  const std::array<Criterion, 8> criteria{{
      {"dual laws across all symmetric four point relations", 10.0,
       all_four_point_relations},
      {"transform tables round trip through induced relations", 0.0,
       table_relation_round_trips},
      {"small counterexamples classify exactly", 0.0,
       counterexamples_classify_exactly},
      {"greedy growth lands on maximal almost invariant sets", 0.0,
       greedy_growth_is_maximal},
      {"plane dualities match their closed forms on grids", 60.0,
       plane_dualities_match_closed_forms},
      {"grid conjugates contract, stabilize, and fix profiles", 0.0,
       grid_conjugates_behave},
      {"gaussian mass product stays at the self dual cap", 120.0,
       mass_product_at_the_cap},
      {"carried measure and section inequalities hold", 120.0,
       carried_measure_and_sections},
  }};

  bool all_ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string why;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = criteria[i].run(why);
    } catch (const std::exception& e) {
      ok = false;
      why = std::string("unexpected exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (ok && criteria[i].budget_seconds > 0.0 &&
        seconds > criteria[i].budget_seconds) {
      ok = false;
      why = "over the time budget";
    }
    all_ok = all_ok && ok;
    std::printf("%zu. %-55s %s  (%.1f s)%s%s\n", i + 1, criteria[i].name,
                ok ? "PASS" : "FAIL", seconds, ok ? "" : "  ",
                ok ? "" : why.c_str());
  }
  std::printf("%s\n",
              all_ok ? "all acceptance criteria passed" : "ACCEPTANCE FAILED");
  return all_ok ? 0 : 1;
}
