#pragma once

#include "orqi/bodies.hpp"

namespace orqi::geom {

/// Fractional-linear point map (x, t) -> (x / t, 1 / t) on the open upper
/// half space; applying it twice gives the identity.
inline Vec j_point(const Vec& p) {
  const int n = p.dim();
  const double t = p[n - 1];
  if (t <= 0) throw std::invalid_argument("j_point: last coordinate must be positive");
  Vec q = p * (1.0 / t);
  q[n - 1] = 1.0 / t;
  return q;
}

/// Image of an upper-half-space set under the point map. Membership pulls
/// back through the map itself; everything at or below the horizon is out.
inline MembershipOracle j_transform(const MembershipOracle& k, const Box& box) {
  auto inner = k;
  return MembershipOracle::from_margin(k.dim, box, [inner](const Vec& y) {
    const double s = y[y.dim() - 1];
    if (s <= 0) return s - 1e-12;
    return inner.margin ? inner.margin(j_point(y)) : (inner.contains(j_point(y)) ? 1.0 : -1.0);
  });
}

/// Symmetrized image: the union of the image and its reflection through
/// the horizon. On the horizon itself membership means the ray (x, 1) * r
/// eventually enters the set; a geometric probe settles that.
inline MembershipOracle tilde_j(const MembershipOracle& k, const Box& box) {
  auto inner = k;
  return MembershipOracle::from_margin(k.dim, box, [inner](const Vec& y) {
    const int n = y.dim();
    const double s = y[n - 1];
    if (s != 0.0) {
      Vec up = y;
      up[n - 1] = std::fabs(s);
      return inner.margin ? inner.margin(j_point(up))
                          : (inner.contains(j_point(up)) ? 1.0 : -1.0);
    }
    Vec probe = y;
    for (double t = 1.0; t <= 1e9; t *= 4.0) {
      for (int i = 0; i < n - 1; ++i) probe[i] = y[i] * t;
      probe[n - 1] = t;
      if (inner.contains(probe)) return 0.0;  // horizon points sit on the boundary
    }
    return -1.0;
  });
}

/// Lower boundary of an upper-half-plane body, one generator per grid
/// column, found by bisection in t. Columns that never enter the body are
/// skipped. These are the binding generators for pairings of >= 1 type.
inline PointSet lower_envelope_generators(const MembershipOracle& k,
                                          const std::vector<double>& columns, double t_max) {
  std::vector<Vec> pts;
  for (double x : columns) {
    if (!k.contains(Vec{x, t_max})) continue;
    double lo = 0.0, hi = t_max;
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (k.contains(Vec{x, mid}) ? hi : lo) = mid;
    }
    pts.push_back(Vec{x, hi});
  }
  if (pts.empty())
    throw std::invalid_argument("lower_envelope_generators: body missed every column");
  return PointSet::of(std::move(pts));
}

/// Dual of a finite generator list under <x, y> >= 1, as a margin oracle.
inline MembershipOracle dual_polar_oracle(const PointSet& gens, const Box& box) {
  auto pts = gens.points;
  return MembershipOracle::from_margin(gens.dim, box, [pts](const Vec& y) {
    double worst = kInf;
    for (const auto& g : pts) worst = std::min(worst, dot(g, y) - 1.0);
    return worst;
  });
}

struct SelfDualityReport {
  AgreementReport agreement;
  double nearest_distance = 0;  // distance of the body's nearest point to 0
};

/// Compares a body against the dual of its own sampled generators.
inline SelfDualityReport self_duality_report(const MembershipOracle& body, const Box& compare_box,
                                             int res, const std::vector<double>& columns,
                                             double t_max) {
  SelfDualityReport rep;
  const PointSet gens = lower_envelope_generators(body, columns, t_max);
  const MembershipOracle dual = dual_polar_oracle(gens, compare_box);
  MembershipOracle clipped = body;
  clipped.box = compare_box;
  rep.agreement = compare_on_grid(clipped, dual, compare_box, res);
  double best = kInf;
  for (const auto& g : gens.points) best = std::min(best, norm(g));
  rep.nearest_distance = best;
  return rep;
}

enum class PolarityInvariant { K0, K1, K2 };

inline ProfileBody dual_polarity_invariant_body(PolarityInvariant which, double span = 4.0) {
  switch (which) {
    case PolarityInvariant::K0: return body_k0(span);
    case PolarityInvariant::K1: return body_k1(span);
    default: return body_k2(span);
  }
}

/// Column grid reaching far out in x so that the truncated dual hugs the
/// true one near the comparison window.
inline std::vector<double> wide_columns(double core, int n_core = 801) {
  return profile_grid(core, n_core, 2000.0, 160);
}

/// Glues an invariant set out of a one-sided body with nearest point
/// (0, 1): its dual on the left of the vertical axis, its double dual on
/// the right. For dual-closed inputs the glue is again self-dual.
inline MembershipOracle glued_invariant_from_half(const MembershipOracle& k, const Box& box) {
  const std::vector<double> right_columns = profile_grid(6.0, 601, 2000.0, 160);
  std::vector<double> nonneg;
  for (double x : right_columns)
    if (x >= 0) nonneg.push_back(x);
  const PointSet k_gens = lower_envelope_generators(k, nonneg, 4000.0);
  const MembershipOracle k_dual = dual_polar_oracle(k_gens, Box::cube(2, -4000.0, 4000.0));
  const PointSet kd_gens =
      lower_envelope_generators(k_dual, profile_grid(6.0, 601, 2000.0, 160), 4000.0);
  const MembershipOracle k_ddual = dual_polar_oracle(kd_gens, box);

  auto left = k_dual, right = k_ddual;
  return MembershipOracle::from_margin(2, box, [left, right](const Vec& y) {
    if (y[1] < 0) return y[1];
    return y[0] < 0 ? left.margin(y) : right.margin(y);
  });
}

/// The symmetrized image intertwines negated polarity with the dual
/// pairing: -(tilde_j K)^o = tilde_j(TK). Both sides are materialized on a
/// grid; the standard body's image must also match the unit ball.
inline AgreementReport horizon_glue_check(const ProfileBody& body, const Box& compare_box,
                                          int res) {
  // Left side: polar of the symmetrized image, negated. The image boundary
  // is the curve (x, phi(x)) / phi-scaled; sample it directly.
  std::vector<Vec> image_gens;
  for (double x : profile_grid(40.0, 2001, 4000.0, 240)) {
    const double p = body.phi(x);
    if (!std::isfinite(p)) continue;
    image_gens.push_back(Vec{x / p, 1.0 / p});
    image_gens.push_back(Vec{x / p, -1.0 / p});
  }
  const PointSet gens = PointSet::of(std::move(image_gens));
  auto pts = gens.points;
  const MembershipOracle lhs = MembershipOracle::from_margin(2, compare_box, [pts](const Vec& y) {
    const Vec neg = y * -1.0;
    double worst = kInf;
    for (const auto& g : pts) worst = std::min(worst, 1.0 - dot(g, neg));
    return worst;
  });

  // Right side: symmetrized image of the dual body.
  const std::vector<double> xs = profile_grid(40.0, 4001, 4000.0, 240);
  ProfileDual dual = ProfileDual::of(body, xs, Box::cube(2, -4000.0, 4000.0));
  const MembershipOracle dual_oracle = dual.oracle();
  const MembershipOracle rhs = tilde_j(dual_oracle, compare_box);

  return compare_on_grid(lhs, rhs, compare_box, res);
}

}  // namespace orqi::geom
