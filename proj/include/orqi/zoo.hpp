#pragma once

#include <optional>

#include "orqi/geom.hpp"
#include "orqi/rng.hpp"

namespace orqi::geom {

/// One <= constraint per generator: { y : <x, y> <= 1 for all x in P }.
inline HalfspaceSet polar(const PointSet& p) {
  HalfspaceSet h;
  h.dim = p.dim;
  h.constraints.reserve(p.points.size());
  for (const auto& x : p.points) h.constraints.push_back({x, 1.0, Sense::Le});
  return h;
}

/// One >= constraint per generator: { y : <x, y> >= 1 for all x in P }.
inline HalfspaceSet dual_polar(const PointSet& p) {
  HalfspaceSet h;
  h.dim = p.dim;
  h.constraints.reserve(p.points.size());
  for (const auto& x : p.points) h.constraints.push_back({x, 1.0, Sense::Ge});
  return h;
}

struct ConeLikeVerdict {
  bool ok = true;
  std::optional<Vec> witness;  // member x with some lambda * x outside
  double lambda = 1.0;
  bool origin_member = false;
};

/// Samples the box for members and stretches them by each lambda >= 1;
/// membership must persist. The origin must not be a member.
inline ConeLikeVerdict cone_like_check(const MembershipOracle& k, int samples,
                                       const std::vector<double>& lambdas, std::uint64_t seed) {
  ConeLikeVerdict v;
  if (k.contains(Vec::zero(k.dim))) {
    v.ok = false;
    v.origin_member = true;
    return v;
  }
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    Vec x = Vec::zero(k.dim);
    for (int d = 0; d < k.dim; ++d) x[d] = rng.uniform(k.box.lo[d], k.box.hi[d]);
    if (!k.contains(x)) continue;
    for (double l : lambdas) {
      if (l < 1.0) throw std::invalid_argument("cone_like_check: lambdas must be >= 1");
      const Vec lx = x * l;
      if (!k.box.contains(lx)) continue;  // only judged where the oracle is trusted
      if (!k.contains(lx)) {
        v.ok = false;
        v.witness = x;
        v.lambda = l;
        return v;
      }
    }
  }
  return v;
}

struct ClosestPoint {
  enum class Status { Ok, Degenerate };
  Status status = Status::Ok;
  Vec point;
  double distance = 0;
};

constexpr double kProjectionTol = 1e-9;
constexpr int kProjectionMaxIter = 10000;

/// Closest point of an intersection of halfspaces to the origin, by
/// Dykstra's cyclic projections (plain alternating projections drift for
/// more than two sets). No constraints, or failure to settle inside the
/// set, is reported as degenerate.
inline ClosestPoint closest_point(const HalfspaceSet& k) {
  ClosestPoint cp;
  cp.point = Vec::zero(k.dim);
  if (k.constraints.empty()) {
    cp.status = ClosestPoint::Status::Degenerate;
    return cp;
  }
  const std::size_t m = k.constraints.size();
  std::vector<Vec> memo(m, Vec::zero(k.dim));
  Vec x = Vec::zero(k.dim);
  for (int it = 0; it < kProjectionMaxIter; ++it) {
    const Vec cycle_start = x;
    for (std::size_t i = 0; i < m; ++i) {
      const Vec y = x + memo[i];
      const auto& h = k.constraints[i];
      const double nn = norm2(h.normal);
      Vec proj = y;
      if (nn > 0) {
        double defect = h.slack(y);
        if (defect < 0) {
          const double step = (h.sense == Sense::Ge ? -defect : defect) / nn;
          proj = y + h.normal * step;
        }
      }
      memo[i] = y - proj;
      x = proj;
    }
    if (it > 0 && dist(cycle_start, x) < kProjectionTol && k.margin(x) > -kProjectionTol) break;
  }
  if (k.margin(x) < -1e-6) {
    cp.status = ClosestPoint::Status::Degenerate;  // no feasible point reached
    return cp;
  }
  cp.point = x;
  cp.distance = norm(x);
  return cp;
}

/// Closest point of an oracle-described cone-like set: along each ray the
/// set is a tail [a, inf), so bisection per direction suffices and the
/// nearest entry point over the grid wins.
inline ClosestPoint closest_point(const MembershipOracle& k, const std::vector<Vec>& directions,
                                  double r_max = 1e6) {
  ClosestPoint cp;
  cp.point = Vec::zero(k.dim);
  double best = kInf;
  for (const auto& u : directions) {
    if (!k.contains(u * r_max)) continue;
    double lo = 0, hi = r_max;
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      (k.contains(u * mid) ? hi : lo) = mid;
    }
    if (hi < best) {
      best = hi;
      cp.point = u * hi;
    }
  }
  if (!std::isfinite(best)) {
    cp.status = ClosestPoint::Status::Degenerate;
    return cp;
  }
  cp.distance = best;
  return cp;
}

/// Membership of the subclass with prescribed nearest point: nonempty,
/// nearest point a * u. Reported via the solved nearest point itself.
struct SubclassCertificate {
  ClosestPoint nearest;
  Vec direction;  // unit vector toward the nearest point
  double radius = 0;
};

inline SubclassCertificate subclass_of(const HalfspaceSet& k) {
  SubclassCertificate c;
  c.nearest = closest_point(k);
  if (c.nearest.status == ClosestPoint::Status::Ok && c.nearest.distance > 0) {
    c.direction = c.nearest.point * (1.0 / c.nearest.distance);
    c.radius = c.nearest.distance;
  }
  return c;
}

inline SubclassCertificate subclass_of(const MembershipOracle& k,
                                       const std::vector<Vec>& directions) {
  SubclassCertificate c;
  c.nearest = closest_point(k, directions);
  if (c.nearest.status == ClosestPoint::Status::Ok && c.nearest.distance > 0) {
    c.direction = c.nearest.point * (1.0 / c.nearest.distance);
    c.radius = c.nearest.distance;
  }
  return c;
}

/// { y : d(y, P) >= eps } for the metric at hand; margin is the slack of
/// the farthest-from-violate constraint, i.e. min distance minus eps.
inline MembershipOracle neighborhood_complement(
    const PointSet& p, double eps, const Box& box,
    std::function<double(const Vec&, const Vec&)> metric = {}) {
  if (eps <= 0) throw std::invalid_argument("neighborhood_complement: eps must be positive");
  if (!metric) metric = [](const Vec& a, const Vec& b) { return dist(a, b); };
  auto m = [p, eps, metric](const Vec& y) {
    double dmin = kInf;
    for (const auto& x : p.points) dmin = std::min(dmin, metric(x, y));
    return dmin - eps;
  };
  return MembershipOracle::from_margin(p.dim, box, m);
}

/// { y : d(y, x) <= eps for all x in P }: intersection of the eps-balls.
inline MembershipOracle ball_intersection(const PointSet& p, double eps) {
  if (eps <= 0) throw std::invalid_argument("ball_intersection: eps must be positive");
  auto m = [p, eps](const Vec& y) {
    double dmax = 0;
    for (const auto& x : p.points) dmax = std::max(dmax, dist(x, y));
    return eps - dmax;
  };
  return MembershipOracle::from_margin(p.dim, p.bounding_box().inflated(eps), m);
}

/// Strict pairing: { y : <x, y> < |x|^2 |y|^2 / 2 for all x in P }.
/// A generator at the origin empties the result (0 < 0 fails), which is
/// the honest reading of the strict inequality.
inline MembershipOracle flower_dual(const PointSet& p, const Box& box) {
  auto m = [p](const Vec& y) {
    const double ny2 = norm2(y);
    double worst = kInf;
    for (const auto& x : p.points)
      worst = std::min(worst, 0.5 * norm2(x) * ny2 - dot(x, y));
    return worst;
  };
  return MembershipOracle::from_margin(p.dim, box, m, /*strict=*/true);
}

/// Support-function reciprocal on a direction grid: for each direction
/// with positive support h, the slab constraint <y, u> <= 1/h.
inline HalfspaceSet reciprocal(const PointSet& p, const std::vector<Vec>& directions) {
  HalfspaceSet out;
  out.dim = p.dim;
  for (const auto& u : directions) {
    double h = -kInf;
    for (const auto& x : p.points) h = std::max(h, dot(x, u));
    if (h > 0) out.constraints.push_back({u * h, 1.0, Sense::Le});
  }
  return out;
}

/// Interpolated pairing { y : (1-l) |x||y| + l <x, y> <= 1 for all x }.
/// l = 1 is the polar; l = 1/2 matches the support reciprocal.
inline MembershipOracle reciprocal_type(const PointSet& p, double lambda, const Box& box) {
  if (lambda < 0 || lambda > 1)
    throw std::invalid_argument("reciprocal_type: lambda must lie in [0, 1]");
  auto m = [p, lambda](const Vec& y) {
    const double ny = norm(y);
    double worst = kInf;
    for (const auto& x : p.points)
      worst = std::min(worst, 1.0 - ((1.0 - lambda) * norm(x) * ny + lambda * dot(x, y)));
    return worst;
  };
  return MembershipOracle::from_margin(p.dim, box, m);
}

/// Sign-free pairing { y : sum_i |x_i| |y_i| <= 1 for all x in P }; the
/// result is unconditional whatever the generators are.
inline MembershipOracle unconditional_dual(const PointSet& p, const Box& box) {
  auto m = [p](const Vec& y) {
    double worst = kInf;
    for (const auto& x : p.points) {
      double s = 0;
      for (int i = 0; i < p.dim; ++i) s += std::fabs(x[i]) * std::fabs(y[i]);
      worst = std::min(worst, 1.0 - s);
    }
    return worst;
  };
  return MembershipOracle::from_margin(p.dim, box, m);
}

/// Gauge reciprocal on the shared direction grid, with 1/0 = inf and
/// 1/inf = 0 so that unbounded and empty directions trade places.
inline RadialFunction star_dual(const RadialFunction& g) {
  g.validate();
  RadialFunction out = g;
  for (auto& v : out.values) v = v == 0.0 ? kInf : (std::isinf(v) ? 0.0 : 1.0 / v);
  return out;
}

}  // namespace orqi::geom
