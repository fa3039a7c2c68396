#pragma once

#include "orqi/zoo.hpp"

namespace orqi::geom {

/// x-grids for sampling profile curves. The geometric grid concentrates
/// points near the origin while still reaching far out, which is what the
/// far constraints of unbounded bodies need.
inline std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("linear_grid: need at least two nodes");
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return xs;
}

inline std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("geometric_grid: need at least two nodes");
  if (lo <= 0 || hi <= lo) throw std::invalid_argument("geometric_grid: need 0 < lo < hi");
  std::vector<double> xs(static_cast<std::size_t>(n));
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  return xs;
}

/// Symmetric grid: dense linear core plus geometric tails on both sides.
inline std::vector<double> profile_grid(double core, int n_core, double reach, int n_tail) {
  std::vector<double> xs = linear_grid(-core, core, n_core);
  for (double x : geometric_grid(core, reach, n_tail)) {
    xs.push_back(x);
    xs.push_back(-x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

/// Planar body of the form { (x, t) : t >= phi(x) } for a scalar profile.
/// phi may return +inf to cut the body off in x.
struct ProfileBody {
  std::function<double(double)> phi;
  Box box;  // region of interest for sampling and comparison

  bool contains_xt(double x, double t) const { return t >= phi(x); }

  MembershipOracle oracle() const {
    auto f = phi;
    return MembershipOracle::from_margin(2, box, [f](const Vec& y) {
      const double p = f(y[0]);
      if (std::isinf(p)) return -kInf;
      return y[1] - p;
    });
  }

  /// Points on the graph of phi; the binding constraints of the dual all
  /// sit on this curve, so these are the generators that matter.
  PointSet generators(const std::vector<double>& xs) const {
    std::vector<Vec> pts;
    pts.reserve(xs.size());
    for (double x : xs) {
      const double p = phi(x);
      if (std::isfinite(p)) pts.push_back(Vec{x, p});
    }
    return PointSet::of(std::move(pts));
  }
};

/// Dual of a profile body under the pairing <x, y> >= 1, evaluated fast:
/// for v >= 0 the constraint value x*u + phi(x)*v is convex in x (phi
/// convex), so ternary search over the sampled grid finds the minimum;
/// for v < 0 it is concave and the endpoints decide.
struct ProfileDual {
  std::vector<double> xs;    // ascending sample grid
  std::vector<double> phis;  // finite phi values on the grid
  Box box;

  static ProfileDual of(const ProfileBody& body, const std::vector<double>& grid, Box box) {
    ProfileDual d;
    d.box = box;
    for (double x : grid) {
      const double p = body.phi(x);
      if (std::isfinite(p)) {
        d.xs.push_back(x);
        d.phis.push_back(p);
      }
    }
    if (d.xs.size() < 2) throw std::invalid_argument("ProfileDual: profile nowhere finite");
    return d;
  }

  double margin(const Vec& y) const {
    const double u = y[0], v = y[1];
    if (v < 0) return v;  // the body is unbounded upward, so its dual never dips below
    auto val = [&](std::size_t i) { return xs[i] * u + phis[i] * v; };
    const std::size_t m = xs.size();
    std::size_t lo = 0, hi = m - 1;
    while (hi - lo > 2) {
      const std::size_t m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      if (val(m1) < val(m2))
        hi = m2;
      else
        lo = m1;
    }
    double best = val(lo);
    for (std::size_t i = lo + 1; i <= hi; ++i) best = std::min(best, val(i));
    return best - 1.0;
  }

  MembershipOracle oracle() const {
    ProfileDual copy = *this;
    return MembershipOracle::from_margin(2, box, [copy](const Vec& y) { return copy.margin(y); });
  }
};

/// Convex piecewise-affine profile max(pieces), evaluated exactly.
/// Keeping intercepts in [0, 1] and one constant piece at 1 keeps the
/// epigraph inside the cone-like class with nearest point (0, 1).
struct MaxAffine {
  std::vector<std::pair<double, double>> pieces;  // (slope, intercept)

  double operator()(double x) const {
    double m = -kInf;
    for (const auto& [a, b] : pieces) m = std::max(m, a * x + b);
    return m;
  }
  double max_slope() const {
    double m = -kInf;
    for (const auto& [a, b] : pieces) m = std::max(m, a);
    return m;
  }
  double min_slope() const {
    double m = kInf;
    for (const auto& [a, b] : pieces) m = std::min(m, a);
    return m;
  }

  /// Seeded random profile with growth in both directions.
  static MaxAffine random(Rng& rng, int extra_pieces = 3) {
    MaxAffine f;
    f.pieces.emplace_back(0.0, 1.0);
    f.pieces.emplace_back(rng.uniform(0.5, 3.0), rng.uniform(0.0, 0.9));
    f.pieces.emplace_back(-rng.uniform(0.5, 3.0), rng.uniform(0.0, 0.9));
    for (int i = 0; i < extra_pieces; ++i)
      f.pieces.emplace_back(rng.uniform(-2.0, 2.0), rng.uniform(0.0, 0.9));
    return f;
  }
};

// Named bodies used across tests and the command line tool.

/// Upper hyperboloid branch { (x, t) : t >= sqrt(x^2 + 1) }; fixed by the
/// dual polarity and extremal for its measure product.
inline ProfileBody body_k0(double span = 4.0) {
  return {[](double x) { return std::hypot(x, 1.0); },
          Box{{-span, 0.0}, {span, 2.0 * span}}};
}

/// Quadrant body { (x, t) : x >= 0, t >= 1 }, also fixed by the dual
/// polarity but lopsided.
inline ProfileBody body_k1(double span = 4.0) {
  return {[](double x) { return x >= 0 ? 1.0 : kInf; },
          Box{{-span, 0.0}, {span, 2.0 * span}}};
}

/// Third invariant profile: slope-one wings glued to a flat middle.
inline ProfileBody body_k2(double span = 4.0) {
  return {[](double x) {
            if (x >= 0) return x + 1.0;
            if (x >= -1.0) return 1.0;
            return -x;
          },
          Box{{-span, 0.0}, {span, 2.0 * span}}};
}

/// Vertical slab over the unit interval times {1}: the graph body whose
/// dual collapses to a ray.
inline ProfileBody body_slab_graph(double span = 4.0) {
  return {[](double) { return 1.0; }, Box{{-span, 0.0}, {span, 2.0 * span}}};
}

inline ProfileBody body_from_max_affine(const MaxAffine& f, double span = 4.0) {
  return {[f](double x) { return f(x); }, Box{{-span, 0.0}, {span, 2.0 * span}}};
}

/// Unit square corners, the standard polarity example.
inline PointSet square_corners() {
  return PointSet::of({Vec{1, 1}, Vec{1, -1}, Vec{-1, 1}, Vec{-1, -1}});
}

inline MembershipOracle ball_oracle(int dim, double radius, const Box& box) {
  return MembershipOracle::from_margin(dim, box,
                                       [radius](const Vec& y) { return radius - norm(y); });
}

/// Reuleaux triangle of width eps: intersection of three discs of radius
/// eps centered at the corners of an equilateral triangle of side eps.
struct Reuleaux {
  double eps;
  std::array<Vec, 3> corners;

  explicit Reuleaux(double eps_) : eps(eps_) {
    corners = {Vec{0.0, 0.0}, Vec{eps, 0.0}, Vec{eps / 2.0, eps * std::sqrt(3.0) / 2.0}};
  }

  MembershipOracle region() const {
    auto cs = corners;
    const double e = eps;
    Box box = Box::cube(2, -0.25 * eps, 1.25 * eps);
    return MembershipOracle::from_margin(2, box, [cs, e](const Vec& y) {
      double worst = kInf;
      for (const auto& c : cs) worst = std::min(worst, e - dist(c, y));
      return worst;
    });
  }

  /// Dense boundary sample: each arc is centered at one corner and joins
  /// the other two.
  PointSet boundary(int per_arc) const {
    std::vector<Vec> pts;
    for (int i = 0; i < 3; ++i) {
      const Vec& c = corners[static_cast<std::size_t>(i)];
      const Vec& a = corners[static_cast<std::size_t>((i + 1) % 3)];
      const Vec& b = corners[static_cast<std::size_t>((i + 2) % 3)];
      const double t0 = std::atan2(a[1] - c[1], a[0] - c[0]);
      const double t1 = std::atan2(b[1] - c[1], b[0] - c[0]);
      const double sweep = std::remainder(t1 - t0, 2.0 * M_PI);  // short arc, 60 degrees here
      for (int k = 0; k < per_arc; ++k) {
        const double t = t0 + sweep * k / (per_arc - 1);
        pts.push_back(Vec{c[0] + eps * std::cos(t), c[1] + eps * std::sin(t)});
      }
    }
    return PointSet::of(std::move(pts));
  }
};

}  // namespace orqi::geom
