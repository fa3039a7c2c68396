#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace orqi::geom {

constexpr int kMaxDim = 8;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Small fixed-capacity vector; geometry here lives in low dimension.
struct Vec {
  std::array<double, kMaxDim> c{};
  int n = 0;

  Vec() = default;
  Vec(std::initializer_list<double> xs) {
    if (xs.size() > kMaxDim) throw std::invalid_argument("Vec: dimension capped at 8");
    n = static_cast<int>(xs.size());
    int i = 0;
    for (double x : xs) c[static_cast<std::size_t>(i++)] = x;
  }
  static Vec zero(int dim) {
    Vec v;
    v.n = dim;
    return v;
  }
  static Vec axis(int dim, int k, double scale = 1.0) {
    Vec v = zero(dim);
    v[k] = scale;
    return v;
  }

  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  int dim() const { return n; }

  Vec operator+(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < n; ++i) r[i] += o[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < n; ++i) r[i] -= o[i];
    return r;
  }
  Vec operator*(double s) const {
    Vec r = *this;
    for (int i = 0; i < n; ++i) r[i] *= s;
    return r;
  }
  bool operator==(const Vec& o) const {
    if (n != o.n) return false;
    for (int i = 0; i < n; ++i)
      if (c[static_cast<std::size_t>(i)] != o.c[static_cast<std::size_t>(i)]) return false;
    return true;
  }
};

inline double dot(const Vec& a, const Vec& b) {
  double s = 0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}
inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }
inline double dist(const Vec& a, const Vec& b) { return norm(a - b); }

/// Axis-aligned box; infinite entries mark unbounded axes.
struct Box {
  Vec lo, hi;

  static Box cube(int dim, double lo_v, double hi_v) {
    Box b;
    b.lo = Vec::zero(dim);
    b.hi = Vec::zero(dim);
    for (int i = 0; i < dim; ++i) {
      b.lo[i] = lo_v;
      b.hi[i] = hi_v;
    }
    return b;
  }
  int dim() const { return lo.dim(); }
  bool contains(const Vec& p) const {
    for (int i = 0; i < dim(); ++i)
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
  }
  double scale() const {
    double s = 1.0;
    for (int i = 0; i < dim(); ++i) {
      if (std::isfinite(lo[i])) s = std::max(s, std::fabs(lo[i]));
      if (std::isfinite(hi[i])) s = std::max(s, std::fabs(hi[i]));
    }
    return s;
  }
  Box inflated(double r) const {
    Box b = *this;
    for (int i = 0; i < dim(); ++i) {
      b.lo[i] -= r;
      b.hi[i] += r;
    }
    return b;
  }
};

/// Finite generator list; transforms consume these as the set they span.
struct PointSet {
  int dim = 0;
  std::vector<Vec> points;

  static PointSet of(std::vector<Vec> pts) {
    if (pts.empty()) throw std::invalid_argument("PointSet: need at least one point");
    PointSet p;
    p.dim = pts.front().dim();
    for (const auto& q : pts)
      if (q.dim() != p.dim) throw std::invalid_argument("PointSet: mixed dimensions");
    p.points = std::move(pts);
    return p;
  }

  Box bounding_box() const {
    Box b;
    b.lo = points.front();
    b.hi = points.front();
    for (const auto& p : points)
      for (int i = 0; i < dim; ++i) {
        b.lo[i] = std::min(b.lo[i], p[i]);
        b.hi[i] = std::max(b.hi[i], p[i]);
      }
    return b;
  }
};

enum class Sense { Ge, Le };

struct Halfspace {
  Vec normal;
  double offset = 0;
  Sense sense = Sense::Ge;

  /// Signed slack, nonnegative inside.
  double slack(const Vec& y) const {
    const double v = dot(normal, y) - offset;
    return sense == Sense::Ge ? v : -v;
  }
};

struct MembershipOracle;

/// Finite intersection of halfspaces. No constraints means all of space.
struct HalfspaceSet {
  int dim = 0;
  std::vector<Halfspace> constraints;

  bool contains(const Vec& y) const {
    for (const auto& h : constraints)
      if (h.slack(y) < 0) return false;
    return true;
  }
  double margin(const Vec& y) const {
    double m = kInf;
    for (const auto& h : constraints) m = std::min(m, h.slack(y));
    return m;
  }
  MembershipOracle oracle(const Box& box) const;
};

/// Set given behaviorally: a membership predicate plus, when available, a
/// signed margin (positive inside) used to excuse near-boundary queries.
/// The declared box is where the predicate is trusted and sampled.
struct MembershipOracle {
  int dim = 0;
  Box box;
  std::function<bool(const Vec&)> contains;
  std::function<double(const Vec&)> margin;  // may be empty

  static MembershipOracle from_margin(int dim, Box box, std::function<double(const Vec&)> m,
                                      bool strict = false) {
    MembershipOracle o;
    o.dim = dim;
    o.box = box;
    o.margin = m;
    if (strict)
      o.contains = [m](const Vec& y) { return m(y) > 0; };
    else
      o.contains = [m](const Vec& y) { return m(y) >= 0; };
    return o;
  }
};

inline MembershipOracle HalfspaceSet::oracle(const Box& box) const {
  HalfspaceSet copy = *this;
  return MembershipOracle::from_margin(
      dim, box, [copy](const Vec& y) { return copy.margin(y); });
}

/// Gauge of a star body sampled on a fixed direction grid. Values live in
/// [0, +inf]: 0 marks a direction in which the body is unbounded, +inf one
/// in which it vanishes; both appear as soon as duals are taken, and the
/// wider range keeps reciprocation a clean involution.
struct RadialFunction {
  int dim = 0;
  std::vector<Vec> directions;
  std::vector<double> values;

  void validate() const {
    if (directions.size() != values.size())
      throw std::invalid_argument("RadialFunction: one value per direction");
    for (double v : values)
      if (std::isnan(v) || v < 0) throw std::invalid_argument("RadialFunction: values in [0, inf]");
  }
};

/// Direction grids: evenly spaced angles in the plane, Fibonacci sphere in
/// three dimensions.
inline std::vector<Vec> make_directions(int dim, int count) {
  if (count < 1) throw std::invalid_argument("make_directions: count must be positive");
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * M_PI * i / count;
      out.push_back(Vec{std::cos(a), std::sin(a)});
    }
  } else if (dim == 3) {
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      out.push_back(Vec{r * std::cos(ga * i), r * std::sin(ga * i), z});
    }
  } else {
    throw std::invalid_argument("make_directions: only dimensions 2 and 3 have grids");
  }
  return out;
}

constexpr int kDefaultDirections2d = 720;
constexpr int kDefaultDirections3d = 2000;

inline std::vector<Vec> default_directions(int dim) {
  return make_directions(dim, dim == 2 ? kDefaultDirections2d : kDefaultDirections3d);
}

struct AgreementReport {
  long total = 0;
  long excluded = 0;  // within the boundary band of either side
  long agree = 0;
  double fraction = 1.0;
};

constexpr double kBoundaryBandScale = 1e-9;

/// Pointwise agreement of two oracles over a grid. Nodes whose margin on
/// either side sits within the boundary band are left out of the count.
inline AgreementReport compare_on_grid(const MembershipOracle& a, const MembershipOracle& b,
                                       const Box& box, int res) {
  if (a.dim != b.dim || a.dim != box.dim())
    throw std::invalid_argument("compare_on_grid: dimension mismatch");
  if (res < 2) throw std::invalid_argument("compare_on_grid: need at least two nodes per axis");
  const double band = kBoundaryBandScale * box.scale();
  AgreementReport rep;
  std::vector<int> ix(static_cast<std::size_t>(box.dim()), 0);
  const long nodes_per_axis = res;
  long total_nodes = 1;
  for (int d = 0; d < box.dim(); ++d) total_nodes *= nodes_per_axis;
  for (long t = 0; t < total_nodes; ++t) {
    long rest = t;
    Vec p = Vec::zero(box.dim());
    for (int d = 0; d < box.dim(); ++d) {
      const int i = static_cast<int>(rest % nodes_per_axis);
      rest /= nodes_per_axis;
      p[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * i / (res - 1);
    }
    ++rep.total;
    const bool band_a = a.margin && std::fabs(a.margin(p)) <= band;
    const bool band_b = b.margin && std::fabs(b.margin(p)) <= band;
    if (band_a || band_b) {
      ++rep.excluded;
      continue;
    }
    if (a.contains(p) == b.contains(p)) ++rep.agree;
  }
  const long counted = rep.total - rep.excluded;
  rep.fraction = counted == 0 ? 1.0 : static_cast<double>(rep.agree) / counted;
  return rep;
}

/// Collects the grid nodes of the box that lie inside the oracle.
inline PointSet sample_oracle_to_points(const MembershipOracle& o, int res) {
  if (res < 2)
    throw std::invalid_argument("sample_oracle_to_points: need at least two nodes per axis");
  std::vector<Vec> pts;
  const int dim = o.box.dim();
  long total_nodes = 1;
  for (int d = 0; d < dim; ++d) total_nodes *= res;
  for (long t = 0; t < total_nodes; ++t) {
    long rest = t;
    Vec p = Vec::zero(dim);
    for (int d = 0; d < dim; ++d) {
      const int i = static_cast<int>(rest % res);
      rest /= res;
      p[d] = o.box.lo[d] + (o.box.hi[d] - o.box.lo[d]) * i / (res - 1);
    }
    if (o.contains(p)) pts.push_back(p);
  }
  if (pts.empty()) throw std::invalid_argument("sample_oracle_to_points: no member nodes found");
  return PointSet::of(std::move(pts));
}

}  // namespace orqi::geom
