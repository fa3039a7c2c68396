#pragma once

#include "orqi/geom.hpp"
#include "orqi/rng.hpp"

namespace orqi::fn {

using geom::Box;
using geom::kInf;
using geom::Vec;

/// Sampled extended-real function on a rectangular node grid. Values may
/// be +inf (absent from the effective domain); NaN is never legal, and
/// -inf appears only as the documented output of a degenerate conjugate.
struct GridFunction {
  int dim = 0;
  Box box;
  std::array<int, 2> res{2, 2};  // nodes per axis, axis 0 slowest
  std::vector<double> values;

  static GridFunction on(const Box& box, std::array<int, 2> res) {
    GridFunction g;
    g.dim = box.dim();
    if (g.dim < 1 || g.dim > 2) throw std::invalid_argument("GridFunction: dim must be 1 or 2");
    g.box = box;
    g.res = res;
    g.values.assign(g.node_count(), 0.0);
    return g;
  }

  template <typename F>
  static GridFunction sample(const Box& box, std::array<int, 2> res, F&& f) {
    GridFunction g = on(box, res);
    for (std::size_t i = 0; i < g.node_count(); ++i) g.values[i] = f(g.node(i));
    return g;
  }

  std::size_t node_count() const {
    std::size_t n = static_cast<std::size_t>(res[0]);
    if (dim == 2) n *= static_cast<std::size_t>(res[1]);
    return n;
  }

  Vec node(std::size_t flat) const {
    Vec p = Vec::zero(dim);
    if (dim == 1) {
      p[0] = box.lo[0] + (box.hi[0] - box.lo[0]) * static_cast<double>(flat) / (res[0] - 1);
    } else {
      const std::size_t i0 = flat / static_cast<std::size_t>(res[1]);
      const std::size_t i1 = flat % static_cast<std::size_t>(res[1]);
      p[0] = box.lo[0] + (box.hi[0] - box.lo[0]) * static_cast<double>(i0) / (res[0] - 1);
      p[1] = box.lo[1] + (box.hi[1] - box.lo[1]) * static_cast<double>(i1) / (res[1] - 1);
    }
    return p;
  }

  double spacing(int axis) const {
    return (box.hi[axis] - box.lo[axis]) / (res[static_cast<std::size_t>(axis)] - 1);
  }

  /// Node sitting at the origin; several transforms anchor there.
  std::size_t origin_node() const {
    for (std::size_t i = 0; i < node_count(); ++i)
      if (geom::norm(node(i)) <= 1e-12) return i;
    throw std::invalid_argument("GridFunction: grid has no node at the origin");
  }

  void validate() const {
    if (values.size() != node_count())
      throw std::invalid_argument("GridFunction: value count must match the grid");
    for (double v : values)
      if (std::isnan(v)) throw std::invalid_argument("GridFunction: NaN value");
  }

  bool all_infinite() const {
    for (double v : values)
      if (!std::isinf(v)) return false;
    return true;
  }
};

/// Midpoint convexity on consecutive node triples along each axis line.
/// Returns the first offending flat index, if any. A +inf sandwiched
/// between finite values breaks convexity and is reported.
inline std::optional<std::size_t> convexity_defect(const GridFunction& f, double tol = 1e-9) {
  auto check_triple = [&](std::size_t a, std::size_t b, std::size_t c) -> bool {
    const double fa = f.values[a], fb = f.values[b], fc = f.values[c];
    if (std::isinf(fb) && fb > 0 && std::isfinite(fa) && std::isfinite(fc)) return false;
    if (std::isinf(fa) || std::isinf(fc) || std::isinf(fb)) return true;
    return fa + fc - 2.0 * fb >= -tol;
  };
  if (f.dim == 1) {
    for (std::size_t i = 1; i + 1 < f.node_count(); ++i)
      if (!check_triple(i - 1, i, i + 1)) return i;
    return std::nullopt;
  }
  const std::size_t r0 = static_cast<std::size_t>(f.res[0]);
  const std::size_t r1 = static_cast<std::size_t>(f.res[1]);
  for (std::size_t i = 0; i < r0; ++i)
    for (std::size_t j = 1; j + 1 < r1; ++j)
      if (!check_triple(i * r1 + j - 1, i * r1 + j, i * r1 + j + 1)) return i * r1 + j;
  for (std::size_t j = 0; j < r1; ++j)
    for (std::size_t i = 1; i + 1 < r0; ++i)
      if (!check_triple((i - 1) * r1 + j, i * r1 + j, (i + 1) * r1 + j)) return i * r1 + j;
  return std::nullopt;
}

/// Discrete sup-conjugate: L f (y) = max_x <x, y> - f(x) over the nodes.
/// An everywhere-+inf input degenerates to everywhere--inf, the one place
/// -inf is a legal value.
inline GridFunction legendre(const GridFunction& f, const Box* dual_box = nullptr) {
  f.validate();
  GridFunction out = GridFunction::on(dual_box ? *dual_box : f.box, f.res);
  if (f.all_infinite()) {
    std::fill(out.values.begin(), out.values.end(), -kInf);
    return out;
  }
  for (std::size_t j = 0; j < out.node_count(); ++j) {
    const Vec y = out.node(j);
    double m = -kInf;
    for (std::size_t i = 0; i < f.node_count(); ++i) {
      const double fx = f.values[i];
      if (std::isinf(fx) && fx > 0) continue;
      m = std::max(m, geom::dot(f.node(i), y) - fx);
    }
    out.values[j] = m;
  }
  return out;
}

/// Node index attaining the conjugate max at y, used to spot activity
/// pinned to the box edge (a sign the true conjugate lives beyond it).
inline std::size_t legendre_argmax(const GridFunction& f, const Vec& y) {
  std::size_t best = 0;
  double m = -kInf;
  for (std::size_t i = 0; i < f.node_count(); ++i) {
    const double fx = f.values[i];
    if (std::isinf(fx) && fx > 0) continue;
    const double t = geom::dot(f.node(i), y) - fx;
    if (t > m) {
      m = t;
      best = i;
    }
  }
  return best;
}

inline bool node_on_box_edge(const GridFunction& f, std::size_t flat) {
  const Vec p = f.node(flat);
  for (int d = 0; d < f.dim; ++d) {
    const double h = f.spacing(d) * 0.5;
    if (p[d] <= f.box.lo[d] + h || p[d] >= f.box.hi[d] - h) return true;
  }
  return false;
}

/// Ratio conjugate for nonnegative convex f vanishing exactly at 0:
/// A f (y) = sup over <x, y> > 1 of (<x, y> - 1) / f(x), empty sup = 0,
/// with 0/0 = 0 and positive/0 = +inf.
inline GridFunction a_transform(const GridFunction& f) {
  f.validate();
  const std::size_t o = f.origin_node();
  if (f.values[o] != 0.0)
    throw std::invalid_argument("a_transform: input must vanish at the origin");
  for (double v : f.values)
    if (v < 0) throw std::invalid_argument("a_transform: input must be nonnegative");
  if (auto bad = convexity_defect(f))
    throw std::invalid_argument("a_transform: input fails midpoint convexity at node " +
                                std::to_string(*bad));
  GridFunction out = GridFunction::on(f.box, f.res);
  for (std::size_t j = 0; j < out.node_count(); ++j) {
    const Vec y = out.node(j);
    double m = 0.0;
    for (std::size_t i = 0; i < f.node_count(); ++i) {
      const double fx = f.values[i];
      if (std::isinf(fx)) continue;  // +inf in the denominator contributes 0
      const double num = geom::dot(f.node(i), y) - 1.0;
      if (num <= 0) continue;
      m = std::max(m, fx == 0.0 ? kInf : num / fx);
    }
    out.values[j] = m;
  }
  return out;
}

/// Cost infimal conjugate: psi^c(x) = min_y c(x, y) - psi(y). A +inf cost
/// dominates its term; the term stack collapsing entirely to +inf leaves
/// +inf. Cost symmetry is sampled, a -inf cost is rejected.
template <typename Cost>
inline GridFunction c_transform(const GridFunction& psi, Cost&& cost,
                                const Box* out_box = nullptr) {
  psi.validate();
  {
    Rng rng(7);
    for (int k = 0; k < 64; ++k) {
      const Vec a = psi.node(rng.below(psi.node_count()));
      const Vec b = psi.node(rng.below(psi.node_count()));
      const double cab = cost(a, b), cba = cost(b, a);
      if (std::isinf(cab) && cab < 0)
        throw std::invalid_argument("c_transform: cost returned -inf");
      if (cab != cba && std::fabs(cab - cba) > 1e-9)
        throw std::invalid_argument("c_transform: cost must be symmetric");
    }
  }
  GridFunction out = GridFunction::on(out_box ? *out_box : psi.box, psi.res);
  for (std::size_t j = 0; j < out.node_count(); ++j) {
    const Vec x = out.node(j);
    double m = kInf;
    for (std::size_t i = 0; i < psi.node_count(); ++i) {
      const double c = cost(x, psi.node(i));
      if (std::isinf(c) && c > 0) continue;  // +inf terms never bind
      m = std::min(m, c - psi.values[i]);
    }
    out.values[j] = m;
  }
  return out;
}

/// Lifts a base cost on points to graph space: the pair ((x, t), (y, s))
/// scores c(x, y) - t - s. Hypographs dualize through it exactly the way
/// functions dualize through the base cost.
template <typename Cost>
struct LiftedCost {
  Cost base;

  double operator()(const Vec& xt, const Vec& ys) const {
    const int n = xt.dim() - 1;
    Vec x = Vec::zero(n), y = Vec::zero(n);
    for (int i = 0; i < n; ++i) {
      x[i] = xt[i];
      y[i] = ys[i];
    }
    const double c = base(x, y);
    if (std::isinf(c) && c > 0) return kInf;
    return c - xt[n] - ys[n];
  }
};

template <typename Cost>
inline LiftedCost<std::decay_t<Cost>> hypograph_cost_bridge(Cost&& cost) {
  return {std::forward<Cost>(cost)};
}

/// Margin of (y, s) in the lifted-cost image of the hypograph of psi:
/// nonnegative exactly when s <= psi^c(y) over the sampled nodes.
template <typename Cost>
inline double hypograph_transform_margin(const GridFunction& psi, Cost&& cost, const Vec& y,
                                         double s) {
  double m = kInf;
  for (std::size_t i = 0; i < psi.node_count(); ++i) {
    const double p = psi.values[i];
    if (std::isinf(p) && p < 0) continue;  // empty column constrains nothing
    const double c = cost(psi.node(i), y);
    if (std::isinf(c) && c > 0) continue;
    m = std::min(m, c - p);
  }
  return m - s;
}

/// Region above (epi) or below (hypo) a grid function, as a membership
/// oracle on (node, height) pairs. Membership is monotone in the height:
/// upward for epi, downward for hypo. A +inf value makes the epi column
/// empty and the hypo column full.
struct EpigraphOracle {
  enum class Side { epi, hypo };

  GridFunction graph;
  Side side = Side::epi;

  bool contains(std::size_t flat, double t) const {
    const double v = graph.values.at(flat);
    return side == Side::epi ? t >= v : t <= v;
  }
};

struct ClassCheck {
  bool ok = true;
  std::size_t witness = 0;
  double value = 0;
};

/// Membership test for the cone-like profile class: f >= 1, f(0) = 1, and
/// the conjugate pinned to [-1, 0] on its effective domain. Dual nodes
/// whose conjugate activity hits the box edge are treated as outside that
/// domain; the box only shows a finite window of them.
inline ClassCheck dual_polar_class_check(const GridFunction& f, double tol = 1e-7) {
  const std::size_t o = f.origin_node();
  if (std::fabs(f.values[o] - 1.0) > tol) return {false, o, f.values[o]};
  for (std::size_t i = 0; i < f.node_count(); ++i)
    if (f.values[i] < 1.0 - tol) return {false, i, f.values[i]};
  if (auto bad = convexity_defect(f)) return {false, *bad, f.values[*bad]};
  const GridFunction lf = legendre(f);
  for (std::size_t j = 0; j < lf.node_count(); ++j) {
    const std::size_t arg = legendre_argmax(f, lf.node(j));
    if (node_on_box_edge(f, arg)) continue;
    if (lf.values[j] > tol || lf.values[j] < -1.0 - tol) return {false, j, lf.values[j]};
  }
  return {};
}

/// Profile transform T f (y) = sup over <x, y> <= 1 of (1 - <x, y>) / f(x).
/// Fixes the class above; checked on the way in and out.
inline GridFunction dual_polar_functional(const GridFunction& f) {
  f.validate();
  if (ClassCheck c = dual_polar_class_check(f); !c.ok)
    throw std::invalid_argument("dual_polar_functional: input leaves the profile class at node " +
                                std::to_string(c.witness));
  GridFunction out = GridFunction::on(f.box, f.res);
  for (std::size_t j = 0; j < out.node_count(); ++j) {
    const Vec y = out.node(j);
    double m = 0.0;
    for (std::size_t i = 0; i < f.node_count(); ++i) {
      const double fx = f.values[i];
      const double pair = geom::dot(f.node(i), y);
      if (pair > 1.0) continue;
      if (std::isinf(fx)) continue;  // contributes 0, dominated by the origin term
      m = std::max(m, (1.0 - pair) / fx);
    }
    out.values[j] = m;
  }
  if (ClassCheck c = dual_polar_class_check(out); !c.ok)
    throw std::logic_error("dual_polar_functional: output left the profile class at node " +
                           std::to_string(c.witness));
  return out;
}

/// Affine-ratio transform T f (y) = sup over 1 + <x, y> > 0 of
/// (1 + <x, y>) / f(x) for positive f.
inline GridFunction rotem_transform(const GridFunction& f) {
  f.validate();
  for (double v : f.values)
    if (v <= 0) throw std::invalid_argument("rotem_transform: input must be positive");
  GridFunction out = GridFunction::on(f.box, f.res);
  for (std::size_t j = 0; j < out.node_count(); ++j) {
    const Vec y = out.node(j);
    double m = 0.0;
    for (std::size_t i = 0; i < f.node_count(); ++i) {
      const double fx = f.values[i];
      if (std::isinf(fx)) continue;
      const double num = 1.0 + geom::dot(f.node(i), y);
      if (num <= 0) continue;
      m = std::max(m, num / fx);
    }
    out.values[j] = m;
  }
  return out;
}

}  // namespace orqi::fn
