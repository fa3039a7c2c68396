#pragma once

#include "orqi/bodies.hpp"
#include "orqi/jbridge.hpp"
#include "orqi/rng.hpp"
#include "orqi/zoo.hpp"

namespace orqi::mc {

using geom::Box;
using geom::kInf;
using geom::MembershipOracle;
using geom::Vec;

/// Result of a Monte Carlo indicator mean. std_error is the binomial
/// standard error sqrt(m(1-m)/n); together with the seed and the stream
/// algorithm name this pins the estimate exactly.
struct McEstimate {
  double mean = 0;
  double std_error = 0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

inline Vec normal_vec(Rng& rng, int dim) {
  Vec z = Vec::zero(dim);
  for (int i = 0; i < dim; ++i) z[i] = rng.normal();
  return z;
}

/// Standard Gaussian mass of the oracle's set, estimated from `samples`
/// independent draws. Reproducible: the draw sequence is a pure function
/// of the seed.
inline McEstimate gaussian_measure(const MembershipOracle& k, std::uint64_t samples,
                                   std::uint64_t seed) {
  if (samples < 10000)
    throw std::invalid_argument("gaussian_measure: need at least 10^4 samples");
  Rng rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i)
    if (k.contains(normal_vec(rng, k.dim))) ++hits;
  const double mean = static_cast<double>(hits) / static_cast<double>(samples);
  return {mean, std::sqrt(mean * (1.0 - mean) / static_cast<double>(samples)), samples, seed};
}

/// Mass of an upper-half-space set L under the measure carried over by the
/// half-space bijection: the pulled-back set is sampled under the Gaussian
/// instead of integrating the density, which blows up toward the horizon.
inline McEstimate nu_measure(const MembershipOracle& l, std::uint64_t samples,
                             std::uint64_t seed) {
  if (samples < 10000) throw std::invalid_argument("nu_measure: need at least 10^4 samples");
  const int n = l.dim;
  Rng rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Vec z = normal_vec(rng, n);
    if (z[n - 1] > 0 && l.contains(geom::j_point(z))) ++hits;
  }
  const double mean = static_cast<double>(hits) / static_cast<double>(samples);
  return {mean, std::sqrt(mean * (1.0 - mean) / static_cast<double>(samples)), samples, seed};
}

inline Vec reflect(const Vec& y, const Vec& u) { return u * (2.0 * geom::dot(y, u)) - y; }

struct SymmetryReport {
  double fraction = 1.0;  // sampled members whose mirror is also a member
  std::uint64_t members = 0;
  std::uint64_t mirrored = 0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  geom::SubclassCertificate certificate;
};

/// Fraction of sampled members of K whose reflection across the axis u
/// stays inside K. Valid only on bodies whose nearest point to the origin
/// lies on the u ray; that is solved and checked first.
inline SymmetryReport essential_symmetry_check(const MembershipOracle& k, Vec u,
                                               std::uint64_t samples, std::uint64_t seed,
                                               double alignment_tol = 1e-4) {
  const double nu = geom::norm(u);
  if (nu == 0) throw std::invalid_argument("essential_symmetry_check: zero axis");
  u = u * (1.0 / nu);
  SymmetryReport rep;
  rep.n_samples = samples;
  rep.seed = seed;
  rep.certificate = geom::subclass_of(k, geom::default_directions(k.dim));
  if (rep.certificate.nearest.status != geom::ClosestPoint::Status::Ok ||
      rep.certificate.radius <= 0)
    throw std::invalid_argument(
        "essential_symmetry_check: body has no positive nearest-point certificate");
  if (geom::dot(rep.certificate.direction, u) < 1.0 - alignment_tol)
    throw std::invalid_argument(
        "essential_symmetry_check: nearest point is off the requested axis");
  Rng rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Vec z = normal_vec(rng, k.dim);
    if (!k.contains(z)) continue;
    ++rep.members;
    if (k.contains(reflect(z, u))) ++rep.mirrored;
  }
  rep.fraction = rep.members == 0
                     ? 1.0
                     : static_cast<double>(rep.mirrored) / static_cast<double>(rep.members);
  return rep;
}

inline double normal_upper_tail(double t) { return 0.5 * std::erfc(t * M_SQRT1_2); }

/// Deterministic reference for the plane Gaussian mass of the body
/// { (x, t) : t >= sqrt(x^2 + 1) }: integrate the column tail mass
/// against the standard normal density. Simpson on [-12, 12] leaves
/// truncation far below the composite error.
inline double gamma2_k0_reference() {
  const double lo = -12.0, hi = 12.0;
  const int n = 4800;  // even interval count
  const double h = (hi - lo) / n;
  const double inv_sqrt_2pi = 0.39894228040143267794;
  auto f = [&](double x) {
    return inv_sqrt_2pi * std::exp(-0.5 * x * x) * normal_upper_tail(std::hypot(x, 1.0));
  };
  double acc = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) acc += f(lo + h * i) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

struct BsOptions {
  double symmetry_band = 1e-9;     // reflected-member fraction must reach 1 - band
  bool allow_asymmetric = false;   // run anyway, recording the fraction
  std::uint64_t symmetry_samples = 200000;
};

struct BsReport {
  McEstimate gamma_k;
  McEstimate gamma_tk;
  double product = 0;
  double product_sigma = 0;
  double gamma_k0_sq = 0;  // squared quadrature reference, the conjectured cap
  double margin_sigma = 0; // (cap - product) in combined standard errors
  bool holds = false;      // product <= cap + 3 sigma
  double symmetry_fraction = 1.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Product experiment: estimate the Gaussian masses of a profile body and
/// of its dual and compare the product against the squared mass of the
/// self-dual body. The input must be essentially symmetric (mirror across
/// the vertical axis) unless explicitly allowed otherwise.
inline BsReport bs_experiment(const geom::ProfileBody& body, const std::vector<double>& dual_grid,
                              std::uint64_t samples, std::uint64_t seed,
                              const BsOptions& opt = {}) {
  Rng root(seed);
  const std::uint64_t seed_k = root.next_u64();
  const std::uint64_t seed_tk = root.next_u64();
  const std::uint64_t seed_sym = root.next_u64();

  BsReport rep;
  rep.samples = samples;
  rep.seed = seed;

  const MembershipOracle k = body.oracle();
  const SymmetryReport sym =
      essential_symmetry_check(k, Vec::axis(2, 1), opt.symmetry_samples, seed_sym);
  rep.symmetry_fraction = sym.fraction;
  if (sym.fraction < 1.0 - opt.symmetry_band && !opt.allow_asymmetric)
    throw std::invalid_argument("bs_experiment: body is not essentially symmetric");

  rep.gamma_k = gaussian_measure(k, samples, seed_k);
  const geom::ProfileDual dual = geom::ProfileDual::of(body, dual_grid, body.box);
  rep.gamma_tk = gaussian_measure(dual.oracle(), samples, seed_tk);

  rep.product = rep.gamma_k.mean * rep.gamma_tk.mean;
  rep.product_sigma = std::hypot(rep.gamma_k.mean * rep.gamma_tk.std_error,
                                 rep.gamma_tk.mean * rep.gamma_k.std_error);
  const double ref = gamma2_k0_reference();
  rep.gamma_k0_sq = ref * ref;
  rep.holds = rep.product <= rep.gamma_k0_sq + 3.0 * rep.product_sigma;
  rep.margin_sigma = rep.product_sigma > 0
                         ? (rep.gamma_k0_sq - rep.product) / rep.product_sigma
                         : (rep.product <= rep.gamma_k0_sq ? kInf : -kInf);
  return rep;
}

struct PrekopaCell {
  double s = 0, t = 0;
  double lhs = 0, rhs = 0, sigma = 0;
  bool ok = true;
};

struct PrekopaReport {
  bool holds = true;
  double worst_slack = kInf;  // min over cells of rhs + 3 sigma - lhs
  PrekopaCell worst;
  std::vector<PrekopaCell> cells;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

namespace detail {

/// Section mass with its prefactor: e^{-1/(2 s^2)} s^{-2} times the
/// Gaussian mass of { x : (s x, s) inside the body }. Returns value and
/// standard error.
inline std::pair<double, double> section_value(const MembershipOracle& l, double s,
                                               std::uint64_t samples, Rng rng) {
  const int m = l.dim - 1;
  std::uint64_t hits = 0;
  Vec p = Vec::zero(l.dim);
  p[m] = s;
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (int c = 0; c < m; ++c) p[c] = s * rng.normal();
    if (l.contains(p)) ++hits;
  }
  const double mean = static_cast<double>(hits) / static_cast<double>(samples);
  const double err = std::sqrt(mean * (1.0 - mean) / static_cast<double>(samples));
  const double pref = std::exp(-0.5 / (s * s)) / (s * s);
  return {pref * mean, pref * err};
}

/// Same for the reference body: the section of the unit ball at height r
/// is the ball of radius sqrt((1 - r^2) / r^2) around the origin.
inline std::pair<double, double> ball_section_value(int dim, double r, std::uint64_t samples,
                                                    Rng rng) {
  const int m = dim - 1;
  const double rad2 = r < 1.0 ? (1.0 - r * r) / (r * r) : 0.0;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    double n2 = 0;
    for (int c = 0; c < m; ++c) {
      const double z = rng.normal();
      n2 += z * z;
    }
    if (n2 <= rad2) ++hits;
  }
  const double mean = static_cast<double>(hits) / static_cast<double>(samples);
  const double err = std::sqrt(mean * (1.0 - mean) / static_cast<double>(samples));
  const double pref = std::exp(-0.5 / (r * r)) / (r * r);
  return {pref * mean, pref * err};
}

}  // namespace detail

/// Pointwise product condition behind the measure-product inequality:
/// on a grid over (0, 1]^2, the height-s section mass of L times the
/// height-t section mass of its polar must stay below the squared
/// height-sqrt(st) section mass of the unit ball, within 3 combined
/// standard errors. L and its polar are supplied as oracles.
inline PrekopaReport prekopa_condition_check(const MembershipOracle& l,
                                             const MembershipOracle& l_polar, int grid,
                                             std::uint64_t samples, std::uint64_t seed) {
  if (grid < 1) throw std::invalid_argument("prekopa_condition_check: empty grid");
  if (l.dim != l_polar.dim)
    throw std::invalid_argument("prekopa_condition_check: dimension mismatch");
  PrekopaReport rep;
  rep.samples = samples;
  rep.seed = seed;
  Rng root(seed);

  std::vector<std::pair<double, double>> f(static_cast<std::size_t>(grid));
  std::vector<std::pair<double, double>> g(static_cast<std::size_t>(grid));
  auto level = [&](int i) { return static_cast<double>(i + 1) / grid; };
  for (int i = 0; i < grid; ++i) {
    f[static_cast<std::size_t>(i)] =
        detail::section_value(l, level(i), samples, root.substream(static_cast<std::uint64_t>(i)));
    g[static_cast<std::size_t>(i)] = detail::section_value(
        l_polar, level(i), samples, root.substream(static_cast<std::uint64_t>(grid + i)));
  }
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double s = level(i), t = level(j);
      const auto [fv, fe] = f[static_cast<std::size_t>(i)];
      const auto [gv, ge] = g[static_cast<std::size_t>(j)];
      const auto [hv, he] = detail::ball_section_value(
          l.dim, std::sqrt(s * t), samples,
          root.substream(static_cast<std::uint64_t>(2 * grid + i * grid + j)));
      PrekopaCell cell;
      cell.s = s;
      cell.t = t;
      cell.lhs = fv * gv;
      cell.rhs = hv * hv;
      cell.sigma = std::hypot(std::hypot(fv * ge, gv * fe), 2.0 * hv * he);
      cell.ok = cell.lhs <= cell.rhs + 3.0 * cell.sigma;
      const double slack = cell.rhs + 3.0 * cell.sigma - cell.lhs;
      if (slack < rep.worst_slack) {
        rep.worst_slack = slack;
        rep.worst = cell;
      }
      rep.holds = rep.holds && cell.ok;
      rep.cells.push_back(cell);
    }
  return rep;
}

}  // namespace orqi::mc
