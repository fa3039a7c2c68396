// Command line front end.  Loads relations, subset families, point sets, and
// grids; runs the finite dual transforms, the plane dualities, and the
// measure experiments; emits reproducible JSON or CSV reports.
//
// Exit codes: 0 success or property verified, 1 usage/IO/schema error,
// 2 mathematical property violated (the report carries the witness).

#include <cstdio>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "orqi/invariants.hpp"
#include "orqi/io.hpp"

namespace {

using orqi::io::json;

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kViolation = 2;

struct Options {
  std::vector<std::string> inputs;
  std::string output;
  std::string set_labels;
  std::string body = "k0";
  std::string format = "json";
  std::uint64_t seed = 1;
  long samples = 200000;
  int grid = 101;
  int directions = 0;
  int dim = 2;
  double epsilon = 1.0;
  double lambda = -1.0;  // outside [0, 1] selects the slab reciprocal
  bool exhaustive = false;
  bool no_timestamp = false;
  bool invariant_check = false;
  bool allow_asymmetric = false;
};

void write_report(const Options& opt, const std::string& text) {
  if (opt.output.empty())
    std::fputs(text.c_str(), stdout);
  else
    orqi::io::save_text(opt.output, text);
}

// stochastic commands stamp the generator name so reruns can be trusted
int emit(const Options& opt, json j, bool stochastic, int code) {
  orqi::io::stamp(j, !opt.no_timestamp, stochastic);
  write_report(opt, j.dump(2) + "\n");
  return code;
}

const std::string& sole_input(const Options& opt) {
  if (opt.inputs.size() != 1)
    throw std::invalid_argument("expected exactly one --input file");
  return opt.inputs.front();
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

orqi::CostRelation load_relation(const std::string& path) {
  return orqi::io::relation_from_json(orqi::io::load_json(path));
}

orqi::geom::PointSet load_points(const std::string& path) {
  if (ends_with(path, ".csv"))
    return orqi::io::points_from_csv(orqi::io::load_text(path));
  return orqi::io::points_from_json(orqi::io::load_json(path));
}

int emit_points(const Options& opt, const orqi::geom::PointSet& p, const char* role) {
  if (opt.format == "csv") {
    write_report(opt, orqi::io::points_to_csv(p));
    return kOk;
  }
  return emit(opt, json{{"role", role}, {"points", orqi::io::points_to_json(p)}},
              /*stochastic=*/false, kOk);
}

// ---------------------------------------------------------------- finite ---

int run_finite_dual(const Options& opt) {
  const auto s = load_relation(sole_input(opt));
  const orqi::Mask k = orqi::io::mask_from_joined(s.ground(), opt.set_labels);
  const orqi::Mask tk = orqi::c_dual(s, k);
  const orqi::Mask ttk = orqi::c_dual(s, tk);
  json j{{"set", s.ground().labels_of(k)},
         {"dual", s.ground().labels_of(tk)},
         {"envelope", s.ground().labels_of(ttk)}};
  return emit(opt, std::move(j), false, kOk);
}

int run_finite_verify(const Options& opt) {
  const auto s = load_relation(sole_input(opt));
  const auto& g = s.ground();
  if (g.size() > orqi::kMaxTable) {
    // too large to tabulate: spot-check the laws directly on random sets
    orqi::Rng rng(opt.seed);
    const orqi::Mask full = g.full();
    for (long t = 0; t < opt.samples; ++t) {
      const orqi::Mask k = rng.next_u64() & full;
      const orqi::Mask tk = orqi::c_dual(s, k);
      const orqi::Mask ttk = orqi::c_dual(s, tk);
      const orqi::Mask sub = rng.next_u64() & k;
      if (!orqi::subset_of(k, ttk) || orqi::c_dual(s, ttk) != tk ||
          !orqi::subset_of(tk, orqi::c_dual(s, sub))) {
        json j{{"ok", false}, {"witness", g.labels_of(k)}};
        return emit(opt, std::move(j), true, kViolation);
      }
    }
    json j{{"ok", true}, {"mode", "sampled"}, {"samples", opt.samples}, {"seed", opt.seed}};
    return emit(opt, std::move(j), true, kOk);
  }
  const auto table = orqi::TransformTable::from_relation(s);
  orqi::IsOrqiOptions check;
  check.exhaustive = opt.exhaustive;
  check.seed = opt.seed;
  const auto v = orqi::is_orqi(table, check);
  json j{{"ok", v.ok()}, {"mode", "tabulated"}};
  if (!v.ok()) {
    j["law"] = v.kind == orqi::OrqiVerdict::Kind::NotQuasiInvolution
                   ? "quasi_involution"
                   : "order_reversal";
    j["set"] = g.labels_of(v.set);
    j["subset"] = g.labels_of(v.sub);
  }
  // the pair law is sampled only on tables too large for the full scan
  const bool sampled = g.size() > 8 && !opt.exhaustive;
  return emit(opt, std::move(j), sampled, v.ok() ? kOk : kViolation);
}

int run_finite_image(const Options& opt) {
  const auto s = load_relation(sole_input(opt));
  const auto family = orqi::image_class(s);
  json j{{"count", family.size()},
         {"image", orqi::io::family_to_json(s.ground(), family)}};
  return emit(opt, std::move(j), false, kOk);
}

int run_finite_invariants(const Options& opt) {
  const auto s = load_relation(sole_input(opt));
  const auto c = orqi::classify(s);
  return emit(opt, orqi::io::classification_to_json(s.ground(), c), false, kOk);
}

int run_finite_extend(const Options& opt) {
  const auto t = orqi::io::subfamily_from_json(orqi::io::load_json(sole_input(opt)));
  const auto result = orqi::extend_from_subclass(t);
  if (const auto* blocked = std::get_if<orqi::NotExtendable>(&result)) {
    json j{{"ok", false},
           {"not_extendable",
            json{{"set", t.ground().labels_of(blocked->set)},
                 {"cover", orqi::io::family_to_json(t.ground(), blocked->cover)}}}};
    return emit(opt, std::move(j), false, kViolation);
  }
  json j{{"ok", true},
         {"relation", orqi::io::relation_to_json(std::get<orqi::CostRelation>(result))}};
  return emit(opt, std::move(j), false, kOk);
}

int run_finite_dualize(const Options& opt) {
  const auto s = load_relation(sole_input(opt));
  return emit(opt, orqi::io::relation_to_json(orqi::dual_orqi(s)), false, kOk);
}

int run_finite_intersect(const Options& opt) {
  if (opt.inputs.size() < 2)
    throw std::invalid_argument("intersect needs at least two --input files");
  std::vector<orqi::CostRelation> parts;
  parts.reserve(opt.inputs.size());
  for (const auto& path : opt.inputs) parts.push_back(load_relation(path));
  return emit(opt, orqi::io::relation_to_json(orqi::intersect_orqis(parts)), false, kOk);
}

int run_finite_restrict(const Options& opt) {
  const auto s = load_relation(sole_input(opt));
  const orqi::Mask m = orqi::io::mask_from_joined(s.ground(), opt.set_labels);
  return emit(opt, orqi::io::relation_to_json(orqi::restrict_to_set(s, m)), false, kOk);
}

// ------------------------------------------------------------------ geom ---

int run_geom_polar(const Options& opt, bool dual) {
  const auto p = load_points(sole_input(opt));
  const auto h = dual ? orqi::geom::dual_polar(p) : orqi::geom::polar(p);
  return emit(opt, orqi::io::halfspaces_to_json(h), false, kOk);
}

int run_geom_flower(const Options& opt) {
  using namespace orqi::geom;
  if (opt.invariant_check) {
    // the ring { |x| >= sqrt(2) } reproduces itself through the strict pairing
    const Box box = Box::cube(2, -4.0, 4.0);
    const auto ring = MembershipOracle::from_margin(2, box, [](const Vec& y) {
      return std::hypot(y[0], y[1]) - std::sqrt(2.0);
    });
    const auto gens = sample_oracle_to_points(ring, 61);
    const auto rep = compare_on_grid(ring, flower_dual(gens, box), box, opt.grid);
    const bool ok = rep.fraction >= 0.995;
    json j{{"check", "ring_self_dual"},
           {"agreement", orqi::io::agreement_to_json(rep)},
           {"ok", ok}};
    return emit(opt, std::move(j), false, ok ? kOk : kViolation);
  }
  const auto p = load_points(sole_input(opt));
  const Box box = Box::cube(p.dim, -4.0, 4.0);
  const auto sample = sample_oracle_to_points(flower_dual(p, box), opt.grid);
  return emit_points(opt, sample, "flower_dual");
}

int run_geom_reciprocal(const Options& opt) {
  using namespace orqi::geom;
  const auto p = load_points(sole_input(opt));
  if (opt.lambda >= 0.0 && opt.lambda <= 1.0) {
    const Box box = Box::cube(p.dim, -4.0, 4.0);
    const auto sample =
        sample_oracle_to_points(reciprocal_type(p, opt.lambda, box), opt.grid);
    return emit_points(opt, sample, "reciprocal_type");
  }
  const auto dirs = make_directions(
      p.dim, opt.directions > 0 ? opt.directions
                                : (p.dim == 2 ? kDefaultDirections2d : kDefaultDirections3d));
  return emit(opt, orqi::io::halfspaces_to_json(reciprocal(p, dirs)), false, kOk);
}

int run_geom_balls(const Options& opt) {
  const auto p = load_points(sole_input(opt));
  if (opt.grid < 2)
    throw std::invalid_argument("balls: --grid needs at least two nodes per axis");
  const auto oracle = orqi::geom::ball_intersection(p, opt.epsilon);
  try {
    return emit_points(opt, orqi::geom::sample_oracle_to_points(oracle, opt.grid),
                       "ball_intersection");
  } catch (const std::invalid_argument&) {
    // no common point at this radius: an empty intersection is an answer
    if (opt.format == "csv") {
      write_report(opt, "");
      return kOk;
    }
    return emit(opt, json{{"role", "ball_intersection"}, {"points", json::array()}},
                /*stochastic=*/false, kOk);
  }
}

int run_geom_widthsets(const Options& opt) {
  using namespace orqi::geom;
  const Reuleaux tri(opt.epsilon);
  const auto region = tri.region();
  const auto rep = compare_on_grid(
      region, ball_intersection(tri.boundary(240), opt.epsilon), region.box, opt.grid);
  const bool ok = rep.fraction >= 0.995;
  json j{{"check", "constant_width_fixed_point"},
         {"width", opt.epsilon},
         {"agreement", orqi::io::agreement_to_json(rep)},
         {"ok", ok}};
  return emit(opt, std::move(j), false, ok ? kOk : kViolation);
}

int run_geom_jcheck(const Options& opt) {
  using namespace orqi::geom;
  if (opt.dim != 2)
    throw std::invalid_argument("jcheck: only dimension 2 is implemented");
  json runs = json::array();
  bool ok = true;
  for (std::uint64_t s = opt.seed; s < opt.seed + 5; ++s) {
    orqi::Rng rng(s);
    const ProfileBody body = body_from_max_affine(MaxAffine::random(rng));
    const auto rep = horizon_glue_check(body, Box::cube(2, -2.5, 2.5), opt.grid);
    ok = ok && rep.fraction >= 0.995;
    runs.push_back(json{{"seed", s}, {"agreement", orqi::io::agreement_to_json(rep)}});
  }
  json j{{"check", "glued_image_identity"}, {"runs", runs}, {"ok", ok}};
  return emit(opt, std::move(j), true, ok ? kOk : kViolation);
}

int run_geom_unconditional(const Options& opt) {
  const auto p = load_points(sole_input(opt));
  const orqi::geom::Box box = orqi::geom::Box::cube(p.dim, -4.0, 4.0);
  const auto sample = orqi::geom::sample_oracle_to_points(
      orqi::geom::unconditional_dual(p, box), opt.grid);
  return emit_points(opt, sample, "unconditional_dual");
}

int run_geom_star(const Options& opt) {
  const json in = orqi::io::load_json(sole_input(opt));
  orqi::geom::RadialFunction g;
  g.dim = in.at("dim").get<int>();
  for (const auto& d : in.at("directions")) g.directions.push_back(orqi::io::vec_from_json(d));
  for (const auto& v : in.at("values")) g.values.push_back(orqi::io::decode_real(v));
  const auto dual = orqi::geom::star_dual(g);
  json values = json::array();
  for (double v : dual.values) values.push_back(orqi::io::encode_real(v));
  json directions = json::array();
  for (const auto& d : dual.directions) directions.push_back(orqi::io::vec_to_json(d));
  json j{{"dim", dual.dim}, {"directions", directions}, {"values", values}};
  return emit(opt, std::move(j), false, kOk);
}

// --------------------------------------------------------------- measure ---

orqi::geom::ProfileBody profile_body(const Options& opt) {
  using namespace orqi::geom;
  if (opt.body == "k0") return body_k0();
  if (opt.body == "k1") return body_k1();
  if (opt.body == "slab") return body_slab_graph();
  if (ends_with(opt.body, ".json")) {
    // { "pieces": [[slope, intercept], ...] } describes a max-affine profile
    const json j = orqi::io::load_json(opt.body);
    MaxAffine f;
    for (const auto& row : j.at("pieces"))
      f.pieces.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
    if (f.pieces.empty()) throw std::invalid_argument("profile needs at least one piece");
    return body_from_max_affine(f);
  }
  throw std::invalid_argument("unknown profile body: " + opt.body);
}

orqi::geom::MembershipOracle body_oracle(const Options& opt) {
  using namespace orqi::geom;
  if (opt.body == "reuleaux") return Reuleaux(1.0).region();
  if (opt.body == "ball") return ball_oracle(2, 1.0, Box::cube(2, -1.5, 1.5));
  if (opt.body == "square") {
    HalfspaceSet h;
    h.dim = 2;
    for (const double s : {-1.0, 1.0}) {
      h.constraints.push_back({Vec{s, 0.0}, 1.0, Sense::Le});
      h.constraints.push_back({Vec{0.0, s}, 1.0, Sense::Le});
    }
    return h.oracle(Box::cube(2, -1.5, 1.5));
  }
  if (opt.body == "halfspace")
    return MembershipOracle::from_margin(2, Box::cube(2, -6.0, 6.0),
                                         [](const Vec& y) { return y[0]; });
  return profile_body(opt).oracle();
}

int run_measure_gamma(const Options& opt) {
  const auto est = orqi::mc::gaussian_measure(body_oracle(opt), opt.samples, opt.seed);
  if (opt.format == "csv") {
    char line[160];
    std::snprintf(line, sizeof line, "mean,stderr,n_samples,seed\n%.17g,%.17g,%llu,%llu\n",
                  est.mean, est.std_error, static_cast<unsigned long long>(est.n_samples),
                  static_cast<unsigned long long>(est.seed));
    write_report(opt, line);
    return kOk;
  }
  json j{{"body", opt.body}, {"estimate", orqi::io::estimate_to_json(est)}};
  return emit(opt, std::move(j), true, kOk);
}

int run_measure_bs(const Options& opt, bool grid_given) {
  const auto body = profile_body(opt);
  const auto grid =
      orqi::geom::linear_grid(-30.0, 30.0, grid_given ? opt.grid : 1201);
  orqi::mc::BsOptions bs;
  bs.allow_asymmetric = opt.allow_asymmetric;
  const auto rep = orqi::mc::bs_experiment(body, grid, opt.samples, opt.seed, bs);
  json j{{"body", opt.body}, {"report", orqi::io::bs_report_to_json(rep)}};
  return emit(opt, std::move(j), true, rep.holds ? kOk : kViolation);
}

int run_measure_prekopa(const Options& opt, bool body_given, bool grid_given,
                        bool samples_given) {
  using namespace orqi::geom;
  const std::string body = body_given ? opt.body : "ball";
  const Box box = Box::cube(2, -1.5, 1.5);
  MembershipOracle l = ball_oracle(2, 1.0, box);
  MembershipOracle l_polar = ball_oracle(2, 1.0, box);
  if (body == "square") {
    HalfspaceSet square, diamond;
    square.dim = diamond.dim = 2;
    for (const double s0 : {-1.0, 1.0}) {
      square.constraints.push_back({Vec{s0, 0.0}, 1.0, Sense::Le});
      square.constraints.push_back({Vec{0.0, s0}, 1.0, Sense::Le});
      for (const double s1 : {-1.0, 1.0})
        diamond.constraints.push_back({Vec{s0, s1}, 1.0, Sense::Le});
    }
    l = square.oracle(box);
    l_polar = diamond.oracle(box);
  } else if (body != "ball") {
    throw std::invalid_argument("prekopa: --body must be ball or square");
  }
  const auto rep = orqi::mc::prekopa_condition_check(
      l, l_polar, grid_given ? opt.grid : 10,
      samples_given ? opt.samples : 40000, opt.seed);
  json j{{"body", body}, {"report", orqi::io::prekopa_report_to_json(rep)}};
  return emit(opt, std::move(j), true, rep.holds ? kOk : kViolation);
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--input", opt.inputs, "input file (repeatable where noted)");
  cmd->add_option("--output", opt.output, "write the report here instead of stdout");
  cmd->add_option("--format", opt.format, "json or csv (tabular payloads only)")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--no-timestamp", opt.no_timestamp,
                "omit the timestamp for byte-identical reruns");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual transforms for finite relations, plane bodies, and gaussian mass"};
  app.require_subcommand(1);
  Options opt;
  std::function<int()> action;

  CLI::App* finite = app.add_subcommand("finite", "finite relation transforms");
  finite->require_subcommand(1);
  {
    auto* c = finite->add_subcommand("dual", "dual and envelope of --set");
    add_common(c, opt);
    c->add_option("--set", opt.set_labels, "comma joined labels, empty for the empty set");
    c->callback([&] { action = [&] { return run_finite_dual(opt); }; });
  }
  {
    auto* c = finite->add_subcommand("verify", "check the two dual laws");
    add_common(c, opt);
    c->add_option("--seed", opt.seed);
    c->add_option("--samples", opt.samples)->check(CLI::PositiveNumber);
    c->add_flag("--exhaustive", opt.exhaustive, "force the full pair scan");
    c->callback([&] { action = [&] { return run_finite_verify(opt); }; });
  }
  {
    auto* c = finite->add_subcommand("image", "enumerate the image class");
    add_common(c, opt);
    c->callback([&] { action = [&] { return run_finite_image(opt); }; });
  }
  {
    auto* c = finite->add_subcommand("invariants", "classify the invariant sets");
    add_common(c, opt);
    c->callback([&] { action = [&] { return run_finite_invariants(opt); }; });
  }
  {
    auto* c = finite->add_subcommand("extend", "extend a subset family to a full dual");
    add_common(c, opt);
    c->callback([&] { action = [&] { return run_finite_extend(opt); }; });
  }
  {
    auto* c = finite->add_subcommand("dualize", "complement the relation");
    add_common(c, opt);
    c->callback([&] { action = [&] { return run_finite_dualize(opt); }; });
  }
  {
    auto* c = finite->add_subcommand("intersect", "intersect relations on one ground set");
    add_common(c, opt);
    c->callback([&] { action = [&] { return run_finite_intersect(opt); }; });
  }
  {
    auto* c = finite->add_subcommand("restrict", "restrict the relation to --set");
    add_common(c, opt);
    c->add_option("--set", opt.set_labels, "comma joined labels");
    c->callback([&] { action = [&] { return run_finite_restrict(opt); }; });
  }

  CLI::App* geom = app.add_subcommand("geom", "plane duality transforms");
  geom->require_subcommand(1);
  {
    auto* c = geom->add_subcommand("polar", "polar of a point set");
    add_common(c, opt);
    c->callback([&] { action = [&] { return run_geom_polar(opt, false); }; });
  }
  {
    auto* c = geom->add_subcommand("dualpolar", "reversed polar of a point set");
    add_common(c, opt);
    c->callback([&] { action = [&] { return run_geom_polar(opt, true); }; });
  }
  {
    auto* c = geom->add_subcommand("flower", "strict pairing dual");
    add_common(c, opt);
    c->add_option("--grid", opt.grid, "comparison or sampling resolution");
    c->add_flag("--invariant-check", opt.invariant_check,
                "check that the sqrt(2) ring reproduces itself");
    c->callback([&] { action = [&] { return run_geom_flower(opt); }; });
  }
  {
    auto* c = geom->add_subcommand("reciprocal", "support reciprocal of a point set");
    add_common(c, opt);
    c->add_option("--grid", opt.grid);
    c->add_option("--directions", opt.directions, "direction count for the slab form");
    c->add_option("--lambda", opt.lambda, "in [0,1]: interpolated pairing instead");
    c->callback([&] { action = [&] { return run_geom_reciprocal(opt); }; });
  }
  {
    auto* c = geom->add_subcommand("balls", "intersection of balls around a point set");
    add_common(c, opt);
    c->add_option("--grid", opt.grid);
    c->add_option("--epsilon", opt.epsilon, "ball radius");
    c->callback([&] { action = [&] { return run_geom_balls(opt); }; });
  }
  {
    auto* c = geom->add_subcommand("widthsets", "constant width fixed point check");
    add_common(c, opt);
    c->add_option("--grid", opt.grid);
    c->add_option("--epsilon", opt.epsilon, "width");
    c->callback([&] { action = [&] { return run_geom_widthsets(opt); }; });
  }
  {
    auto* c = geom->add_subcommand("jcheck", "glued image identity on random bodies");
    add_common(c, opt);
    c->add_option("--grid", opt.grid);
    c->add_option("--seed", opt.seed);
    c->add_option("--dim", opt.dim);
    c->callback([&] { action = [&] { return run_geom_jcheck(opt); }; });
  }
  {
    auto* c = geom->add_subcommand("unconditional", "sign free dual of a point set");
    add_common(c, opt);
    c->add_option("--grid", opt.grid);
    c->callback([&] { action = [&] { return run_geom_unconditional(opt); }; });
  }
  {
    auto* c = geom->add_subcommand("star", "gauge reciprocal of a radial function");
    add_common(c, opt);
    c->callback([&] { action = [&] { return run_geom_star(opt); }; });
  }

  CLI::App* measure = app.add_subcommand("measure", "gaussian mass experiments");
  measure->require_subcommand(1);
  {
    auto* c = measure->add_subcommand("gamma", "gaussian mass of a body");
    add_common(c, opt);
    c->add_option("--body", opt.body, "k0, k1, slab, reuleaux, square, ball, halfspace, or a profile json");
    c->add_option("--seed", opt.seed);
    c->add_option("--samples", opt.samples)->check(CLI::PositiveNumber);
    c->callback([&] { action = [&] { return run_measure_gamma(opt); }; });
  }
  {
    auto* c = measure->add_subcommand("bs", "mass product against the self dual cap");
    add_common(c, opt);
    c->add_option("--body", opt.body, "k0, k1, slab, or a profile json");
    c->add_option("--seed", opt.seed);
    c->add_option("--samples", opt.samples)->check(CLI::PositiveNumber);
    auto* grid_opt = c->add_option("--grid", opt.grid, "dual generator count (default 1201)");
    c->add_flag("--allow-asymmetric", opt.allow_asymmetric,
                "exploratory: skip the symmetry gate");
    c->callback([&, grid_opt] {
      action = [&, given = grid_opt->count() > 0] { return run_measure_bs(opt, given); };
    });
  }
  {
    auto* c = measure->add_subcommand("prekopa", "pointwise section product check");
    add_common(c, opt);
    auto* body_opt = c->add_option("--body", opt.body, "ball or square");
    c->add_option("--seed", opt.seed);
    auto* samples_opt =
        c->add_option("--samples", opt.samples, "per cell (default 40000)")
            ->check(CLI::PositiveNumber);
    auto* grid_opt = c->add_option("--grid", opt.grid, "levels per axis (default 10)");
    c->callback([&, body_opt, grid_opt, samples_opt] {
      action = [&, b = body_opt->count() > 0, g = grid_opt->count() > 0,
                n = samples_opt->count() > 0] {
        return run_measure_prekopa(opt, b, g, n);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kIoError;
  }

  try {
    return action ? action() : kIoError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIoError;
  }
}
