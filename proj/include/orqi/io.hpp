#pragma once

#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "orqi/algebra.hpp"
#include "orqi/functional.hpp"
#include "orqi/invariants.hpp"
#include "orqi/measure.hpp"

namespace orqi::io {

using nlohmann::json;

// Extended reals carry +-inf through JSON as string sentinels; plain
// numbers stay numbers.
inline json encode_real(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

inline double decode_real(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return geom::kInf;
    if (s == "-inf") return -geom::kInf;
    throw std::invalid_argument("expected a number or an inf sentinel, got \"" + s + "\"");
  }
  return j.get<double>();
}

inline std::string joined_labels(const GroundSet& g, Mask m) {
  std::string out;
  for (const auto& l : g.labels_of(m)) {
    if (!out.empty()) out += ",";
    out += l;
  }
  return out;
}

inline Mask mask_from_joined(const GroundSet& g, const std::string& key) {
  Mask m = 0;
  std::string cur;
  std::stringstream ss(key);
  while (std::getline(ss, cur, ',')) m |= Mask{1} << g.index_of(cur);
  return m;
}

inline json relation_to_json(const CostRelation& s) {
  json rel = json::array();
  for (int x = 0; x < s.size(); ++x) {
    json row = json::array();
    for (int y = 0; y < s.size(); ++y) row.push_back(s.related(x, y));
    rel.push_back(row);
  }
  return json{{"labels", s.ground().labels()}, {"rel", rel}};
}

inline CostRelation relation_from_json(const json& j) {
  GroundSet g(j.at("labels").get<std::vector<std::string>>());
  const auto& rel = j.at("rel");
  if (static_cast<int>(rel.size()) != g.size())
    throw std::invalid_argument("rel must be a square matrix matching the labels");
  std::vector<Mask> rows(static_cast<std::size_t>(g.size()));
  for (int x = 0; x < g.size(); ++x) {
    const auto& row = rel.at(static_cast<std::size_t>(x));
    if (static_cast<int>(row.size()) != g.size())
      throw std::invalid_argument("rel must be a square matrix matching the labels");
    for (int y = 0; y < g.size(); ++y)
      if (row.at(static_cast<std::size_t>(y)).get<bool>())
        rows[static_cast<std::size_t>(x)] |= Mask{1} << y;
  }
  return CostRelation(g, std::move(rows));
}

inline json table_to_json(const TransformTable& t) {
  json map = json::object();
  for (Mask k = 0; k < t.subsets(); ++k)
    map[joined_labels(t.ground(), k)] = t.ground().labels_of(t.apply(k));
  return json{{"labels", t.ground().labels()}, {"map", map}};
}

inline TransformTable table_from_json(const json& j) {
  GroundSet g(j.at("labels").get<std::vector<std::string>>());
  std::vector<Mask> entries(std::size_t{1} << g.size());
  std::vector<bool> seen(entries.size(), false);
  for (const auto& [key, val] : j.at("map").items()) {
    const Mask k = mask_from_joined(g, key);
    entries[k] = g.mask_of(val.get<std::vector<std::string>>());
    seen[k] = true;
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument("table map must cover every subset");
  return TransformTable(g, std::move(entries));
}

inline json family_to_json(const GroundSet& g, const std::vector<Mask>& family) {
  json out = json::array();
  for (Mask m : family) out.push_back(g.labels_of(m));
  return out;
}

inline json subfamily_to_json(const SubFamilyTransform& t) {
  json map = json::object();
  for (Mask k : t.domain()) map[joined_labels(t.ground(), k)] = t.ground().labels_of(t.apply(k));
  return json{{"labels", t.ground().labels()},
              {"domain", family_to_json(t.ground(), t.domain())},
              {"map", map}};
}

inline SubFamilyTransform subfamily_from_json(const json& j) {
  GroundSet g(j.at("labels").get<std::vector<std::string>>());
  std::vector<Mask> domain;
  for (const auto& entry : j.at("domain"))
    domain.push_back(g.mask_of(entry.get<std::vector<std::string>>()));
  std::map<Mask, Mask> map;
  for (const auto& [key, val] : j.at("map").items())
    map[mask_from_joined(g, key)] = g.mask_of(val.get<std::vector<std::string>>());
  return SubFamilyTransform(g, std::move(domain), std::move(map));
}

inline const char* kind_name(InvariantClassification::Kind k) {
  switch (k) {
    case InvariantClassification::Kind::UniqueX0: return "UniqueX0";
    case InvariantClassification::Kind::NoneExists: return "NoneExists";
    case InvariantClassification::Kind::Ambiguous: return "Ambiguous";
  }
  return "?";
}

inline json classification_to_json(const GroundSet& g, const InvariantClassification& c) {
  return json{{"x_zero", g.labels_of(c.x0)},
              {"kind", kind_name(c.kind)},
              {"invariant_sets", family_to_json(g, c.invariant_sets)}};
}

inline json vec_to_json(const geom::Vec& v) {
  json out = json::array();
  for (int i = 0; i < v.dim(); ++i) out.push_back(encode_real(v[i]));
  return out;
}

inline geom::Vec vec_from_json(const json& j) {
  geom::Vec v = geom::Vec::zero(static_cast<int>(j.size()));
  for (int i = 0; i < v.dim(); ++i) v[i] = decode_real(j.at(static_cast<std::size_t>(i)));
  return v;
}

inline json points_to_json(const geom::PointSet& p) {
  json pts = json::array();
  for (const auto& v : p.points) pts.push_back(vec_to_json(v));
  return json{{"dim", p.dim}, {"points", pts}};
}

inline geom::PointSet points_from_json(const json& j) {
  std::vector<geom::Vec> pts;
  for (const auto& row : j.at("points")) pts.push_back(vec_from_json(row));
  geom::PointSet p = geom::PointSet::of(std::move(pts));
  if (j.contains("dim") && j.at("dim").get<int>() != p.dim)
    throw std::invalid_argument("point set dim field disagrees with the rows");
  return p;
}

inline std::string points_to_csv(const geom::PointSet& p) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& v : p.points) {
    for (int i = 0; i < v.dim(); ++i) out << (i ? "," : "") << v[i];
    out << "\n";
  }
  return out.str();
}

inline geom::PointSet points_from_csv(const std::string& text) {
  std::vector<geom::Vec> pts;
  std::stringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> coords;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) coords.push_back(std::stod(cell));
    geom::Vec v = geom::Vec::zero(static_cast<int>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) v[static_cast<int>(i)] = coords[i];
    pts.push_back(v);
  }
  return geom::PointSet::of(std::move(pts));
}

inline const char* sense_name(geom::Sense s) { return s == geom::Sense::Ge ? ">=" : "<="; }

inline json halfspaces_to_json(const geom::HalfspaceSet& h) {
  json cs = json::array();
  for (const auto& c : h.constraints)
    cs.push_back(json{{"normal", vec_to_json(c.normal)},
                      {"offset", c.offset},
                      {"sense", sense_name(c.sense)}});
  return json{{"dim", h.dim}, {"constraints", cs}};
}

inline geom::HalfspaceSet halfspaces_from_json(const json& j) {
  geom::HalfspaceSet h;
  h.dim = j.at("dim").get<int>();
  for (const auto& c : j.at("constraints")) {
    geom::Halfspace hs;
    hs.normal = vec_from_json(c.at("normal"));
    hs.offset = c.at("offset").get<double>();
    const std::string s = c.at("sense").get<std::string>();
    if (s == ">=")
      hs.sense = geom::Sense::Ge;
    else if (s == "<=")
      hs.sense = geom::Sense::Le;
    else
      throw std::invalid_argument("sense must be \">=\" or \"<=\"");
    h.constraints.push_back(hs);
  }
  return h;
}

inline json box_to_json(const geom::Box& b) {
  return json{{"lo", vec_to_json(b.lo)}, {"hi", vec_to_json(b.hi)}};
}

inline geom::Box box_from_json(const json& j) {
  return geom::Box{vec_from_json(j.at("lo")), vec_from_json(j.at("hi"))};
}

inline json grid_to_json(const fn::GridFunction& g) {
  json vals = json::array();
  for (double v : g.values) vals.push_back(encode_real(v));
  json res = json::array();
  for (int d = 0; d < g.dim; ++d) res.push_back(g.res[static_cast<std::size_t>(d)]);
  return json{{"box", box_to_json(g.box)}, {"resolution", res}, {"values", vals}};
}

inline fn::GridFunction grid_from_json(const json& j) {
  const geom::Box box = box_from_json(j.at("box"));
  const auto& res = j.at("resolution");
  if (static_cast<int>(res.size()) != box.dim())
    throw std::invalid_argument("grid resolution must give one count per axis");
  std::array<int, 2> r{1, 1};  // the entry past dim is unused filler
  for (std::size_t d = 0; d < res.size() && d < 2; ++d) {
    r[d] = res.at(d).get<int>();
    if (r[d] < 2) throw std::invalid_argument("grid needs at least two nodes per axis");
  }
  fn::GridFunction g = fn::GridFunction::on(box, r);
  const auto& vals = j.at("values");
  if (vals.size() != g.node_count())
    throw std::invalid_argument("grid value count must match the resolution");
  for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = decode_real(vals.at(i));
  g.validate();
  return g;
}

inline std::string grid_to_csv(const fn::GridFunction& g) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const geom::Vec p = g.node(i);
    for (int d = 0; d < g.dim; ++d) out << p[d] << ",";
    out << g.values[i] << "\n";
  }
  return out.str();
}

inline json estimate_to_json(const mc::McEstimate& e) {
  return json{{"mean", e.mean},
              {"stderr", e.std_error},
              {"n_samples", e.n_samples},
              {"seed", e.seed}};
}

inline json agreement_to_json(const geom::AgreementReport& r) {
  return json{{"total", r.total},
              {"excluded", r.excluded},
              {"agree", r.agree},
              {"fraction", r.fraction}};
}

inline json bs_report_to_json(const mc::BsReport& r) {
  return json{{"gamma_K", estimate_to_json(r.gamma_k)},
              {"gamma_TK", estimate_to_json(r.gamma_tk)},
              {"product", r.product},
              {"product_sigma", r.product_sigma},
              {"gamma_K0_sq", r.gamma_k0_sq},
              {"margin_sigma", encode_real(r.margin_sigma)},
              {"holds", r.holds},
              {"symmetry_fraction", r.symmetry_fraction},
              {"samples", r.samples},
              {"seed", r.seed}};
}

inline json prekopa_report_to_json(const mc::PrekopaReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells)
    cells.push_back(json{{"s", c.s},
                         {"t", c.t},
                         {"lhs", c.lhs},
                         {"rhs", c.rhs},
                         {"sigma", c.sigma},
                         {"ok", c.ok}});
  return json{{"holds", r.holds},
              {"worst_slack", encode_real(r.worst_slack)},
              {"cells", cells},
              {"samples", r.samples},
              {"seed", r.seed}};
}

inline std::string iso8601_utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Standard report envelope: every stochastic report names the generator
/// so the numbers are reproducible from the file alone.
inline void stamp(json& j, bool with_timestamp, bool stochastic = true) {
  if (stochastic) j["rng"] = kRngAlgorithm;
  if (with_timestamp) j["generated_at"] = iso8601_utc_now();
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline std::string load_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace orqi::io
