#include "qg/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qg/io.hpp"

namespace qg {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& ctx, const std::string& msg) {
  throw std::invalid_argument("config " + ctx + ": " + msg);
}

void expect_keys(const json& j, const std::string& ctx,
                 std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(ctx, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(ctx, "unknown key '" + it.key() + "'");
}

const json& need(const json& j, const std::string& ctx, const char* key) {
  if (!j.contains(key)) fail(ctx, "missing key '" + std::string(key) + "'");
  return j.at(key);
}

double need_number(const json& j, const std::string& ctx, const char* key) {
  const json& v = need(j, ctx, key);
  if (!v.is_number()) fail(ctx, std::string(key) + " must be a number");
  return v.get<double>();
}

int need_int(const json& j, const std::string& ctx, const char* key) {
  const json& v = need(j, ctx, key);
  if (!v.is_number_integer()) fail(ctx, std::string(key) + " must be an integer");
  return v.get<int>();
}

std::unique_ptr<MetricGraph> parse_graph_body(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"vertices", "edges"});
  const json& jv = need(j, ctx, "vertices");
  const json& je = need(j, ctx, "edges");
  if (!jv.is_array() || !je.is_array()) fail(ctx, "vertices/edges must be arrays");
  std::set<int> vids;
  for (const json& v : jv) {
    if (!v.is_number_integer()) fail(ctx, "vertex ids must be integers");
    vids.insert(v.get<int>());
  }
  const int n = static_cast<int>(vids.size());
  for (int i = 0; i < n; ++i)
    if (!vids.count(i)) fail(ctx, "vertex ids must be dense 0..n-1");
  std::vector<Edge> edges;
  for (const json& e : je) {
    expect_keys(e, ctx + ".edges[]", {"id", "iota", "tau", "length"});
    edges.push_back({need_int(e, ctx, "id"), need_int(e, ctx, "iota"),
                     need_int(e, ctx, "tau"), need_number(e, ctx, "length")});
  }
  return std::make_unique<MetricGraph>(MetricGraph::build(n, std::move(edges)));
}

std::unique_ptr<MetricGraph> parse_graph(const json& j, const std::string& base_dir) {
  const std::string ctx = "graph";
  if (!j.is_object()) fail(ctx, "expected an object");
  if (j.contains("generator")) {
    expect_keys(j, ctx, {"generator"});
    const json& gen = j.at("generator");
    const std::string gctx = "graph.generator";
    const std::string kind = need(gen, gctx, "kind").get<std::string>();
    if (kind == "path" || kind == "star") {
      expect_keys(gen, gctx, {"kind", "n", "length"});
      return std::make_unique<MetricGraph>(
          generate(kind, {static_cast<double>(need_int(gen, gctx, "n")),
                          need_number(gen, gctx, "length")}));
    }
    if (kind == "grid") {
      expect_keys(gen, gctx, {"kind", "nx", "ny", "length"});
      return std::make_unique<MetricGraph>(
          generate(kind, {static_cast<double>(need_int(gen, gctx, "nx")),
                          static_cast<double>(need_int(gen, gctx, "ny")),
                          need_number(gen, gctx, "length")}));
    }
    fail(gctx, "unknown generator kind '" + kind + "'");
  }
  if (j.contains("file")) {
    expect_keys(j, ctx, {"file"});
    const std::string rel = j.at("file").get<std::string>();
    const std::string path = base_dir.empty() ? rel : base_dir + "/" + rel;
    std::ifstream is(path);
    if (!is) fail(ctx, "graph file '" + path + "' does not exist");
    json body;
    try {
      body = json::parse(is);
    } catch (const json::exception& e) {
      fail(ctx, "graph file parse error: " + std::string(e.what()));
    }
    return parse_graph_body(body, "graph file " + path);
  }
  return parse_graph_body(j, ctx);
}

Complex parse_complex(const json& j, const std::string& ctx) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  fail(ctx, "complex entries are numbers or [re, im] pairs");
}

CMatrix parse_cmatrix(const json& j, int d, const std::string& ctx) {
  if (!j.is_array() || static_cast<int>(j.size()) != d)
    fail(ctx, "matrix must have one row per incident edge end");
  CMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      fail(ctx, "matrix rows must have length equal to the vertex degree");
    for (int k = 0; k < d; ++k)
      m.at(i, k) = parse_complex(row[static_cast<size_t>(k)], ctx);
  }
  return m;
}

VertexCondition parse_condition_entry(const json& j, int degree, const std::string& ctx) {
  const std::string type = need(j, ctx, "type").get<std::string>();
  if (type == "dirichlet") return dirichlet(degree);
  if (type == "neumann") return neumann(degree);
  if (type == "kirchhoff") return kirchhoff(degree);
  if (type == "delta") return delta(degree, need_number(j, ctx, "alpha"));
  if (type == "general")
    return general_condition(parse_cmatrix(need(j, ctx, "A"), degree, ctx),
                             parse_cmatrix(need(j, ctx, "B"), degree, ctx));
  fail(ctx, "unknown condition type '" + type + "'");
}

std::unique_ptr<ConditionField> parse_conditions(const json& j, const MetricGraph& g) {
  const std::string ctx = "conditions";
  expect_keys(j, ctx, {"default", "vertices"});
  auto field = std::make_unique<ConditionField>();
  {
    json def = j.contains("default") ? j.at("default") : json{{"type", "kirchhoff"}};
    expect_keys(def, ctx + ".default", {"type", "alpha"});
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      field->set(v, parse_condition_entry(def, g.degree(v), ctx + ".default"));
  }
  if (j.contains("vertices")) {
    for (const json& e : j.at("vertices")) {
      expect_keys(e, ctx + ".vertices[]", {"id", "type", "alpha", "A", "B"});
      const int id = need_int(e, ctx, "id");
      if (id < 0 || id >= g.vertex_count())
        fail(ctx, "condition for unknown vertex " + std::to_string(id));
      field->set(id, parse_condition_entry(e, g.degree(id), ctx + ".vertices[]"));
    }
  }
  return field;
}

DistributionSpec parse_distribution(const json& j) {
  const std::string ctx = "alloy.distribution";
  const std::string family = need(j, ctx, "family").get<std::string>();
  if (family == "uniform") {
    expect_keys(j, ctx, {"family", "a", "b"});
    return DistributionSpec::uniform(need_number(j, ctx, "a"), need_number(j, ctx, "b"));
  }
  if (family == "two_point") {
    expect_keys(j, ctx, {"family", "a", "b", "p"});
    return DistributionSpec::two_point(need_number(j, ctx, "a"),
                                       need_number(j, ctx, "b"),
                                       need_number(j, ctx, "p"));
  }
  if (family == "power_law") {
    expect_keys(j, ctx, {"family", "alpha"});
    return DistributionSpec::power_law(need_number(j, ctx, "alpha"));
  }
  fail(ctx, "unknown family '" + family + "'");
}

EdgeProfile parse_profile(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"edge", "breaks", "values"});
  EdgeProfile p;
  p.edge = need_int(j, ctx, "edge");
  if (j.contains("breaks"))
    for (const json& b : j.at("breaks")) p.breaks.push_back(b.get<double>());
  for (const json& v : need(j, ctx, "values")) p.values.push_back(v.get<double>());
  return p;
}

std::unique_ptr<AlloyModel> parse_alloy(const json& j, const MetricGraph& g) {
  const std::string ctx = "alloy";
  expect_keys(j, ctx, {"sites", "distribution"});
  const DistributionSpec dist = parse_distribution(need(j, ctx, "distribution"));
  const json& sites = need(j, ctx, "sites");
  const std::string sctx = "alloy.sites";
  const std::string kind = need(sites, sctx, "kind").get<std::string>();
  if (kind == "edge_indicator") {
    expect_keys(sites, sctx, {"kind", "amplitude"});
    return std::make_unique<AlloyModel>(
        AlloyModel::edge_indicators(g, need_number(sites, sctx, "amplitude"), dist));
  }
  if (kind == "explicit") {
    expect_keys(sites, sctx, {"kind", "entries"});
    std::vector<SingleSitePotential> all(static_cast<size_t>(g.edge_count()));
    for (int e = 0; e < g.edge_count(); ++e) all[static_cast<size_t>(e)].site = e;
    for (const json& entry : need(sites, sctx, "entries")) {
      expect_keys(entry, sctx + ".entries[]", {"site", "profiles"});
      const int site = need_int(entry, sctx, "site");
      if (site < 0 || site >= g.edge_count())
        fail(sctx, "site references unknown edge " + std::to_string(site));
      SingleSitePotential& s = all[static_cast<size_t>(site)];
      s.profiles.clear();
      for (const json& prof : need(entry, sctx, "profiles"))
        s.profiles.push_back(parse_profile(prof, sctx + ".entries[].profiles[]"));
    }
    return std::make_unique<AlloyModel>(AlloyModel::from_sites(g, std::move(all), dist));
  }
  fail(sctx, "unknown sites kind '" + kind + "'");
}

EdgeSet parse_edge_set(const json& j, const MetricGraph& g, const std::string& ctx) {
  if (!j.is_object()) fail(ctx, "edge sets are objects");
  if (j.contains("all")) {
    expect_keys(j, ctx, {"all"});
    return EdgeSet::all(g);
  }
  if (j.contains("first")) {
    expect_keys(j, ctx, {"first"});
    return EdgeSet::first(g, need_int(j, ctx, "first"));
  }
  if (j.contains("ids")) {
    expect_keys(j, ctx, {"ids"});
    std::vector<EdgeId> ids;
    for (const json& v : j.at("ids")) ids.push_back(v.get<int>());
    EdgeSet s = EdgeSet::of(std::move(ids));
    for (EdgeId e : s)
      if (e >= g.edge_count()) fail(ctx, "edge id " + std::to_string(e) + " out of range");
    return s;
  }
  fail(ctx, "edge set needs one of: all, first, ids");
}

LambdaGrid parse_grid(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"min", "max", "count"});
  LambdaGrid grid;
  grid.lo = need_number(j, ctx, "min");
  grid.hi = need_number(j, ctx, "max");
  grid.count = need_int(j, ctx, "count");
  if (grid.count < 1) fail(ctx, "count must be >= 1");
  return grid;
}

}  // namespace

void RunConfig::set_seed(std::uint64_t s) { wegner.seed = ids.seed = s; }
void RunConfig::set_samples(int s) {
  if (s < 1) throw std::invalid_argument("samples must be >= 1");
  wegner.samples = ids.samples = s;
}
void RunConfig::set_mesh_h(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("mesh spacing must be positive");
  wegner.mesh_h = ids.mesh_h = graph_fixture.mesh_h = edge_fixture.mesh_h = h;
}
void RunConfig::set_threads(int t) { wegner.threads = ids.threads = t; }
void RunConfig::set_oracle_dense(bool on) {
  wegner.oracle_dense = ids.oracle_dense = on;
}

RunConfig parse_config(const std::string& text, const std::string& name) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config " + name + ": parse error: " + e.what());
  }
  expect_keys(root, "top level", {"graph", "conditions", "alloy", "experiment"});

  std::string base_dir;
  if (const size_t slash = name.find_last_of('/'); slash != std::string::npos)
    base_dir = name.substr(0, slash);

  RunConfig cfg;
  cfg.config_hash = to_hex(fnv1a64(text));
  cfg.graph = parse_graph(need(root, "top level", "graph"), base_dir);
  const MetricGraph& g = *cfg.graph;

  if (root.contains("conditions"))
    cfg.conditions = parse_conditions(root.at("conditions"), g);
  else
    cfg.conditions =
        std::make_unique<ConditionField>(ConditionField::uniform(g, ConditionTag::Kirchhoff));

  cfg.alloy = root.contains("alloy")
                  ? parse_alloy(root.at("alloy"), g)
                  : std::make_unique<AlloyModel>(AlloyModel::edge_indicators(
                        g, 0.0, DistributionSpec::uniform(0.0, 1.0)));

  const json& ex = need(root, "top level", "experiment");
  const std::string ctx = "experiment";
  cfg.kind = need(ex, ctx, "kind").get<std::string>();

  // Common scalars.
  const std::uint64_t seed =
      ex.contains("seed") ? ex.at("seed").get<std::uint64_t>() : 1;
  const int samples = ex.contains("samples") ? need_int(ex, ctx, "samples") : 1;
  if (samples < 1) fail(ctx, "samples must be >= 1");
  const double mesh_h = ex.contains("mesh_h") ? need_number(ex, ctx, "mesh_h") : 1.0 / 32;
  if (!(mesh_h > 0.0)) fail(ctx, "mesh_h must be positive");
  const int threads = ex.contains("threads") ? need_int(ex, ctx, "threads") : 0;
  if (ex.contains("out_dir")) cfg.out_dir = ex.at("out_dir").get<std::string>();
  if (ex.contains("emit_svg")) cfg.emit_svg = ex.at("emit_svg").get<bool>();
  const double wall =
      ex.contains("wall_clock_limit_s") ? need_number(ex, ctx, "wall_clock_limit_s") : 0.0;

  if (cfg.kind == "wegner") {
    expect_keys(ex, ctx,
                {"kind", "lambda", "epsilons", "edge_sets", "samples", "seed", "mesh_h",
                 "threads", "out_dir", "emit_svg", "wall_clock_limit_s"});
    cfg.wegner.grid = parse_grid(need(ex, ctx, "lambda"), ctx + ".lambda");
    for (const json& e : need(ex, ctx, "epsilons")) {
      const double eps = e.get<double>();
      if (!(eps > 0.0)) fail(ctx, "epsilons must be positive");
      cfg.wegner.epsilons.push_back(eps);
    }
    for (const json& s : need(ex, ctx, "edge_sets"))
      cfg.wegner.edge_sets.push_back(parse_edge_set(s, g, ctx + ".edge_sets[]"));
    if (cfg.wegner.edge_sets.empty()) fail(ctx, "edge_sets must be nonempty");
  } else if (cfg.kind == "ids") {
    expect_keys(ex, ctx,
                {"kind", "lambda", "exhaustion", "increment_eps", "samples", "seed",
                 "mesh_h", "threads", "out_dir", "emit_svg", "wall_clock_limit_s"});
    cfg.ids.grid = parse_grid(need(ex, ctx, "lambda"), ctx + ".lambda");
    for (const json& s : need(ex, ctx, "exhaustion"))
      cfg.ids.exhaustion.push_back(parse_edge_set(s, g, ctx + ".exhaustion[]"));
    if (cfg.ids.exhaustion.empty()) fail(ctx, "exhaustion must be nonempty");
    if (ex.contains("increment_eps")) {
      cfg.ids.increment_eps = need_number(ex, ctx, "increment_eps");
      if (!(cfg.ids.increment_eps > 0.0)) fail(ctx, "increment_eps must be positive");
    }
  } else if (cfg.kind == "ssf_lemmas") {
    expect_keys(ex, ctx,
                {"kind", "lambda", "graph_fixture", "edge_fixture", "samples", "seed",
                 "mesh_h", "threads", "out_dir", "emit_svg", "wall_clock_limit_s"});
    const LambdaGrid grid = parse_grid(need(ex, ctx, "lambda"), ctx + ".lambda");
    if (ex.contains("graph_fixture")) {
      const json& f = ex.at("graph_fixture");
      const std::string fctx = ctx + ".graph_fixture";
      expect_keys(f, fctx, {"tilde", "w_base", "w_bump"});
      cfg.has_graph_fixture = true;
      cfg.graph_fixture.tilde = parse_edge_set(need(f, fctx, "tilde"), g, fctx + ".tilde");
      const double base = need_number(f, fctx, "w_base");
      const double bump = need_number(f, fctx, "w_bump");
      cfg.graph_fixture.w1_edge.assign(static_cast<size_t>(g.edge_count()), base);
      cfg.graph_fixture.w2_edge.assign(static_cast<size_t>(g.edge_count()), base);
      for (EdgeId e : cfg.graph_fixture.tilde)
        cfg.graph_fixture.w2_edge[static_cast<size_t>(e)] = base + bump;
      cfg.graph_fixture.grid = grid;
    }
    if (ex.contains("edge_fixture")) {
      const json& f = ex.at("edge_fixture");
      const std::string fctx = ctx + ".edge_fixture";
      expect_keys(f, fctx, {"w1", "w2"});
      cfg.has_edge_fixture = true;
      cfg.edge_fixture.w1_edge.assign(static_cast<size_t>(g.edge_count()),
                                      need_number(f, fctx, "w1"));
      cfg.edge_fixture.w2_edge.assign(static_cast<size_t>(g.edge_count()),
                                      need_number(f, fctx, "w2"));
      cfg.edge_fixture.grid = grid;
    }
    if (!cfg.has_graph_fixture && !cfg.has_edge_fixture)
      fail(ctx, "ssf_lemmas needs graph_fixture or edge_fixture");
  } else {
    fail(ctx, "unknown experiment kind '" + cfg.kind + "'");
  }

  cfg.set_seed(seed);
  cfg.set_samples(samples);
  cfg.set_mesh_h(mesh_h);
  cfg.set_threads(threads);
  cfg.wegner.wall_clock_limit_s = wall;

  cfg.graph_fixture.graph = cfg.graph.get();
  cfg.graph_fixture.field = cfg.conditions.get();
  cfg.edge_fixture.graph = cfg.graph.get();
  cfg.edge_fixture.field = cfg.conditions.get();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::invalid_argument("config file '" + path + "' does not exist");
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace qg
