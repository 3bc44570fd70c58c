#include "semiclique/io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace semiclique {
namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.n() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& is) {
  long n = -1, m = -1;
  if (!(is >> n >> m) || n < 0 || m < 0) throw std::runtime_error("edge list: bad header");
  std::vector<Graph::Edge> edges;
  edges.reserve(m);
  for (long i = 0; i < m; ++i) {
    int u, v;
    if (!(is >> u >> v)) throw std::runtime_error("edge list: truncated at edge " + std::to_string(i));
    edges.emplace_back(u, v);
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

void write_bipartite_edge_list(std::ostream& os, const BipartiteGraph& h) {
  os << h.left_size() << ' ' << h.right_size() << ' ' << h.num_edges() << '\n';
  for (auto [i, j] : h.edges()) os << i << ' ' << j << '\n';
}

BipartiteGraph read_bipartite_edge_list(std::istream& is, double p) {
  long k = -1, m = -1, e = -1;
  if (!(is >> k >> m >> e) || k < 0 || m < 0 || e < 0)
    throw std::runtime_error("bipartite edge list: bad header");
  std::vector<BipartiteGraph::Edge> edges;
  edges.reserve(e);
  for (long i = 0; i < e; ++i) {
    int a, b;
    if (!(is >> a >> b)) throw std::runtime_error("bipartite edge list: truncated");
    edges.emplace_back(a, b);
  }
  return BipartiteGraph(static_cast<int>(k), static_cast<int>(m), std::move(edges), p);
}

Json plan_to_json(const AdversaryPlan& plan) {
  Json j;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NoDeletion>) j["deletion"] = {{"kind", "none"}};
        if constexpr (std::is_same_v<T, DeleteAllCut>) j["deletion"] = {{"kind", "delete-all-cut"}};
        if constexpr (std::is_same_v<T, DeleteRandomCutFraction>)
          j["deletion"] = {{"kind", "delete-random-cut-fraction"}, {"fraction", d.fraction}};
        if constexpr (std::is_same_v<T, DegreeFlatten>) j["deletion"] = {{"kind", "degree-flatten"}};
      },
      plan.deletion);
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, NoAddition>) j["addition"] = {{"kind", "none"}};
        if constexpr (std::is_same_v<T, DisjointPlantedCopies>)
          j["addition"] = {{"kind", "disjoint-planted-copies"}, {"count", a.count}};
        if constexpr (std::is_same_v<T, FullCliqueOnComplementSubset>)
          j["addition"] = {{"kind", "full-clique-on-complement-subset"}, {"size", a.size}};
        if constexpr (std::is_same_v<T, ErdosRenyiRewrite>)
          j["addition"] = {{"kind", "erdos-renyi-rewrite"}, {"q", a.q}};
      },
      plan.addition);
  return j;
}

AdversaryPlan plan_from_json(const Json& j) {
  AdversaryPlan plan;
  if (j.contains("deletion")) {
    const auto& d = j.at("deletion");
    const std::string kind = d.at("kind");
    if (kind == "none") plan.deletion = NoDeletion{};
    else if (kind == "delete-all-cut") plan.deletion = DeleteAllCut{};
    else if (kind == "delete-random-cut-fraction")
      plan.deletion = DeleteRandomCutFraction{d.at("fraction").get<double>()};
    else if (kind == "degree-flatten") plan.deletion = DegreeFlatten{};
    else throw std::runtime_error("unknown deletion strategy: " + kind);
  }
  if (j.contains("addition")) {
    const auto& a = j.at("addition");
    const std::string kind = a.at("kind");
    if (kind == "none") plan.addition = NoAddition{};
    else if (kind == "disjoint-planted-copies")
      plan.addition = DisjointPlantedCopies{a.at("count").get<int>()};
    else if (kind == "full-clique-on-complement-subset")
      plan.addition = FullCliqueOnComplementSubset{a.at("size").get<int>()};
    else if (kind == "erdos-renyi-rewrite") plan.addition = ErdosRenyiRewrite{a.at("q").get<double>()};
    else throw std::runtime_error("unknown addition strategy: " + kind);
  }
  return plan;
}

Json instance_to_json(const FKInstance& inst) {
  Json j;
  j["params"] = {{"n", inst.params.n}, {"k", inst.params.k}, {"p", inst.params.p}};
  j["plan"] = plan_to_json(inst.plan);
  j["seed"] = inst.seed;
  j["n"] = inst.graph.n();
  Json edges = Json::array();
  for (auto [u, v] : inst.graph.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  j["solution"] = {{"planted", inst.planted}};
  return j;
}

Graph graph_from_instance_json(const Json& j) {
  std::vector<Graph::Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return Graph(j.at("n").get<int>(), std::move(edges));
}

std::optional<VertexSet> planted_from_instance_json(const Json& j) {
  if (!j.contains("solution") || !j.at("solution").contains("planted")) return std::nullopt;
  return canonical_set(j.at("solution").at("planted").get<std::vector<int>>());
}

FKInstance instance_from_json(const Json& j) {
  FKInstance inst;
  inst.graph = graph_from_instance_json(j);
  if (auto planted = planted_from_instance_json(j)) inst.planted = *planted;
  if (j.contains("params")) {
    const auto& p = j.at("params");
    inst.params = FKParams{p.at("n").get<int>(), p.at("k").get<int>(), p.at("p").get<double>()};
  }
  if (j.contains("plan")) inst.plan = plan_from_json(j.at("plan"));
  if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
  return inst;
}

Json bipartite_to_json(const BipartiteGraph& h) {
  Json edges = Json::array();
  for (auto [a, b] : h.edges()) edges.push_back({a, b});
  return Json{{"left_size", h.left_size()},
              {"right_size", h.right_size()},
              {"p", h.density()},
              {"edges", std::move(edges)}};
}

BipartiteGraph bipartite_from_json(const Json& j) {
  std::vector<BipartiteGraph::Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return BipartiteGraph(j.at("left_size").get<int>(), j.at("right_size").get<int>(),
                        std::move(edges), j.value("p", 0.5));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

Graph load_graph(const std::string& path) {
  if (ends_with(path, ".json")) return graph_from_instance_json(read_json_file(path));
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

BipartiteGraph load_bipartite(const std::string& path, double p) {
  if (ends_with(path, ".json")) {
    BipartiteGraph h = bipartite_from_json(read_json_file(path));
    return h;
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_bipartite_edge_list(in, p);
}

}  // namespace semiclique
