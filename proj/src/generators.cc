#include "semiclique/generators.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "semiclique/rng.h"

namespace semiclique {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Mutable adjacency used while the phases run.
class EdgeTable {
 public:
  explicit EdgeTable(int n) : n_(n), rows_(n, Bitset(n)) {}
  explicit EdgeTable(const Graph& g) : EdgeTable(g.n()) {
    for (auto [u, v] : g.edges()) add(u, v);
  }
  void add(int u, int v) { rows_[u].set(v); rows_[v].set(u); }
  void remove(int u, int v) { rows_[u].reset(v); rows_[v].reset(u); }
  bool has(int u, int v) const { return rows_[u].test(v); }
  Graph to_graph() const {
    std::vector<Graph::Edge> e;
    for (int u = 0; u < n_; ++u)
      for (int v : rows_[u].indices())
        if (u < v) e.emplace_back(u, v);
    return Graph(n_, std::move(e));
  }

 private:
  int n_;
  std::vector<Bitset> rows_;
};

// Uniform random subset of `pool` of the given size (partial Fisher-Yates).
std::vector<int> sample_subset(std::vector<int> pool, int size, RandomStream& rng) {
  for (int i = 0; i < size; ++i) {
    const auto j = i + static_cast<int>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

void validate_plan(int n, int k, const AdversaryPlan& plan) {
  std::visit(Overloaded{
                 [](const DeleteRandomCutFraction& d) {
                   check_probability(d.fraction, "DeleteRandomCutFraction.fraction");
                 },
                 [](const auto&) {},
             },
             plan.deletion);
  std::visit(Overloaded{
                 [&](const DisjointPlantedCopies& a) {
                   if (a.count < 0 || static_cast<long>(a.count) * k > n - k)
                     throw std::invalid_argument(
                         "DisjointPlantedCopies: count*k must fit in n-k");
                 },
                 [&](const FullCliqueOnComplementSubset& a) {
                   if (a.size < 0 || a.size > n - k)
                     throw std::invalid_argument(
                         "FullCliqueOnComplementSubset: size must lie in [0, n-k]");
                 },
                 [](const ErdosRenyiRewrite& a) { check_probability(a.q, "ErdosRenyiRewrite.q"); },
                 [](const auto&) {},
             },
             plan.addition);
}

}  // namespace

std::string to_string(const DeletionStrategy& s) {
  return std::visit(Overloaded{
                        [](const NoDeletion&) { return std::string("none"); },
                        [](const DeleteAllCut&) { return std::string("delete-all-cut"); },
                        [](const DeleteRandomCutFraction& d) {
                          std::ostringstream os;
                          os << "delete-random-cut-fraction(" << d.fraction << ")";
                          return os.str();
                        },
                        [](const DegreeFlatten&) { return std::string("degree-flatten"); },
                    },
                    s);
}

std::string to_string(const AdditionStrategy& s) {
  return std::visit(Overloaded{
                        [](const NoAddition&) { return std::string("none"); },
                        [](const DisjointPlantedCopies& a) {
                          return "disjoint-planted-copies(" + std::to_string(a.count) + ")";
                        },
                        [](const FullCliqueOnComplementSubset& a) {
                          return "full-clique-on-complement-subset(" + std::to_string(a.size) + ")";
                        },
                        [](const ErdosRenyiRewrite& a) {
                          std::ostringstream os;
                          os << "erdos-renyi-rewrite(" << a.q << ")";
                          return os.str();
                        },
                    },
                    s);
}

BipartiteGraph sample_er_bipartite(int k, int m, double p, std::uint64_t seed) {
  if (k < 0 || m < 0) throw std::invalid_argument("sample_er_bipartite: negative size");
  check_probability(p, "p");
  RandomStream rng = RandomStream(seed).substream("er-bipartite");
  std::vector<BipartiteGraph::Edge> edges;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j)
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
  const double stored = (p > 0.0 && p < 1.0) ? p : 0.5;
  return BipartiteGraph(k, m, std::move(edges), stored);
}

FKPhases sample_fk_phases(int n, int k, double p, const AdversaryPlan& plan,
                          std::uint64_t seed) {
  if (k < 1 || k > n) throw std::invalid_argument("sample_fk: need 1 <= k <= n");
  check_probability(p, "p");
  validate_plan(n, k, plan);

  const RandomStream root(seed);
  // Phase 1: G(n,p) plus a clique on a uniformly random k-set.
  RandomStream gen = root.substream("fk/random");
  EdgeTable table(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (gen.bernoulli(p)) table.add(u, v);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  RandomStream pick = root.substream("fk/planted");
  VertexSet planted = sample_subset(all, k, pick);
  for (std::size_t a = 0; a < planted.size(); ++a)
    for (std::size_t b = a + 1; b < planted.size(); ++b) table.add(planted[a], planted[b]);
  FKPhases out;
  out.planted = planted;
  out.random_phase = table.to_graph();

  Bitset in_planted(n);
  for (int v : planted) in_planted.set(v);
  VertexSet outside;
  for (int v = 0; v < n; ++v)
    if (!in_planted.test(v)) outside.push_back(v);

  // Phase 2: deletions restricted to cut(S*). Adversaries see the phase-1
  // graph but draw any randomness from their own substream.
  RandomStream adv_del = root.substream("fk/deletion");
  std::visit(Overloaded{
                 [](const NoDeletion&) {},
                 [&](const DeleteAllCut&) {
                   for (int u : planted)
                     for (int v : outside) table.remove(u, v);
                 },
                 [&](const DeleteRandomCutFraction& d) {
                   for (int u : planted)
                     for (int v : outside)
                       if (table.has(u, v) && adv_del.bernoulli(d.fraction)) table.remove(u, v);
                 },
                 [&](const DegreeFlatten&) {
                   std::vector<int> cut_deg;
                   for (int u : planted) {
                     int d = 0;
                     for (int v : outside) d += table.has(u, v);
                     cut_deg.push_back(d);
                   }
                   const int target = *std::min_element(cut_deg.begin(), cut_deg.end());
                   for (std::size_t a = 0; a < planted.size(); ++a) {
                     int excess = cut_deg[a] - target;
                     for (auto it = outside.rbegin(); it != outside.rend() && excess > 0; ++it) {
                       if (table.has(planted[a], *it)) {
                         table.remove(planted[a], *it);
                         --excess;
                       }
                     }
                   }
                 },
             },
             plan.deletion);
  out.after_deletion = table.to_graph();

  // Phase 3: rewrite the subgraph induced on V \ S*.
  RandomStream adv_add = root.substream("fk/addition");
  std::visit(Overloaded{
                 [](const NoAddition&) {},
                 [&](const DisjointPlantedCopies& a) {
                   std::vector<int> pool = sample_subset(outside, a.count * k, adv_add);
                   // Shuffle the chosen pool so copies are random k-sets.
                   for (int i = static_cast<int>(pool.size()) - 1; i > 0; --i)
                     std::swap(pool[i], pool[adv_add.below(i + 1)]);
                   for (int c = 0; c < a.count; ++c)
                     for (int x = 0; x < k; ++x)
                       for (int y = x + 1; y < k; ++y) table.add(pool[c * k + x], pool[c * k + y]);
                 },
                 [&](const FullCliqueOnComplementSubset& a) {
                   const VertexSet sub = sample_subset(outside, a.size, adv_add);
                   for (std::size_t x = 0; x < sub.size(); ++x)
                     for (std::size_t y = x + 1; y < sub.size(); ++y) table.add(sub[x], sub[y]);
                 },
                 [&](const ErdosRenyiRewrite& a) {
                   for (std::size_t x = 0; x < outside.size(); ++x)
                     for (std::size_t y = x + 1; y < outside.size(); ++y) {
                       if (adv_add.bernoulli(a.q)) table.add(outside[x], outside[y]);
                       else table.remove(outside[x], outside[y]);
                     }
                 },
             },
             plan.addition);
  out.after_addition = table.to_graph();
  return out;
}

FKInstance sample_fk(int n, int k, double p, const AdversaryPlan& plan,
                     std::uint64_t seed) {
  FKPhases phases = sample_fk_phases(n, k, p, plan, seed);
  return FKInstance{std::move(phases.after_addition), std::move(phases.planted),
                    FKParams{n, k, p}, plan, seed};
}

double planted_biclique_reduced_probability(int k, int n, int l, double p) {
  const double gap = static_cast<double>(k - l);
  return (n * p - gap) / (n - gap);
}

PlantedBiclique sample_planted_biclique(int k, int n, int l, double p,
                                        std::uint64_t seed) {
  if (l < 0 || l > k) throw std::invalid_argument("sample_planted_biclique: need 0 <= l <= k");
  if (k - l > n) throw std::invalid_argument("sample_planted_biclique: need k - l <= n");
  check_probability(p, "p");
  // With l = 0 the set S is always empty and the reduced probability unused.
  double reduced = p;
  if (l > 0 && k - l < n) {
    reduced = planted_biclique_reduced_probability(k, n, l, p);
    if (reduced < 0.0 || reduced > 1.0)
      throw std::invalid_argument("sample_planted_biclique: reduced edge probability outside [0,1]");
  }
  const RandomStream root(seed);
  RandomStream sides = root.substream("planted-biclique/sides");
  RandomStream edges_rng = root.substream("planted-biclique/edges");
  const double left_rate = k > 0 ? static_cast<double>(l) / k : 0.0;
  const double right_rate = n > 0 ? static_cast<double>(k - l) / n : 0.0;
  VertexSet s, pset;
  for (int i = 0; i < k; ++i)
    if (sides.bernoulli(left_rate)) s.push_back(i);
  for (int j = 0; j < n; ++j)
    if (sides.bernoulli(right_rate)) pset.push_back(j);
  Bitset in_s(k), in_p(n);
  for (int i : s) in_s.set(i);
  for (int j : pset) in_p.set(j);
  std::vector<BipartiteGraph::Edge> edges;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) {
      double q = p;
      if (in_s.test(i)) q = in_p.test(j) ? 1.0 : reduced;
      if (edges_rng.bernoulli(q)) edges.emplace_back(i, j);
    }
  const double stored = (p > 0.0 && p < 1.0) ? p : 0.5;
  return PlantedBiclique{BipartiteGraph(k, n, std::move(edges), stored), std::move(s),
                         std::move(pset)};
}

}  // namespace semiclique
