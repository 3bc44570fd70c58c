#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "semiclique/generators.h"
#include "semiclique/graph.h"
#include "semiclique/oracle.h"

namespace semiclique {
namespace {

BipartiteGraph complete_bipartite(int a, int b) {
  std::vector<BipartiteGraph::Edge> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, j);
  return BipartiteGraph(a, b, e);
}

Graph clique_plus_isolated(int k, int extra) {
  std::vector<Graph::Edge> e;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) e.emplace_back(u, v);
  return Graph(k + extra, e);
}

VertexSet range(int from, int to) {
  VertexSet s;
  for (int v = from; v < to; ++v) s.push_back(v);
  return s;
}

// Independent reference: for each right subset R, the common left
// neighborhood is the largest L.
int max_biclique_left_by_right_subsets(const BipartiteGraph& h, int k) {
  int best = 0;
  const int m = h.right_size();
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    const int rsize = std::popcount(mask);
    if (rsize > k) continue;
    int common = 0;
    for (int i = 0; i < h.left_size(); ++i) {
      bool all = true;
      for (int j = 0; j < m; ++j)
        if ((mask >> j & 1) && !h.has_edge(i, j)) all = false;
      common += all;
    }
    if (common >= k - rsize) best = std::max(best, k - rsize);
  }
  return best;
}

TEST(MaxBicliqueLeft, CompleteBipartite) {
  EXPECT_EQ(max_biclique_left(complete_bipartite(3, 5), 4), 3);
}

TEST(MaxBicliqueLeft, EmptyBipartite) {
  EXPECT_EQ(max_biclique_left(BipartiteGraph(3, 5, {}), 4), 0);
}

TEST(MaxBicliqueLeft, SingleEdge) {
  BipartiteGraph h(2, 2, {{0, 0}});
  EXPECT_EQ(max_biclique_left(h, 2), 1);
  auto w = max_biclique_witness(h, 2);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->left, VertexSet{0});
  EXPECT_EQ(w->right, VertexSet{0});
}

TEST(MaxBicliqueLeft, AgreesWithRightSubsetEnumeration) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    BipartiteGraph h = sample_er_bipartite(8, 10, 0.6, seed);
    for (int k : {3, 6, 9}) {
      EXPECT_EQ(max_biclique_left(h, k), max_biclique_left_by_right_subsets(h, k));
      auto w = max_biclique_witness(h, k);
      if (!w) continue;
      EXPECT_EQ(w->left.size() + w->right.size(), static_cast<std::size_t>(k));
      EXPECT_GE(w->right.size(), 1u);
      for (int u : w->left)
        for (int v : w->right) EXPECT_TRUE(h.has_edge(u, v));
    }
  }
}

TEST(MaxBicliqueLeft, MonotoneUnderEdgeAddition) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BipartiteGraph h = sample_er_bipartite(9, 12, 0.5, seed);
    BipartiteGraph extra = sample_er_bipartite(9, 12, 0.2, seed + 1000);
    std::vector<BipartiteGraph::Edge> e = h.edges();
    e.insert(e.end(), extra.edges().begin(), extra.edges().end());
    BipartiteGraph sup(9, 12, e);
    for (int k = 2; k <= 9; ++k) EXPECT_LE(max_biclique_left(h, k), max_biclique_left(sup, k));
  }
}

TEST(MaxBicliqueLeft, FeasibleSizesConsistent) {
  BipartiteGraph h = sample_er_bipartite(8, 12, 0.5, 3);
  const int k = 8;
  auto feasible = feasible_left_sizes(h, k);
  ASSERT_EQ(feasible.size(), static_cast<std::size_t>(k));
  int best = 0;
  for (int l = 0; l < k; ++l)
    if (feasible[l]) best = l;
  EXPECT_EQ(best, max_biclique_left(h, k));
  EXPECT_TRUE(feasible[0]);
}

TEST(MaxBicliqueLeft, RejectsLargeLeftSide) {
  BipartiteGraph h(kMaxOracleLeftSize + 1, 2, {});
  EXPECT_THROW(max_biclique_left(h, 3), BudgetExceeded);
}

TEST(Cliques, EnumerationMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    FKInstance inst = sample_fk(14, 5, 0.5, {}, seed);
    auto cliques = all_cliques(inst.graph, 4);
    std::size_t brute = 0;
    for (unsigned mask = 0; mask < (1u << 14); ++mask) {
      if (std::popcount(mask) != 4) continue;
      VertexSet s;
      for (int v = 0; v < 14; ++v)
        if (mask >> v & 1) s.push_back(v);
      brute += inst.graph.is_clique(s);
    }
    EXPECT_EQ(cliques.size(), brute);
    EXPECT_TRUE(std::is_sorted(cliques.begin(), cliques.end()));
  }
}

TEST(Cliques, BudgetEnforced) {
  EXPECT_THROW(all_cliques(Graph::complete(20), 5, 100), BudgetExceeded);
}

TEST(GoodCliques, SingleCliqueWithIsolatedVertices) {
  Graph g = clique_plus_isolated(6, 10);
  EXPECT_EQ(exact_good_clique_list(g, 6, 1), std::vector<VertexSet>{range(0, 6)});
}

TEST(GoodCliques, TwoDisjointCliques) {
  const int k = 5;
  std::vector<Graph::Edge> e;
  for (int base : {0, k})
    for (int u = 0; u < k; ++u)
      for (int v = u + 1; v < k; ++v) e.emplace_back(base + u, base + v);
  Graph g(2 * k, e);
  for (int l = 1; l < k; ++l)
    EXPECT_EQ(exact_good_clique_list(g, k, l), (std::vector<VertexSet>{range(0, k), range(k, 2 * k)}));
}

TEST(GoodCliques, DefinitionCheckedAgainstBicliqueOracle) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    FKInstance inst = sample_fk(24, 8, 0.5, {}, seed);
    const int l = 3;
    auto good = exact_good_clique_list(inst.graph, 8, l);
    for (const auto& s : all_cliques(inst.graph, 8)) {
      const bool is_good = max_biclique_left(cut_graph(inst.graph, s), 8) <= l;
      EXPECT_EQ(is_good, std::binary_search(good.begin(), good.end(), s));
    }
  }
}

TEST(GoodCliques, ListLengthBound) {
  // Length bound holds whenever k > 2 sqrt(n l / delta).
  const int n = 40, k = 16, l = 1;
  const double delta = 1.0;
  ASSERT_GT(k, 2 * std::sqrt(n * l / delta));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    FKInstance inst = sample_fk(n, k, 0.5, {DeleteAllCut{}, DisjointPlantedCopies{1}}, seed);
    auto good = exact_good_clique_list(inst.graph, k, l);
    EXPECT_LE(good.size(), (1 + delta) * n / k);
    for (const auto& s : good) EXPECT_TRUE(inst.graph.is_clique(s));
  }
}

TEST(QuasiBruteForce, SeedSize) {
  EXPECT_EQ(quasi_seed_size(30, default_quasi_constant(30)), 2);
  EXPECT_EQ(quasi_seed_size(1024, 0.5), 5);
}

TEST(QuasiBruteForce, SingleClique) {
  Graph g = clique_plus_isolated(14, 16);
  EXPECT_EQ(quasi_brute_force(g, 14, default_quasi_constant(30)), std::vector<VertexSet>{range(0, 14)});
}

TEST(QuasiBruteForce, NoClique) {
  EXPECT_TRUE(quasi_brute_force(Graph::empty(20), 5, default_quasi_constant(20)).empty());
  EXPECT_TRUE(quasi_brute_force(clique_plus_isolated(4, 16), 5, 0.5).empty());
}

TEST(QuasiBruteForce, RecoversPlantedClique) {
  int hits = 0;
  const int n = 30, k = 14;
  // Seed cliques of size 2 leave a common outside neighbor too often at n = 30.
  const double c = 3.0 / std::log2(n);
  ASSERT_EQ(quasi_seed_size(n, c), 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    FKInstance inst = sample_fk(n, k, 0.5, {}, seed);
    auto list = quasi_brute_force(inst.graph, k, c);
    hits += std::find(list.begin(), list.end(), inst.planted) != list.end();
    const double cap = c * std::log2(n);
    for (std::size_t a = 0; a < list.size(); ++a) {
      EXPECT_TRUE(inst.graph.is_clique(list[a]));
      EXPECT_EQ(list[a].size(), static_cast<std::size_t>(k));
      for (std::size_t b = a + 1; b < list.size(); ++b)
        EXPECT_LE(intersection_size(list[a], list[b]), std::ceil(cap));
    }
  }
  EXPECT_GE(hits, 19);
}

TEST(PruneByIntersection, KeepsLexicographicallySmallest) {
  std::vector<VertexSet> sets = {{2, 3, 4}, {0, 1, 2}, {0, 1, 3}, {5, 6, 7}};
  auto kept = prune_by_intersection(sets, 1);
  EXPECT_EQ(kept, (std::vector<VertexSet>{{0, 1, 2}, {2, 3, 4}, {5, 6, 7}}));
}

}  // namespace
}  // namespace semiclique
