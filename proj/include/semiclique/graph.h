#ifndef SEMICLIQUE_GRAPH_H_
#define SEMICLIQUE_GRAPH_H_

#include <span>
#include <utility>
#include <vector>

#include "semiclique/bitset.h"

namespace semiclique {

using VertexSet = std::vector<int>;  // sorted, duplicate free

// Undirected simple graph on {0..n-1}. Edges are stored canonically (u < v),
// sorted and deduplicated; a dense bitset adjacency backs the queries.
class Graph {
 public:
  using Edge = std::pair<int, int>;

  Graph() = default;
  // Throws std::invalid_argument on self-loops or out-of-range endpoints.
  Graph(int n, std::vector<Edge> edges);

  static Graph complete(int n);
  static Graph empty(int n) { return Graph(n, {}); }

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }

  bool adjacent(int u, int v) const { return u != v && adj_[u].test(v); }
  const Bitset& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].count()); }

  bool is_clique(std::span<const int> vertices) const;
  // Number of neighbors of v inside `set` (v itself never counts).
  int degree_into(int v, const Bitset& set) const {
    return static_cast<int>(adj_[v].intersection_count(set));
  }

  Bitset make_set(std::span<const int> vertices) const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Bitset> adj_;
};

// Bipartite graph with `left_size` left and `right_size` right vertices, each
// side indexed from 0. Carries the edge density p used by the p-biased view.
class BipartiteGraph {
 public:
  using Edge = std::pair<int, int>;  // (left, right)

  BipartiteGraph() = default;
  BipartiteGraph(int left_size, int right_size, std::vector<Edge> edges,
                 double p = 0.5);

  int left_size() const { return left_; }
  int right_size() const { return right_; }
  double density() const { return p_; }
  BipartiteGraph with_density(double p) const;

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }

  bool has_edge(int i, int j) const { return rows_[i].test(j); }
  // +1 on edges, -1 otherwise.
  int sign(int i, int j) const { return has_edge(i, j) ? 1 : -1; }
  // sqrt((1-p)/p) on edges, -sqrt(p/(1-p)) otherwise.
  double biased(int i, int j) const;

  const Bitset& left_neighbors(int i) const { return rows_[i]; }
  const Bitset& right_neighbors(int j) const { return cols_[j]; }
  int right_degree(int j) const { return static_cast<int>(cols_[j].count()); }
  int max_right_degree() const;

  bool operator==(const BipartiteGraph& o) const {
    return left_ == o.left_ && right_ == o.right_ && edges_ == o.edges_;
  }

 private:
  int left_ = 0;
  int right_ = 0;
  double p_ = 0.5;
  std::vector<Edge> edges_;
  std::vector<Bitset> rows_;
  std::vector<Bitset> cols_;
};

// Bipartite graph between S (left, sorted order) and V \ S (right, sorted
// order) keeping exactly the edges of G that cross.
BipartiteGraph cut_graph(const Graph& g, std::span<const int> s, double p = 0.5);

// Sorted copy with duplicates removed.
VertexSet canonical_set(std::vector<int> vertices);

std::size_t intersection_size(const VertexSet& a, const VertexSet& b);

}  // namespace semiclique

#endif  // SEMICLIQUE_GRAPH_H_
