#include "semiclique/graph.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace semiclique {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("Graph: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("Graph: self-loop at " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  adj_.assign(n, Bitset(n));
  for (auto [u, v] : edges_) {
    adj_[u].set(v);
    adj_[v].set(u);
  }
}

Graph Graph::complete(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, std::move(e));
}

bool Graph::is_clique(std::span<const int> vertices) const {
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (!adjacent(vertices[a], vertices[b])) return false;
  return true;
}

Bitset Graph::make_set(std::span<const int> vertices) const {
  Bitset s(n_);
  for (int v : vertices) s.set(v);
  return s;
}

BipartiteGraph::BipartiteGraph(int left_size, int right_size,
                               std::vector<Edge> edges, double p)
    : left_(left_size), right_(right_size), p_(p) {
  if (left_size < 0 || right_size < 0)
    throw std::invalid_argument("BipartiteGraph: negative side size");
  for (auto [i, j] : edges)
    if (i < 0 || j < 0 || i >= left_size || j >= right_size)
      throw std::invalid_argument("BipartiteGraph: edge index out of range");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  rows_.assign(left_, Bitset(right_));
  cols_.assign(right_, Bitset(left_));
  for (auto [i, j] : edges_) {
    rows_[i].set(j);
    cols_[j].set(i);
  }
}

BipartiteGraph BipartiteGraph::with_density(double p) const {
  BipartiteGraph copy = *this;
  copy.p_ = p;
  return copy;
}

double BipartiteGraph::biased(int i, int j) const {
  return has_edge(i, j) ? std::sqrt((1.0 - p_) / p_) : -std::sqrt(p_ / (1.0 - p_));
}

int BipartiteGraph::max_right_degree() const {
  int best = 0;
  for (const auto& c : cols_) best = std::max(best, static_cast<int>(c.count()));
  return best;
}

BipartiteGraph cut_graph(const Graph& g, std::span<const int> s, double p) {
  VertexSet left = canonical_set({s.begin(), s.end()});
  for (int v : left)
    if (v < 0 || v >= g.n()) throw std::invalid_argument("cut_graph: vertex out of range");
  std::vector<int> left_index(g.n(), -1), right_index(g.n(), -1);
  for (std::size_t i = 0; i < left.size(); ++i) left_index[left[i]] = static_cast<int>(i);
  int right = 0;
  for (int v = 0; v < g.n(); ++v)
    if (left_index[v] < 0) right_index[v] = right++;
  std::vector<BipartiteGraph::Edge> edges;
  for (auto [u, v] : g.edges()) {
    if (left_index[u] >= 0 && right_index[v] >= 0)
      edges.emplace_back(left_index[u], right_index[v]);
    else if (left_index[v] >= 0 && right_index[u] >= 0)
      edges.emplace_back(left_index[v], right_index[u]);
  }
  return BipartiteGraph(static_cast<int>(left.size()), right, std::move(edges), p);
}

VertexSet canonical_set(std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

std::size_t intersection_size(const VertexSet& a, const VertexSet& b) {
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else { ++c; ++i; ++j; }
  }
  return c;
}

}  // namespace semiclique
