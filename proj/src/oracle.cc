#include "semiclique/oracle.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace semiclique {
namespace {

void check_left_size(const BipartiteGraph& h) {
  if (h.left_size() > kMaxOracleLeftSize)
    throw BudgetExceeded("biclique oracle: left side " + std::to_string(h.left_size()) +
                         " exceeds limit " + std::to_string(kMaxOracleLeftSize));
}

// Depth-first walk over all left subsets carrying the common right
// neighborhood. `visit(size, chosen, common)` sees every subset once.
template <class Visit>
void walk_left_subsets(const BipartiteGraph& h, int next, std::vector<int>& chosen,
                       const Bitset& common, Visit& visit) {
  visit(chosen, common);
  if (!common.any()) return;  // no superset can have a right vertex
  for (int i = next; i < h.left_size(); ++i) {
    chosen.push_back(i);
    walk_left_subsets(h, i + 1, chosen, common & h.left_neighbors(i), visit);
    chosen.pop_back();
  }
}

}  // namespace

std::optional<BicliqueWitness> max_biclique_witness(const BipartiteGraph& h, int k) {
  check_left_size(h);
  if (k < 1 || k > h.left_size() + h.right_size())
    throw std::invalid_argument("max_biclique_left: need 1 <= k <= left + right");
  std::optional<BicliqueWitness> best;
  std::vector<int> chosen;
  auto visit = [&](const std::vector<int>& left, const Bitset& common) {
    const int l = static_cast<int>(left.size());
    const int need = k - l;
    if (need < 1 || static_cast<int>(common.count()) < need) return;
    if (best && static_cast<int>(best->left.size()) >= l) return;
    std::vector<int> right = common.indices();
    right.resize(need);
    best = BicliqueWitness{left, std::move(right)};
  };
  walk_left_subsets(h, 0, chosen, Bitset(h.right_size(), true), visit);
  return best;
}

int max_biclique_left(const BipartiteGraph& h, int k) {
  auto w = max_biclique_witness(h, k);
  return w ? static_cast<int>(w->left.size()) : 0;
}

std::vector<bool> feasible_left_sizes(const BipartiteGraph& h, int k) {
  check_left_size(h);
  if (k < 1) throw std::invalid_argument("feasible_left_sizes: need k >= 1");
  std::vector<bool> feasible(k, false);
  std::vector<int> chosen;
  auto visit = [&](const std::vector<int>& left, const Bitset& common) {
    const int l = static_cast<int>(left.size());
    const int need = k - l;
    if (need >= 1 && static_cast<int>(common.count()) >= need) feasible[l] = true;
  };
  walk_left_subsets(h, 0, chosen, Bitset(h.right_size(), true), visit);
  return feasible;
}

void for_each_clique(const Graph& g, int size,
                     const std::function<void(const VertexSet&)>& visit,
                     std::uint64_t budget) {
  if (size < 0) throw std::invalid_argument("for_each_clique: negative size");
  std::uint64_t found = 0;
  VertexSet current;
  std::function<void(const Bitset&)> grow = [&](const Bitset& candidates) {
    if (static_cast<int>(current.size()) == size) {
      if (++found > budget) throw BudgetExceeded("clique enumeration budget exceeded");
      visit(current);
      return;
    }
    const int missing = size - static_cast<int>(current.size());
    if (static_cast<int>(candidates.count()) < missing) return;
    for (int v : candidates.indices()) {
      Bitset next = candidates & g.neighbors(v);
      // Only extend with larger indices so each clique is produced once.
      for (int u : next.indices()) if (u < v) next.reset(u);
      current.push_back(v);
      grow(next);
      current.pop_back();
    }
  };
  grow(Bitset(g.n(), true));
}

std::vector<VertexSet> all_cliques(const Graph& g, int size, std::uint64_t budget) {
  std::vector<VertexSet> out;
  for_each_clique(g, size, [&](const VertexSet& c) { out.push_back(c); }, budget);
  return out;
}

std::vector<VertexSet> exact_good_clique_list(const Graph& g, int k, int l) {
  if (k < 1 || k > g.n()) throw std::invalid_argument("exact_good_clique_list: need 1 <= k <= n");
  if (k > kMaxOracleLeftSize) throw BudgetExceeded("exact_good_clique_list: k too large");
  std::vector<VertexSet> good;
  for_each_clique(g, k, [&](const VertexSet& clique) {
    const BipartiteGraph cut = cut_graph(g, clique);
    // An l x (k-l) biclique needs k-l right vertices; a cut with fewer right
    // vertices than 1 has none at all.
    if (cut.right_size() == 0 || max_biclique_left(cut, k) <= l) good.push_back(clique);
  });
  std::sort(good.begin(), good.end());
  return good;
}

int quasi_seed_size(int n, double c) {
  if (n < 2) return 1;
  return static_cast<int>(std::ceil(c * std::log2(static_cast<double>(n)) - 1e-12));
}

double default_quasi_constant(int n) {
  return n < 2 ? 2.0 : 2.0 / std::log2(static_cast<double>(n));
}

std::vector<VertexSet> prune_by_intersection(std::vector<VertexSet> sets, double cap) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<VertexSet> kept;
  for (auto& s : sets) {
    bool ok = true;
    for (const auto& t : kept)
      if (static_cast<double>(intersection_size(s, t)) > cap) {
        ok = false;
        break;
      }
    if (ok) kept.push_back(std::move(s));
  }
  return kept;
}

std::vector<VertexSet> quasi_brute_force(const Graph& g, int k, double c) {
  const int seed = quasi_seed_size(g.n(), c);
  if (seed < 1) throw std::invalid_argument("quasi_brute_force: ceil(c log2 n) must be >= 1");
  if (k < 1 || k > g.n()) return {};
  std::set<VertexSet> found;
  if (seed <= k) {
    for_each_clique(g, seed, [&](const VertexSet& u) {
      Bitset common(g.n(), true);
      for (int v : u) common &= g.neighbors(v);
      VertexSet candidate = common.indices();
      candidate.insert(candidate.end(), u.begin(), u.end());
      if (static_cast<int>(candidate.size()) != k) return;
      candidate = canonical_set(std::move(candidate));
      if (g.is_clique(candidate)) found.insert(std::move(candidate));
    });
  }
  const double cap = c * std::log2(static_cast<double>(std::max(g.n(), 2)));
  return prune_by_intersection({found.begin(), found.end()}, cap);
}

}  // namespace semiclique
