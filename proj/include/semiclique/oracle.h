#ifndef SEMICLIQUE_ORACLE_H_
#define SEMICLIQUE_ORACLE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "semiclique/graph.h"

namespace semiclique {

// Thrown when an exhaustive routine would exceed its enumeration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BicliqueWitness {
  VertexSet left;
  VertexSet right;
};

// Largest left side enumerated by the biclique oracles (2^24 subsets).
inline constexpr int kMaxOracleLeftSize = 24;

// Maximum l such that H contains an l x (k-l) biclique with k-l >= 1, or 0 if
// there is none. Enumerates all left subsets.
int max_biclique_left(const BipartiteGraph& h, int k);
std::optional<BicliqueWitness> max_biclique_witness(const BipartiteGraph& h, int k);

// feasible[l] is true iff an l x (k-l) biclique with k-l >= 1 exists,
// for l in [0, k-1].
std::vector<bool> feasible_left_sizes(const BipartiteGraph& h, int k);

// Calls `visit` on every k-clique of g (sorted vertex lists). Stops early and
// throws BudgetExceeded after `budget` cliques.
void for_each_clique(const Graph& g, int size,
                     const std::function<void(const VertexSet&)>& visit,
                     std::uint64_t budget = 5'000'000);
std::vector<VertexSet> all_cliques(const Graph& g, int size,
                                   std::uint64_t budget = 5'000'000);

// All l-good k-cliques of g, lexicographically sorted.
std::vector<VertexSet> exact_good_clique_list(const Graph& g, int k, int l);

// Seed-clique size ceil(c * log2 n) used by quasi_brute_force.
int quasi_seed_size(int n, double c);
// Smallest c giving a seed size of 2 (c * log2 n == 2).
double default_quasi_constant(int n);

// Enumerates every seed clique U of size ceil(c log2 n), keeps U plus its
// common neighborhood whenever that is a k-clique, then greedily drops any
// clique (in lexicographic order) meeting an earlier kept one in more than
// c log2 n vertices.
std::vector<VertexSet> quasi_brute_force(const Graph& g, int k, double c);

// Greedy pruning shared by the brute-force and decoding paths: walk `sets`
// in lexicographic order and keep a set iff its intersection with every kept
// set is <= cap.
std::vector<VertexSet> prune_by_intersection(std::vector<VertexSet> sets, double cap);

}  // namespace semiclique

#endif  // SEMICLIQUE_ORACLE_H_
