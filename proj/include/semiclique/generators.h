#ifndef SEMICLIQUE_GENERATORS_H_
#define SEMICLIQUE_GENERATORS_H_

#include <cstdint>
#include <string>
#include <variant>

#include "semiclique/graph.h"

namespace semiclique {

// Deletion strategies act on cut(S*) only.
struct NoDeletion {};
struct DeleteAllCut {};
struct DeleteRandomCutFraction {
  double fraction = 0.5;
};
// Trims cut edges of the planted vertices down to the smallest planted cut
// degree. Removed neighbors are taken in decreasing index order.
struct DegreeFlatten {};
using DeletionStrategy =
    std::variant<NoDeletion, DeleteAllCut, DeleteRandomCutFraction, DegreeFlatten>;

// Addition strategies rewrite edges with both endpoints in V \ S* only.
struct NoAddition {};
struct DisjointPlantedCopies {
  int count = 1;
};
struct FullCliqueOnComplementSubset {
  int size = 0;
};
struct ErdosRenyiRewrite {
  double q = 0.5;
};
using AdditionStrategy = std::variant<NoAddition, DisjointPlantedCopies,
                                      FullCliqueOnComplementSubset, ErdosRenyiRewrite>;

struct AdversaryPlan {
  DeletionStrategy deletion = NoDeletion{};
  AdditionStrategy addition = NoAddition{};
};

std::string to_string(const DeletionStrategy& s);
std::string to_string(const AdditionStrategy& s);

struct FKParams {
  int n = 0;
  int k = 0;
  double p = 0.5;
};

// One draw from the semi-random model together with its hidden planted set.
struct FKInstance {
  Graph graph;
  VertexSet planted;
  FKParams params;
  AdversaryPlan plan;
  std::uint64_t seed = 0;
};

// The graph after each generation phase, for auditing the adversary.
struct FKPhases {
  Graph random_phase;
  Graph after_deletion;
  Graph after_addition;
  VertexSet planted;
};

// k*m potential edges, each present independently with probability p.
BipartiteGraph sample_er_bipartite(int k, int m, double p, std::uint64_t seed);

// Throws std::invalid_argument on k outside [1, n], p outside [0, 1] or plan
// parameters that do not fit (e.g. a complement clique larger than n - k).
FKInstance sample_fk(int n, int k, double p, const AdversaryPlan& plan,
                     std::uint64_t seed);
FKPhases sample_fk_phases(int n, int k, double p, const AdversaryPlan& plan,
                          std::uint64_t seed);

struct PlantedBiclique {
  BipartiteGraph graph;
  VertexSet left_set;   // S
  VertexSet right_set;  // P
};

// Edge probability for S x (not P) pairs in the planted-biclique model.
double planted_biclique_reduced_probability(int k, int n, int l, double p);

// Planted biclique model on a k x n bipartite graph: S keeps each left vertex
// w.p. l/k, P each right vertex w.p. (k-l)/n; S x P is complete, S x (not P)
// uses the reduced probability so left degrees keep their null mean.
PlantedBiclique sample_planted_biclique(int k, int n, int l, double p,
                                        std::uint64_t seed);

}  // namespace semiclique

#endif  // SEMICLIQUE_GENERATORS_H_
