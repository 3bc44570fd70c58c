#ifndef SEMICLIQUE_LISTDECODE_H_
#define SEMICLIQUE_LISTDECODE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "semiclique/graph.h"
#include "semiclique/io.h"
#include "semiclique/rng.h"
#include "semiclique/sos.h"

namespace semiclique {

struct DecodeParams {
  int t = 1;
  int repetitions = 0;  // N; 0 selects ceil(4 (n/k)^t)
  double delta = 0.25;
  // Degree threshold fraction f: keep v iff deg_S(v) >= f k - 1. Unset
  // selects 1 - (1 - p) / 6.
  std::optional<double> cleanup_threshold_fraction;
  // Pairwise intersection cap; unset selects ceil(3 ln n / ln(1/p)).
  std::optional<int> intersection_cap;
  // Unset selects default_divisor_floor(n, k, t).
  std::optional<double> divisor_floor;
  int max_retries = 100;

  // Throws std::invalid_argument unless t >= 1, N >= 0 and 0 < delta < 1/2.
  void validate() const;
};

int default_repetitions(int n, int k, int t);
int default_intersection_cap(int n, double p);
double default_cleanup_fraction(double p);

struct Candidate {
  VertexSet set;
  std::vector<int> q;
  double weight = 0.0;  // E[w_Q]
  int repetition = 0;
};

struct CleanupStep {
  VertexSet input;
  VertexSet first_pass;
  VertexSet second_pass;
  bool is_k_clique = false;
};

struct DecodeMetrics {
  bool raw_contains_planted = false;
  bool final_contains_planted = false;
  double max_raw_intersection_fraction = 0.0;
  std::size_t final_length = 0;
};

struct DecodeReport {
  std::vector<Candidate> raw_candidates;
  std::vector<CleanupStep> cleanup_log;
  std::vector<VertexSet> final_list;
  int repetitions = 0;
  int resampled = 0;  // tuples redrawn after DivisorTooSmall
  int intersection_cap = 0;
  std::optional<DecodeMetrics> metrics;
};

// Q = (i_1, ..., i_t) with probability E[w_Q] / k^t by sequential
// conditioning. Throws DivisorTooSmall after max_retries failed draws.
std::vector<int> sample_tuple(const PseudoDistribution& d, int t, RandomStream& rng,
                              double divisor_floor, int max_retries = 100, int* resampled = nullptr);

// E[w_Q] / k^t.
double tuple_probability(const PseudoDistribution& d, std::span<const int> q);

// Rounding by votes: N tuples, threshold C_Q at 1 - 2 delta (ties kept),
// distinct candidates in order of first appearance.
DecodeReport decode(const Graph& g, int k, const DecodeParams& params, const PseudoDistribution& d,
                    std::uint64_t seed);

// Degree repair twice, keep k-cliques, then prune by pairwise intersection.
DecodeReport cleanup(const Graph& g, int k, double p, DecodeReport raw, const DecodeParams& params = {});

// One repair pass: {v : deg_S(v) >= fraction * k - 1}.
VertexSet degree_repair(const Graph& g, int k, double fraction, const VertexSet& s);

void attach_metrics(DecodeReport& report, const VertexSet& planted);

// The rounding condition omega * (n / k^2)^t <= delta * k, with omega the
// certified bound.
bool rounding_condition_holds(double omega, int n, int k, int t, double delta);

// Length bound (n / k)(1 + 2 n cap / k^2) for families with pairwise
// intersections <= cap, meaningful when k >= sqrt(2 n cap).
double pruned_length_bound(int n, int k, int cap);

Json to_json(const DecodeReport& report);

}  // namespace semiclique

#endif  // SEMICLIQUE_LISTDECODE_H_
