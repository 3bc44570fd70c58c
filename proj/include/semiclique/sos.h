#ifndef SEMICLIQUE_SOS_H_
#define SEMICLIQUE_SOS_H_

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "semiclique/graph.h"
#include "semiclique/io.h"
#include "semiclique/sdp.h"

namespace semiclique {

// Moment-matrix relaxation of the k-clique axioms. Rows are indexed by the
// cliques of size <= d/2 only: any subset containing a non-edge has
// E[w_S] = E[w_S^2] = 0, so its row vanishes in every feasible solution.
struct CliqueRelaxation {
  int n = 0;
  int k = 0;
  int degree = 0;
  std::vector<VertexSet> index;  // index[0] is the empty set
  // Distinct cliques of size <= d; moment_entries[c] lists the matrix
  // entries (a <= b) whose union is moments_sets[c].
  std::vector<VertexSet> moment_sets;
  std::vector<std::vector<std::pair<int, int>>> moment_entries;
  std::map<VertexSet, int> moment_id;
  SDPProblem problem;
};

inline constexpr std::size_t kDefaultMomentDimBudget = 800;

// Throws std::invalid_argument unless d is 2, 4 or 6 and 1 <= k <= n, and
// BudgetExceeded when the index exceeds `max_dim`.
CliqueRelaxation build_clique_relaxation(const Graph& g, int k, int d,
                                         std::size_t max_dim = kDefaultMomentDimBudget);

// Degree-d pseudo-distribution over clique indicators. Subsets that are not
// cliques have moment exactly zero and are not stored.
class PseudoDistribution {
 public:
  PseudoDistribution() = default;
  PseudoDistribution(int n, int k, int degree, std::map<VertexSet, double> moments, double eta);

  int n() const { return n_; }
  int k() const { return k_; }
  int degree() const { return degree_; }
  double eta() const { return eta_; }
  const std::map<VertexSet, double>& moments() const { return moments_; }

  // E[prod_{i in S} w_i] with repeated indices merged. Throws
  // std::invalid_argument when more than d distinct indices appear.
  double expectation(std::span<const int> vertices) const;
  Eigen::VectorXd mean() const;  // E[w_i]
  // Moment matrix over the stored subsets of size <= d/2.
  Eigen::MatrixXd moment_matrix() const;

  SDPStatus solver_status = SDPStatus::Converged;
  int solver_iterations = 0;
  double solver_primal_residual = 0.0;
  double solver_dual_residual = 0.0;
  double objective = 0.0;

 private:
  int n_ = 0;
  int k_ = 0;
  int degree_ = 0;
  std::map<VertexSet, double> moments_;
  double eta_ = 0.0;
};

double pseudo_expectation(const PseudoDistribution& d, std::span<const int> vertices);

// Achieved constraint residual of a moment assignment against G: box,
// cardinality, normalization and -lambda_min of the moment matrix.
double measure_eta(const Graph& g, const PseudoDistribution& d);

class RelaxationInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The solver stopped at max_iter; `partial` holds the last iterate.
class SolverDidNotConverge : public std::runtime_error {
 public:
  SolverDidNotConverge(const std::string& what, PseudoDistribution partial)
      : std::runtime_error(what), partial(std::move(partial)) {}
  PseudoDistribution partial;
};

struct SosOptions {
  SDPOptions sdp;
  std::size_t max_dim = kDefaultMomentDimBudget;
};

// Minimizes ||E[w]||^2 over the relaxation. Moments are averages of the
// PSD iterate over each moment's entries.
PseudoDistribution minimize_mean_norm(const Graph& g, int k, int d, const SosOptions& options = {});

// Extracts moments from a solved matrix.
PseudoDistribution extract_pseudo_distribution(const Graph& g, const CliqueRelaxation& rel,
                                               const Eigen::MatrixXd& X);

class DivisorTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConditionalVector {
  std::vector<int> q;
  std::vector<double> values;  // E[w_Q w_i] / E[w_Q]
};

double default_divisor_floor(int n, int k, int t);

// Throws DivisorTooSmall when E[w_Q] <= divisor_floor and
// std::invalid_argument when |set(Q)| + 1 > d.
ConditionalVector reweight(const PseudoDistribution& d, std::span<const int> q, double divisor_floor);
ConditionalVector reweight(const PseudoDistribution& d, std::span<const int> q);

// Keys are space-separated sorted vertex lists ("" for the empty set).
Json to_json(const PseudoDistribution& d);
PseudoDistribution pseudo_distribution_from_json(const Json& j);

}  // namespace semiclique

#endif  // SEMICLIQUE_SOS_H_
