#ifndef SEMICLIQUE_SDP_H_
#define SEMICLIQUE_SDP_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace semiclique {

// coef * X(i, j). X is symmetric, so (i, j) and (j, i) name the same scalar.
struct MatrixTerm {
  int i = 0;
  int j = 0;
  double coef = 1.0;
};

// sum_t coef_t * X(i_t, j_t) == rhs
struct EqualityConstraint {
  std::vector<MatrixTerm> terms;
  double rhs = 0.0;
};

struct EntryBound {
  int i = 0;
  int j = 0;
  double lower = 0.0;
  double upper = 1.0;
};

struct NoObjective {};
// minimize sum_t coef_t * X(i_t, j_t)
struct LinearObjective {
  std::vector<MatrixTerm> terms;
};
// minimize sum_r (L_r(X))^2 with each L_r a linear functional on entries.
struct SquaredNormObjective {
  std::vector<std::vector<MatrixTerm>> rows;
};
using Objective = std::variant<NoObjective, LinearObjective, SquaredNormObjective>;

struct SDPProblem {
  int dim = 0;
  std::vector<EqualityConstraint> equalities;
  // Several bounds on one entry intersect; zero_pattern adds [0, 0].
  std::vector<EntryBound> bounds;
  std::vector<std::pair<int, int>> zero_pattern;
  Objective objective = NoObjective{};

  // Throws std::invalid_argument on out-of-range indices or empty bounds.
  void validate() const;
};

enum class SDPStatus { Converged, MaxIterations, InfeasibleCertified };
std::string to_string(SDPStatus s);

struct SDPOptions {
  double tol_p = 1e-6;
  double tol_d = 1e-6;
  int max_iter = 20000;
  double rho = 1.0;
  double relaxation = 1.6;
  bool adaptive_rho = true;
  // Minimum separation required by the weak-duality infeasibility test.
  double infeasibility_margin = 1e-6;
  int infeasibility_check_every = 100;
  // JSON line per `trace_every` iterations when non-null.
  std::ostream* trace = nullptr;
  int trace_every = 100;
};

struct SDPSolution {
  Eigen::MatrixXd X;  // exactly PSD (the cone-projected iterate)
  SDPStatus status = SDPStatus::MaxIterations;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double objective_value = 0.0;
  int iterations = 0;
  // Largest violation of any equality or bound by X, in constraint units
  // (constraint rows unnormalized).
  double constraint_violation = 0.0;
  // Separation achieved by the infeasibility certificate, if any.
  double infeasibility_gap = 0.0;
};

// Consensus ADMM: x in the affine set, z1 in the PSD cone, z2 in the box.
// Deterministic for fixed inputs. `initial` warm-starts all three copies.
SDPSolution solve(const SDPProblem& problem, const SDPOptions& options = {});
SDPSolution solve(const SDPProblem& problem, const SDPOptions& options,
                  const Eigen::MatrixXd& initial);

// Objective value and violations for an arbitrary symmetric X.
double objective_value(const SDPProblem& problem, const Eigen::MatrixXd& X);
double constraint_violation(const SDPProblem& problem, const Eigen::MatrixXd& X);

// Frobenius-nearest PSD matrix (negative eigenvalues clamped to zero).
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& X);
// Frobenius-nearest symmetric matrix satisfying every equality constraint.
Eigen::MatrixXd project_affine(const SDPProblem& problem, const Eigen::MatrixXd& X);

double min_eigenvalue(const Eigen::MatrixXd& X);
Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& X);  // ascending

}  // namespace semiclique

#endif  // SEMICLIQUE_SDP_H_
