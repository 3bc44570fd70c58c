#ifndef SEMICLIQUE_CERTIFY_H_
#define SEMICLIQUE_CERTIFY_H_

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "semiclique/graph.h"
#include "semiclique/io.h"
#include "semiclique/sdp.h"

namespace semiclique {

struct BalancednessReport {
  int r = 0;
  // max over nonempty left S, |S| <= r, of |sum_j prod_{i in S} (+-1)(i, j)|.
  double delta_r = 0.0;
  // max over S != T, |S|, |T| <= r, of |sum_j u_{p,S}(j) u_{p,T}(j)| with
  // p-biased characters; absent when the pair enumeration exceeds the budget.
  std::optional<double> delta_2r_p;
  int max_right_degree = 0;
};

inline constexpr std::uint64_t kBalancednessBudget = 400'000'000;

// Throws std::invalid_argument if r > left_size and BudgetExceeded if the
// subset enumeration (subsets times right_size) exceeds `budget`.
BalancednessReport balancedness(const BipartiteGraph& h, int r,
                                std::uint64_t budget = kBalancednessBudget);

enum class CertificateKind { Spectral, Geometric, Degree2SDP };
std::string to_string(CertificateKind kind);

// certified_bound = s means: no l x (k - l) biclique with k - l >= 1 and
// l >= s exists. Present iff applicable.
struct BicliqueCertificate {
  CertificateKind kind = CertificateKind::Spectral;
  int k = 0;
  double p = 0.5;
  int r = 0;
  bool applicable = false;
  std::optional<int> certified_bound;

  std::optional<BalancednessReport> balancedness;
  int max_right_degree = 0;

  // Spectral witness.
  std::optional<double> spectral_norm;
  std::optional<double> product_bound;

  // Geometric witness.
  std::optional<double> delta_l;
  std::optional<double> delta_2r;
  std::optional<double> precondition_lhs;
  std::optional<double> precondition_rhs;
  std::optional<double> log_set_bound;  // log of n * (2n M^r p^r / (k (1-p)^{r+1}))^4
  std::optional<double> headline_log10;  // log10 of (1000 r)^{10 r} n (n / k)^4

  // Degree-2 SDP witness: largest l not refuted, and per-l statuses.
  std::optional<Json> sdp_diagnostics;
};

// Largest singular value of the p-biased matrix via the smaller Gram matrix.
double biased_spectral_norm(const BipartiteGraph& h, double p);

// |x| |y| <= (p / (1 - p)) sigma^2 for every biclique (x, y). Resolved into a
// bound on l using the right-degree bound l <= max_right_degree.
BicliqueCertificate spectral_bound(const BipartiteGraph& h, int k, double p);

// n * (n / k)^4 style bound at 0/1 points, valid when the measured
// balancedness precondition holds. n is left_size + right_size.
BicliqueCertificate geometric_bound(const BipartiteGraph& h, int k, double p, int r);

// log10 of (1000 r)^{10 r} * n * (n / k)^4.
double headline_bound_log10(int r, double n, double k);

// Recomputes every witness field from h and compares exactly.
bool verify(const BicliqueCertificate& cert, const BipartiteGraph& h);

Json to_json(const BalancednessReport& report);
Json to_json(const BicliqueCertificate& cert);

// Degree-2 SDP over (left_size + right_size)-dimensional X.
SDPProblem biclique_sdp(const BipartiteGraph& h, int k, int l);

enum class Feasibility { Feasible, Infeasible, Unknown };
std::string to_string(Feasibility f);

struct SdpFeasibilityResult {
  Feasibility status = Feasibility::Unknown;
  std::optional<Eigen::MatrixXd> X;
  // "pre-solver", "closed-form", "integral-witness" or "admm".
  std::string route;
  std::string reason;
  std::optional<SDPSolution> solver;
};

SdpFeasibilityResult sdp_biclique_feasibility(const BipartiteGraph& h, int k, int l,
                                              const SDPOptions& options = {},
                                              const Eigen::MatrixXd* warm_start = nullptr);

// Refutes l = k - 1, k - 2, ... until the SDP stops being infeasible.
BicliqueCertificate degree2_sdp_bound(const BipartiteGraph& h, int k,
                                      const SDPOptions& options = {});

struct LbConstructionReport {
  Eigen::MatrixXd X;
  double c1 = 0.0;
  // Largest violation over the trace, side-sum, cross-sum and non-edge
  // equalities.
  double linear_residual = 0.0;
  double min_entry = 0.0;
  double max_entry = 0.0;
  // Largest violation of 0 <= X(i, j) <= 1.
  double entry_violation = 0.0;
  double min_eigenvalue = 0.0;
};

// Explicit moment-style solution for H with left_size = k. Throws
// std::invalid_argument when H has no edges.
LbConstructionReport sdp_lb_construction(const BipartiteGraph& h, int k, int l);

}  // namespace semiclique

#endif  // SEMICLIQUE_CERTIFY_H_
