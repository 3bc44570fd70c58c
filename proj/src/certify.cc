#include "semiclique/certify.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "semiclique/oracle.h"

namespace semiclique {
namespace {

double count_subsets_up_to(int n, int r) {
  double total = 0.0, c = 1.0;
  for (int s = 1; s <= r; ++s) {
    c = c * (n - s + 1) / s;
    total += c;
  }
  return total;
}

double log_binomial(int n, int r) {
  if (r < 0 || r > n) return -INFINITY;
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

// Visits every nonempty left subset of size <= r in lexicographic order.
template <typename Visit>
void for_each_subset(int n, int r, Visit&& visit) {
  std::vector<int> stack;
  std::function<void(int)> rec = [&](int start) {
    for (int i = start; i < n; ++i) {
      stack.push_back(i);
      visit(stack);
      if (static_cast<int>(stack.size()) < r) rec(i + 1);
      stack.pop_back();
    }
  };
  rec(0);
}

double max_abs_sum_pm(const BipartiteGraph& h, int r) {
  const int n = h.left_size();
  const auto m = static_cast<long long>(h.right_size());
  std::vector<Bitset> acc(static_cast<std::size_t>(r) + 1, Bitset(h.right_size()));
  long long best = 0;
  for_each_subset(n, r, [&](const std::vector<int>& s) {
    const std::size_t depth = s.size();
    acc[depth] = acc[depth - 1];
    acc[depth] ^= h.left_neighbors(s.back());
    // Columns with an odd number of non-edges contribute -1.
    const auto x = static_cast<long long>(acc[depth].count());
    const long long odd = depth % 2 == 0 ? x : m - x;
    best = std::max(best, std::llabs(m - 2 * odd));
  });
  return static_cast<double>(best);
}

std::optional<double> max_abs_pair_biased(const BipartiteGraph& h, int r, double p,
                                          std::uint64_t budget) {
  const int n = h.left_size();
  const int m = h.right_size();
  const double count = count_subsets_up_to(n, r) + 1.0;  // include the empty set
  if (count * count / 2.0 * m > static_cast<double>(budget)) return std::nullopt;
  const BipartiteGraph hp = h.with_density(p);
  std::vector<std::vector<double>> rows;
  rows.emplace_back(m, 1.0);
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(r) + 1);
  partial[0].assign(m, 1.0);
  for_each_subset(n, r, [&](const std::vector<int>& s) {
    const std::size_t depth = s.size();
    partial[depth].resize(m);
    for (int j = 0; j < m; ++j) partial[depth][j] = partial[depth - 1][j] * hp.biased(s.back(), j);
    rows.push_back(partial[depth]);
  });
  double best = 0.0;
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      double sum = 0.0;
      for (int j = 0; j < m; ++j) sum += rows[a][j] * rows[b][j];
      best = std::max(best, std::abs(sum));
    }
  return best;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

BalancednessReport balancedness(const BipartiteGraph& h, int r, std::uint64_t budget) {
  if (r < 0 || r > h.left_size()) throw std::invalid_argument("balancedness: need 0 <= r <= left_size");
  if (count_subsets_up_to(h.left_size(), r) * std::max(1, h.right_size()) > static_cast<double>(budget))
    throw BudgetExceeded("balancedness: subset enumeration exceeds budget");
  BalancednessReport rep;
  rep.r = r;
  rep.delta_r = max_abs_sum_pm(h, r);
  rep.delta_2r_p = max_abs_pair_biased(h, r, h.density(), budget);
  rep.max_right_degree = h.max_right_degree();
  return rep;
}

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::Spectral: return "spectral";
    case CertificateKind::Geometric: return "geometric";
    case CertificateKind::Degree2SDP: return "degree2-sdp";
  }
  return "unknown";
}

std::string to_string(Feasibility f) {
  switch (f) {
    case Feasibility::Feasible: return "feasible";
    case Feasibility::Infeasible: return "infeasible";
    case Feasibility::Unknown: return "unknown";
  }
  return "unknown";
}

double biased_spectral_norm(const BipartiteGraph& h, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("biased_spectral_norm: need 0 < p < 1");
  const int L = h.left_size(), R = h.right_size();
  if (L == 0 || R == 0) return 0.0;
  const BipartiteGraph hp = h.with_density(p);
  Eigen::MatrixXd M(L, R);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < R; ++j) M(i, j) = hp.biased(i, j);
  Eigen::MatrixXd gram = L <= R ? Eigen::MatrixXd(M * M.transpose()) : Eigen::MatrixXd(M.transpose() * M);
  const Eigen::VectorXd w = eigenvalues(gram);
  return std::sqrt(std::max(0.0, w[w.size() - 1]));
}

BicliqueCertificate spectral_bound(const BipartiteGraph& h, int k, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("spectral_bound: need 0 < p < 1");
  if (k < 1) throw std::invalid_argument("spectral_bound: need k >= 1");
  BicliqueCertificate c;
  c.kind = CertificateKind::Spectral;
  c.k = k;
  c.p = p;
  c.max_right_degree = h.max_right_degree();
  const double sigma = biased_spectral_norm(h, p);
  c.spectral_norm = sigma;
  const double B = p / (1.0 - p) * sigma * sigma;
  c.product_bound = B;
  // Sides l and k - l with s0 <= l <= k - s0 have l (k - l) >= s0 (k - s0) > B.
  std::optional<int> s0;
  for (int s = 1; 2 * s <= k; ++s)
    if (static_cast<double>(s) * (k - s) > B) {
      s0 = s;
      break;
    }
  if (s0 && c.max_right_degree <= k - *s0) {
    c.applicable = true;
    c.certified_bound = std::min(*s0, c.max_right_degree + 1);
  }
  return c;
}

double headline_bound_log10(int r, double n, double k) {
  return 10.0 * r * std::log10(1000.0 * r) + std::log10(n) + 4.0 * std::log10(n / k);
}

BicliqueCertificate geometric_bound(const BipartiteGraph& h, int k, double p, int r) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("geometric_bound: need 0 < p < 1");
  if (r < 1) throw std::invalid_argument("geometric_bound: need r >= 1");
  if (k < 1) throw std::invalid_argument("geometric_bound: need k >= 1");
  BicliqueCertificate c;
  c.kind = CertificateKind::Geometric;
  c.k = k;
  c.p = p;
  c.r = r;
  const int L = h.left_size();
  const double n = static_cast<double>(L) + h.right_size();
  c.max_right_degree = h.max_right_degree();

  double delta_2r = 0.0;
  if (p == 0.5) {
    const BalancednessReport fold = balancedness(h, std::min(2 * r, L));
    delta_2r = fold.delta_r;
    c.balancedness = fold;
  } else {
    const BalancednessReport rep = balancedness(h.with_density(p), std::min(r, L));
    if (!rep.delta_2r_p) throw BudgetExceeded("geometric_bound: pair enumeration exceeds budget");
    delta_2r = *rep.delta_2r_p;
    c.balancedness = rep;
  }
  const double delta_l = std::max(0.0, c.max_right_degree - k * p);
  c.delta_l = delta_l;
  c.delta_2r = delta_2r;

  const double scale_r1 = std::pow(1.0 - p, r + 1) / std::pow(p, r);
  const double scale_r = std::pow((1.0 - p) / p, r);
  c.precondition_lhs = k * scale_r1 - delta_l * scale_r - delta_2r;
  c.precondition_rhs = 0.5 * k * scale_r1;
  c.headline_log10 = headline_bound_log10(r, n, k);

  const double M = std::max(p / (1.0 - p), (1.0 - p) / p);
  const double inner = 2.0 * n * std::pow(M, r) * std::pow(p, r) / (k * std::pow(1.0 - p, r + 1));
  c.log_set_bound = std::log(n) + 4.0 * std::log(inner);

  if (*c.precondition_lhs >= *c.precondition_rhs) {
    c.applicable = true;
    // Largest l with C(l, r)^4 <= bound; ties resolved toward the larger l.
    int largest = 0;
    for (int l = 0; l <= L; ++l)
      if (4.0 * log_binomial(l, r) <= *c.log_set_bound + 1e-9) largest = l;
    c.certified_bound = largest + 1;
  }
  return c;
}

Json to_json(const BalancednessReport& rep) {
  return Json{{"r", rep.r},
              {"delta_r", rep.delta_r},
              {"delta_2r_p", optional_json(rep.delta_2r_p)},
              {"max_right_degree", rep.max_right_degree}};
}

Json to_json(const BicliqueCertificate& c) {
  Json j{{"kind", to_string(c.kind)}, {"k", c.k}, {"p", c.p}, {"applicable", c.applicable},
         {"max_right_degree", c.max_right_degree}};
  j["certified_bound"] = c.certified_bound ? Json(*c.certified_bound) : Json(nullptr);
  if (c.kind == CertificateKind::Geometric) j["r"] = c.r;
  Json w = Json::object();
  if (c.balancedness) w["balancedness"] = to_json(*c.balancedness);
  if (c.spectral_norm) w["spectral_norm"] = *c.spectral_norm;
  if (c.product_bound) w["product_bound"] = *c.product_bound;
  if (c.delta_l) w["delta_l"] = *c.delta_l;
  if (c.delta_2r) w["delta_2r"] = *c.delta_2r;
  if (c.precondition_lhs) w["precondition_lhs"] = *c.precondition_lhs;
  if (c.precondition_rhs) w["precondition_rhs"] = *c.precondition_rhs;
  if (c.log_set_bound) w["log_set_bound"] = *c.log_set_bound;
  if (c.headline_log10) w["headline_log10"] = *c.headline_log10;
  if (c.sdp_diagnostics) w["sdp"] = *c.sdp_diagnostics;
  j["witness"] = w;
  return j;
}

bool verify(const BicliqueCertificate& cert, const BipartiteGraph& h) {
  BicliqueCertificate again;
  switch (cert.kind) {
    case CertificateKind::Spectral: again = spectral_bound(h, cert.k, cert.p); break;
    case CertificateKind::Geometric: again = geometric_bound(h, cert.k, cert.p, cert.r); break;
    case CertificateKind::Degree2SDP: again = degree2_sdp_bound(h, cert.k); break;
  }
  return to_json(again) == to_json(cert);
}

SDPProblem biclique_sdp(const BipartiteGraph& h, int k, int l) {
  const int L = h.left_size(), R = h.right_size();
  SDPProblem prob;
  prob.dim = L + R;
  EqualityConstraint trace{{}, static_cast<double>(k)};
  EqualityConstraint left{{}, static_cast<double>(l)};
  EqualityConstraint right{{}, static_cast<double>(k - l)};
  EqualityConstraint cross{{}, static_cast<double>(l) * (k - l)};
  for (int i = 0; i < prob.dim; ++i) {
    trace.terms.push_back({i, i, 1.0});
    (i < L ? left : right).terms.push_back({i, i, 1.0});
  }
  for (int u = 0; u < L; ++u)
    for (int v = 0; v < R; ++v) {
      if (h.has_edge(u, v)) cross.terms.push_back({u, L + v, 1.0});
      else prob.zero_pattern.push_back({u, L + v});
    }
  prob.equalities = {trace, left, right, cross};
  prob.bounds.reserve(static_cast<std::size_t>(prob.dim) * (prob.dim + 1) / 2);
  for (int j = 0; j < prob.dim; ++j)
    for (int i = 0; i <= j; ++i) prob.bounds.push_back({i, j, 0.0, 1.0});
  return prob;
}

SdpFeasibilityResult sdp_biclique_feasibility(const BipartiteGraph& h, int k, int l,
                                              const SDPOptions& options,
                                              const Eigen::MatrixXd* warm_start) {
  if (k < 1 || l < 0 || l > k) throw std::invalid_argument("sdp_biclique_feasibility: need 0 <= l <= k");
  const int L = h.left_size(), R = h.right_size();
  const int dim = L + R;
  SdpFeasibilityResult out;

  auto infeasible = [&](std::string reason) {
    out.status = Feasibility::Infeasible;
    out.route = "pre-solver";
    out.reason = std::move(reason);
    return out;
  };
  if (l > L) return infeasible("left diagonal sum exceeds the number of left vertices");
  if (k - l > R) return infeasible("right diagonal sum exceeds the number of right vertices");
  if (l >= 1 && k - l >= 1 && static_cast<double>(l) * (k - l) > static_cast<double>(h.num_edges()))
    return infeasible("cross sum exceeds the number of edges");

  if (l == 0 || l == k) {
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(dim, dim);
    if (l == 0)
      for (int v = 0; v < R; ++v) X(L + v, L + v) = static_cast<double>(k) / R;
    else
      for (int u = 0; u < L; ++u) X(u, u) = static_cast<double>(k) / L;
    out.status = Feasibility::Feasible;
    out.route = "closed-form";
    out.X = std::move(X);
    return out;
  }

  // Highest-degree left vertices and their common neighbourhood.
  std::vector<int> order(L);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return h.left_neighbors(a).count() > h.left_neighbors(b).count();
  });
  Bitset common(R, true);
  for (int i = 0; i < l; ++i) common &= h.left_neighbors(order[i]);
  if (static_cast<int>(common.count()) >= k - l) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < l; ++i) x[order[i]] = 1.0;
    const auto right = common.indices();
    for (int i = 0; i < k - l; ++i) x[L + right[i]] = 1.0;
    out.status = Feasibility::Feasible;
    out.route = "integral-witness";
    out.X = Eigen::MatrixXd(x * x.transpose());
    return out;
  }

  const SDPProblem prob = biclique_sdp(h, k, l);
  SDPSolution sol = warm_start ? solve(prob, options, *warm_start) : solve(prob, options);
  out.route = "admm";
  if (sol.status == SDPStatus::Converged) {
    out.status = Feasibility::Feasible;
    out.X = sol.X;
    out.reason = "solver converged";
  } else if (sol.status == SDPStatus::InfeasibleCertified) {
    out.status = Feasibility::Infeasible;
    out.reason = "dual ray separates with margin";
  } else {
    out.status = Feasibility::Unknown;
    out.reason = "solver did not converge";
  }
  out.solver = std::move(sol);
  return out;
}

BicliqueCertificate degree2_sdp_bound(const BipartiteGraph& h, int k, const SDPOptions& options) {
  if (k < 2) throw std::invalid_argument("degree2_sdp_bound: need k >= 2");
  BicliqueCertificate c;
  c.kind = CertificateKind::Degree2SDP;
  c.k = k;
  c.p = h.density();
  c.max_right_degree = h.max_right_degree();
  Json per_l = Json::array();
  int refuted_from = k;  // every l in [refuted_from, k - 1] is infeasible
  for (int l = k - 1; l >= 1; --l) {
    const auto res = sdp_biclique_feasibility(h, k, l, options);
    Json entry{{"l", l}, {"status", to_string(res.status)}, {"route", res.route}};
    if (res.solver) {
      entry["iterations"] = res.solver->iterations;
      entry["primal_residual"] = res.solver->primal_residual;
      entry["infeasibility_gap"] = res.solver->infeasibility_gap;
    }
    per_l.push_back(entry);
    if (res.status != Feasibility::Infeasible) break;
    refuted_from = l;
  }
  c.sdp_diagnostics = Json{{"levels", per_l}};
  if (refuted_from < k) {
    c.applicable = true;
    c.certified_bound = refuted_from;
  }
  return c;
}

LbConstructionReport sdp_lb_construction(const BipartiteGraph& h, int k, int l) {
  if (h.left_size() != k) throw std::invalid_argument("sdp_lb_construction: need left_size == k");
  if (l < 0 || l > k) throw std::invalid_argument("sdp_lb_construction: need 0 <= l <= k");
  if (h.num_edges() == 0) throw std::invalid_argument("sdp_lb_construction: graph has no edges");
  const int n = h.right_size();
  const int dim = k + n;
  LbConstructionReport rep;
  Eigen::MatrixXd& X = rep.X;
  X.setZero(dim, dim);

  const double lk = static_cast<double>(l) / k;
  for (int u = 0; u < k; ++u)
    for (int w = 0; w < k; ++w) X(u, w) = u == w ? lk : lk * lk;

  rep.c1 = static_cast<double>(k - l) * n / static_cast<double>(h.num_edges());
  const double cross = rep.c1 * l / n;
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < n; ++v)
      if (h.has_edge(u, v)) X(u, k + v) = X(k + v, u) = cross;

  Eigen::MatrixXd signs(k, n);
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < n; ++v) signs(u, v) = h.sign(u, v);
  Eigen::MatrixXd bot = signs.transpose() * signs;
  bot.array() += 1.0;
  bot *= static_cast<double>(k - l) / (static_cast<double>(n) * (k + 1));
  X.bottomRightCorner(n, n) = bot;

  double tr_left = 0.0, tr_right = 0.0, cross_sum = 0.0, nonedge = 0.0;
  for (int u = 0; u < k; ++u) tr_left += X(u, u);
  for (int v = 0; v < n; ++v) tr_right += X(k + v, k + v);
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < n; ++v) {
      if (h.has_edge(u, v)) cross_sum += X(u, k + v);
      else nonedge = std::max(nonedge, std::abs(X(u, k + v)));
    }
  rep.linear_residual = std::max({std::abs(tr_left + tr_right - k), std::abs(tr_left - l),
                                  std::abs(tr_right - (k - l)),
                                  std::abs(cross_sum - static_cast<double>(l) * (k - l)), nonedge});
  rep.min_entry = X.minCoeff();
  rep.max_entry = X.maxCoeff();
  rep.entry_violation = std::max({0.0, -rep.min_entry, rep.max_entry - 1.0});
  rep.min_eigenvalue = min_eigenvalue(X);
  return rep;
}

}  // namespace semiclique
