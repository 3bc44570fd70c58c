#include "semiclique/sos.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "semiclique/oracle.h"

namespace semiclique {
namespace {

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet with_vertex(const VertexSet& s, int v) {
  VertexSet out = s;
  out.insert(std::upper_bound(out.begin(), out.end(), v), v);
  return out;
}

std::string set_key(const VertexSet& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
  return os.str();
}

VertexSet parse_key(const std::string& key) {
  std::istringstream is(key);
  VertexSet s;
  int v;
  while (is >> v) s.push_back(v);
  return canonical_set(std::move(s));
}

// Vertices outside s adjacent to all of s.
std::vector<int> extensions(const Graph& g, const VertexSet& s) {
  std::vector<int> out;
  for (int v = 0; v < g.n(); ++v) {
    if (std::binary_search(s.begin(), s.end(), v)) continue;
    bool ok = true;
    for (int u : s)
      if (!g.adjacent(u, v)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(v);
  }
  return out;
}

}  // namespace

CliqueRelaxation build_clique_relaxation(const Graph& g, int k, int d, std::size_t max_dim) {
  if (d != 2 && d != 4 && d != 6) throw std::invalid_argument("build_clique_relaxation: d must be 2, 4 or 6");
  if (k < 1 || k > g.n()) throw std::invalid_argument("build_clique_relaxation: need 1 <= k <= n");
  CliqueRelaxation rel;
  rel.n = g.n();
  rel.k = k;
  rel.degree = d;
  rel.index.push_back({});
  for (int v = 0; v < g.n(); ++v) rel.index.push_back({v});
  for (int s = 2; s <= d / 2; ++s) {
    for_each_clique(g, s, [&](const VertexSet& c) {
      rel.index.push_back(c);
      if (rel.index.size() > max_dim) throw BudgetExceeded("build_clique_relaxation: moment dimension exceeds budget");
    });
  }
  if (rel.index.size() > max_dim) throw BudgetExceeded("build_clique_relaxation: moment dimension exceeds budget");

  const int dim = static_cast<int>(rel.index.size());
  SDPProblem& prob = rel.problem;
  prob.dim = dim;
  for (int b = 0; b < dim; ++b)
    for (int a = 0; a <= b; ++a) {
      prob.bounds.push_back({a, b, 0.0, 1.0});
      VertexSet u = set_union(rel.index[a], rel.index[b]);
      if (!g.is_clique(u)) {
        prob.zero_pattern.push_back({a, b});
        continue;
      }
      auto [it, inserted] = rel.moment_id.try_emplace(u, static_cast<int>(rel.moment_sets.size()));
      if (inserted) {
        rel.moment_sets.push_back(u);
        rel.moment_entries.emplace_back();
      }
      rel.moment_entries[it->second].push_back({a, b});
    }

  prob.equalities.push_back({{{0, 0, 1.0}}, 1.0});
  for (const auto& entries : rel.moment_entries)
    for (std::size_t t = 0; t + 1 < entries.size(); ++t)
      prob.equalities.push_back({{{entries[t].first, entries[t].second, 1.0},
                                  {entries[t + 1].first, entries[t + 1].second, -1.0}},
                                 0.0});

  // sum_{i not in S} E[w_{S+i}] = (k - |S|) E[w_S] for cliques |S| <= d - 1.
  for (std::size_t c = 0; c < rel.moment_sets.size(); ++c) {
    const VertexSet& s = rel.moment_sets[c];
    if (static_cast<int>(s.size()) > d - 1) continue;
    EqualityConstraint eq;
    const auto [a, b] = rel.moment_entries[c].front();
    eq.terms.push_back({a, b, -static_cast<double>(k - static_cast<int>(s.size()))});
    for (int v : extensions(g, s)) {
      const auto& rep = rel.moment_entries[rel.moment_id.at(with_vertex(s, v))].front();
      eq.terms.push_back({rep.first, rep.second, 1.0});
    }
    prob.equalities.push_back(std::move(eq));
  }
  return rel;
}

PseudoDistribution::PseudoDistribution(int n, int k, int degree, std::map<VertexSet, double> moments,
                                       double eta)
    : n_(n), k_(k), degree_(degree), moments_(std::move(moments)), eta_(eta) {}

double PseudoDistribution::expectation(std::span<const int> vertices) const {
  const VertexSet s = canonical_set({vertices.begin(), vertices.end()});
  if (static_cast<int>(s.size()) > degree_)
    throw std::invalid_argument("pseudo-expectation: more distinct indices than the degree");
  const auto it = moments_.find(s);
  return it == moments_.end() ? 0.0 : it->second;
}

Eigen::VectorXd PseudoDistribution::mean() const {
  Eigen::VectorXd m(n_);
  for (int i = 0; i < n_; ++i) {
    const int v[1] = {i};
    m[i] = expectation(v);
  }
  return m;
}

Eigen::MatrixXd PseudoDistribution::moment_matrix() const {
  std::vector<const VertexSet*> idx;
  for (const auto& [s, v] : moments_)
    if (2 * static_cast<int>(s.size()) <= degree_) idx.push_back(&s);
  const auto dim = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd M(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = a; b < dim; ++b) {
      const VertexSet u = set_union(*idx[a], *idx[b]);
      const auto it = moments_.find(u);
      M(a, b) = M(b, a) = it == moments_.end() ? 0.0 : it->second;
    }
  return M;
}

double pseudo_expectation(const PseudoDistribution& d, std::span<const int> vertices) {
  return d.expectation(vertices);
}

double measure_eta(const Graph& g, const PseudoDistribution& d) {
  double eta = 0.0;
  const auto& m = d.moments();
  for (const auto& [s, v] : m) {
    eta = std::max({eta, -v, v - 1.0});
    if (!g.is_clique(s)) eta = std::max(eta, std::abs(v));
  }
  const auto root = m.find(VertexSet{});
  eta = std::max(eta, std::abs((root == m.end() ? 0.0 : root->second) - 1.0));
  for (const auto& [s, v] : m) {
    if (static_cast<int>(s.size()) > d.degree() - 1) continue;
    double sum = 0.0;
    for (int i : extensions(g, s)) {
      const auto it = m.find(with_vertex(s, i));
      if (it != m.end()) sum += it->second;
    }
    eta = std::max(eta, std::abs(sum - (d.k() - static_cast<double>(s.size())) * v));
  }
  eta = std::max(eta, -min_eigenvalue(d.moment_matrix()));
  return eta;
}

PseudoDistribution extract_pseudo_distribution(const Graph& g, const CliqueRelaxation& rel,
                                               const Eigen::MatrixXd& X) {
  std::map<VertexSet, double> moments;
  for (std::size_t c = 0; c < rel.moment_sets.size(); ++c) {
    double sum = 0.0;
    for (auto [a, b] : rel.moment_entries[c]) sum += X(a, b);
    moments[rel.moment_sets[c]] = sum / static_cast<double>(rel.moment_entries[c].size());
  }
  moments[VertexSet{}] = 1.0;
  PseudoDistribution tmp(rel.n, rel.k, rel.degree, moments, 0.0);
  const double eta = measure_eta(g, tmp);
  return PseudoDistribution(rel.n, rel.k, rel.degree, std::move(moments), eta);
}

PseudoDistribution minimize_mean_norm(const Graph& g, int k, int d, const SosOptions& options) {
  CliqueRelaxation rel = build_clique_relaxation(g, k, d, options.max_dim);
  SquaredNormObjective obj;
  for (int i = 0; i < g.n(); ++i) obj.rows.push_back({{0, 1 + i, 1.0}});
  rel.problem.objective = std::move(obj);
  const SDPSolution sol = solve(rel.problem, options.sdp);
  if (sol.status == SDPStatus::InfeasibleCertified)
    throw RelaxationInfeasible("minimize_mean_norm: relaxation is infeasible");
  PseudoDistribution dist = extract_pseudo_distribution(g, rel, sol.X);
  dist.solver_status = sol.status;
  dist.solver_iterations = sol.iterations;
  dist.solver_primal_residual = sol.primal_residual;
  dist.solver_dual_residual = sol.dual_residual;
  dist.objective = dist.mean().squaredNorm();
  if (sol.status != SDPStatus::Converged)
    throw SolverDidNotConverge("minimize_mean_norm: solver reached max_iter", std::move(dist));
  return dist;
}

double default_divisor_floor(int n, int k, int t) {
  return 1e-8 * std::pow(static_cast<double>(k) / n, t);
}

ConditionalVector reweight(const PseudoDistribution& d, std::span<const int> q, double divisor_floor) {
  const VertexSet base = canonical_set({q.begin(), q.end()});
  if (static_cast<int>(base.size()) + 1 > d.degree())
    throw std::invalid_argument("reweight: |Q| + 1 exceeds the degree");
  const double denom = d.expectation(base);
  if (!(denom > divisor_floor)) throw DivisorTooSmall("reweight: E[w_Q] below the divisor floor");
  ConditionalVector out;
  out.q.assign(q.begin(), q.end());
  out.values.resize(d.n());
  for (int i = 0; i < d.n(); ++i) {
    const VertexSet s = std::binary_search(base.begin(), base.end(), i) ? base : with_vertex(base, i);
    out.values[i] = d.expectation(s) / denom;
  }
  return out;
}

ConditionalVector reweight(const PseudoDistribution& d, std::span<const int> q) {
  return reweight(d, q, default_divisor_floor(d.n(), d.k(), static_cast<int>(q.size())));
}

Json to_json(const PseudoDistribution& d) {
  Json moments = Json::object();
  for (const auto& [s, v] : d.moments()) moments[set_key(s)] = v;
  return Json{{"n", d.n()},
              {"k", d.k()},
              {"degree", d.degree()},
              {"eta", d.eta()},
              {"objective", d.objective},
              {"solver", {{"status", to_string(d.solver_status)},
                          {"iterations", d.solver_iterations},
                          {"primal_residual", d.solver_primal_residual},
                          {"dual_residual", d.solver_dual_residual}}},
              {"moments", moments}};
}

PseudoDistribution pseudo_distribution_from_json(const Json& j) {
  std::map<VertexSet, double> moments;
  for (const auto& [key, v] : j.at("moments").items()) moments[parse_key(key)] = v.get<double>();
  PseudoDistribution d(j.at("n").get<int>(), j.at("k").get<int>(), j.at("degree").get<int>(),
                       std::move(moments), j.at("eta").get<double>());
  if (j.contains("objective")) d.objective = j["objective"].get<double>();
  return d;
}

}  // namespace semiclique
