#include "semiclique/cli.h"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <cblas.h>

#include "CLI11.hpp"
#include "semiclique/certify.h"
#include "semiclique/generators.h"
#include "semiclique/listdecode.h"
#include "semiclique/lowdeg.h"
#include "semiclique/oracle.h"
#include "semiclique/rng.h"
#include "semiclique/sos.h"

namespace semiclique {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ExperimentConfig, subcommand, seed, input, output, n, k, p,
                                                m, bipartite, deletion, addition, fraction, copies, size,
                                                rewrite_q, method, r, l, run_solver, degree, t, repetitions,
                                                delta, mode, c, lowdeg_degree, csv, tol_p, tol_d, max_iter)

namespace {

using Clock = std::chrono::steady_clock;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

AdversaryPlan plan_from_config(const ExperimentConfig& cfg) {
  Json j;
  Json del{{"kind", cfg.deletion}};
  if (cfg.deletion == "delete-random-cut-fraction") del["fraction"] = cfg.fraction;
  Json add{{"kind", cfg.addition}};
  if (cfg.addition == "disjoint-planted-copies") add["count"] = cfg.copies;
  if (cfg.addition == "full-clique-on-complement-subset") add["size"] = cfg.size;
  if (cfg.addition == "erdos-renyi-rewrite") add["q"] = cfg.rewrite_q;
  j["deletion"] = del;
  j["addition"] = add;
  try {
    return plan_from_json(j);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

SDPOptions solver_options(const ExperimentConfig& cfg) {
  SDPOptions o;
  o.tol_p = cfg.tol_p;
  o.tol_d = cfg.tol_d;
  o.max_iter = cfg.max_iter;
  return o;
}

void require_input(const ExperimentConfig& cfg) {
  if (cfg.input.empty()) throw UsageError(cfg.subcommand + ": --input is required");
}

struct Outcome {
  Json result;
  int code = kExitOk;
};

Outcome do_gen(const ExperimentConfig& cfg) {
  if (cfg.bipartite) {
    const int m = cfg.m > 0 ? cfg.m : cfg.n;
    return {bipartite_to_json(sample_er_bipartite(cfg.k, m, cfg.p, cfg.seed))};
  }
  return {instance_to_json(sample_fk(cfg.n, cfg.k, cfg.p, plan_from_config(cfg), cfg.seed))};
}

Outcome do_certify(const ExperimentConfig& cfg) {
  require_input(cfg);
  const BipartiteGraph h = load_bipartite(cfg.input, cfg.p);
  BicliqueCertificate cert;
  if (cfg.method == "spectral") cert = spectral_bound(h, cfg.k, cfg.p);
  else if (cfg.method == "geometric") cert = geometric_bound(h, cfg.k, cfg.p, cfg.r);
  else if (cfg.method == "sdp") cert = degree2_sdp_bound(h, cfg.k, solver_options(cfg));
  else throw UsageError("certify: --method must be spectral, geometric or sdp");
  Json j = to_json(cert);
  j["verified"] = verify(cert, h);
  return {j, cert.applicable ? kExitOk : kExitNegative};
}

Outcome do_sdp_lb(const ExperimentConfig& cfg) {
  const BipartiteGraph h = cfg.input.empty() ? sample_er_bipartite(cfg.k, cfg.m > 0 ? cfg.m : cfg.n, 0.5, cfg.seed)
                                             : load_bipartite(cfg.input);
  const LbConstructionReport rep = sdp_lb_construction(h, h.left_size(), cfg.l);
  Json j{{"k", h.left_size()},
         {"n", h.right_size()},
         {"l", cfg.l},
         {"c1", rep.c1},
         {"linear_residual", rep.linear_residual},
         {"min_entry", rep.min_entry},
         {"max_entry", rep.max_entry},
         {"entry_violation", rep.entry_violation},
         {"min_eigenvalue", rep.min_eigenvalue}};
  int code = kExitOk;
  if (cfg.run_solver) {
    const auto res = sdp_biclique_feasibility(h, h.left_size(), cfg.l, solver_options(cfg), &rep.X);
    Json s{{"status", to_string(res.status)}, {"route", res.route}, {"reason", res.reason}};
    if (res.solver) {
      s["iterations"] = res.solver->iterations;
      s["primal_residual"] = res.solver->primal_residual;
      s["dual_residual"] = res.solver->dual_residual;
      s["constraint_violation"] = res.solver->constraint_violation;
    }
    j["solver"] = s;
    if (res.status == Feasibility::Infeasible) code = kExitNegative;
  }
  return {j, code};
}

struct LoadedInstance {
  Graph graph;
  int k = 0;
  double p = 0.5;
  Json file;
};

LoadedInstance load_instance(const ExperimentConfig& cfg) {
  require_input(cfg);
  LoadedInstance li;
  li.k = cfg.k;
  li.p = cfg.p;
  if (cfg.input.size() >= 5 && cfg.input.substr(cfg.input.size() - 5) == ".json") {
    li.file = read_json_file(cfg.input);
    li.graph = graph_from_instance_json(li.file);
  } else {
    li.graph = load_graph(cfg.input);
  }
  return li;
}

Outcome do_solve(const ExperimentConfig& cfg) {
  const LoadedInstance li = load_instance(cfg);
  SosOptions o;
  o.sdp = solver_options(cfg);
  try {
    return {to_json(minimize_mean_norm(li.graph, li.k, cfg.degree, o))};
  } catch (const RelaxationInfeasible& e) {
    return {Json{{"status", "infeasible"}, {"reason", e.what()}}, kExitNegative};
  } catch (const SolverDidNotConverge& e) {
    Json j = to_json(e.partial);
    j["status"] = "not-converged";
    return {j, kExitError};
  }
}

Outcome do_listdecode(const ExperimentConfig& cfg) {
  const LoadedInstance li = load_instance(cfg);
  SosOptions o;
  o.sdp = solver_options(cfg);
  PseudoDistribution dist;
  try {
    dist = minimize_mean_norm(li.graph, li.k, cfg.degree, o);
  } catch (const RelaxationInfeasible& e) {
    return {Json{{"status", "infeasible"}, {"reason", e.what()}}, kExitNegative};
  } catch (const SolverDidNotConverge& e) {
    // Decoding proceeds on the last iterate; its eta is reported below.
    dist = e.partial;
  }
  DecodeParams params;
  params.t = cfg.t;
  params.repetitions = cfg.repetitions;
  params.delta = cfg.delta;
  DecodeReport report = cleanup(li.graph, li.k, li.p, decode(li.graph, li.k, params, dist, cfg.seed), params);
  // Ground truth is consulted only after decoding finished.
  if (!li.file.is_null())
    if (const auto planted = planted_from_instance_json(li.file)) attach_metrics(report, *planted);
  Json j = to_json(report);
  j["eta"] = dist.eta();
  j["objective"] = dist.objective;
  j["solver_status"] = to_string(dist.solver_status);
  return {j};
}

Outcome do_oracle(const ExperimentConfig& cfg) {
  if (cfg.mode == "biclique") {
    require_input(cfg);
    const BipartiteGraph h = load_bipartite(cfg.input, cfg.p);
    const auto w = max_biclique_witness(h, cfg.k);
    Json j{{"max_left", max_biclique_left(h, cfg.k)}};
    if (w) j["witness"] = {{"left", w->left}, {"right", w->right}};
    return {j};
  }
  if (cfg.mode != "good" && cfg.mode != "quasi" && cfg.mode != "cliques")
    throw UsageError("oracle: --mode must be good, quasi, cliques or biclique");
  const LoadedInstance li = load_instance(cfg);
  std::vector<VertexSet> list;
  if (cfg.mode == "good") list = exact_good_clique_list(li.graph, li.k, cfg.l);
  else if (cfg.mode == "quasi")
    list = quasi_brute_force(li.graph, li.k, cfg.c > 0 ? cfg.c : default_quasi_constant(li.graph.n()));
  else list = all_cliques(li.graph, li.k);
  return {Json{{"list", list}, {"length", list.size()}}};
}

Outcome do_lowdeg(const ExperimentConfig& cfg) {
  const LowDegReport rep = lr_norm_squared(cfg.k, cfg.n, cfg.l, cfg.p, cfg.lowdeg_degree);
  Json terms = Json::array();
  for (const auto& t : rep.terms)
    terms.push_back({{"L", t.left_count},
                     {"R", t.right_count},
                     {"degrees", t.degrees},
                     {"count", t.count.str()},
                     {"moment", t.moment},
                     {"contribution", t.contribution}});
  Json j{{"k", rep.k}, {"n", rep.n}, {"l", rep.l}, {"p", rep.p}, {"D", rep.degree},
         {"norm_sq_minus_one", rep.norm_sq_minus_one}, {"terms", terms}};
  if (rep.exact_norm_sq_minus_one) j["exact"] = rep.exact_norm_sq_minus_one->str();
  if (!cfg.csv.empty()) {
    std::ofstream csv(cfg.csv);
    if (!csv) throw std::runtime_error("cannot write " + cfg.csv);
    csv << "L,R,degrees,count,moment,contribution\n" << std::setprecision(17);
    for (const auto& t : rep.terms) {
      std::string degs;
      for (std::size_t i = 0; i < t.degrees.size(); ++i) degs += (i ? " " : "") + std::to_string(t.degrees[i]);
      csv << t.left_count << ',' << t.right_count << ',' << degs << ',' << t.count.str() << ',' << t.moment
          << ',' << t.contribution << '\n';
    }
  }
  return {j};
}

Outcome do_bench(const ExperimentConfig& cfg) {
  Json timings = Json::object();
  auto time = [&](const std::string& name, auto&& fn) {
    const auto start = Clock::now();
    fn();
    timings[name] = seconds_since(start);
  };
  const BipartiteGraph h = sample_er_bipartite(12, 200, 0.5, cfg.seed);
  time("spectral_bound_12x200", [&] { spectral_bound(h, 12, 0.5); });
  time("geometric_bound_12x200_r1", [&] { geometric_bound(h, 12, 0.5, 1); });
  time("max_biclique_12x200", [&] { max_biclique_left(h, 12); });
  const FKInstance inst = sample_fk(30, 14, 0.5, {DeleteAllCut{}, FullCliqueOnComplementSubset{14}}, cfg.seed);
  time("min_norm_degree2_n30", [&] {
    SosOptions o;
    o.sdp = solver_options(cfg);
    try {
      minimize_mean_norm(inst.graph, 14, 2, o);
    } catch (const SolverDidNotConverge&) {
    }
  });
  time("lowdeg_4_6_2_D6", [&] { lr_norm_squared(4, 6, 2, 0.5, 6); });
  return {Json{{"timings", timings}}};
}

Json envelope(const ExperimentConfig& cfg, const Json& result, double seconds, int code) {
  return Json{{"tool", "semiclique"},
              {"version", SEMICLIQUE_VERSION},
              {"config", to_json(cfg)},
              {"config_hash", hex64(config_hash(cfg))},
              {"exit_code", code},
              {"timings", {{"wall_seconds", seconds}}},
              {"result", result}};
}

void apply_thread_env() {
  if (const char* v = std::getenv(kThreadsEnvVar)) {
    const int threads = std::atoi(v);
    if (threads > 0) openblas_set_num_threads(threads);
  }
}

void add_solver_flags(CLI::App* sub, ExperimentConfig& cfg) {
  sub->add_option("--tol-p", cfg.tol_p, "primal tolerance");
  sub->add_option("--tol-d", cfg.tol_d, "dual tolerance");
  sub->add_option("--max-iter", cfg.max_iter, "solver iteration cap");
}

}  // namespace

Json to_json(const ExperimentConfig& cfg) {
  Json j;
  nlohmann::to_json(j, cfg);
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig cfg;
  nlohmann::from_json(j, cfg);
  return cfg;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) { return fnv1a64(to_json(cfg).dump()); }

int execute(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  apply_thread_env();
  const auto start = Clock::now();
  Outcome outcome;
  try {
    if (cfg.subcommand == "gen") outcome = do_gen(cfg);
    else if (cfg.subcommand == "certify") outcome = do_certify(cfg);
    else if (cfg.subcommand == "sdp-lb") outcome = do_sdp_lb(cfg);
    else if (cfg.subcommand == "solve") outcome = do_solve(cfg);
    else if (cfg.subcommand == "listdecode") outcome = do_listdecode(cfg);
    else if (cfg.subcommand == "oracle") outcome = do_oracle(cfg);
    else if (cfg.subcommand == "lowdeg") outcome = do_lowdeg(cfg);
    else if (cfg.subcommand == "bench") outcome = do_bench(cfg);
    else throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  // gen writes the bare instance so other subcommands can read it back.
  const Json doc = cfg.subcommand == "gen" ? outcome.result
                                            : envelope(cfg, outcome.result, seconds_since(start), outcome.code);
  if (cfg.output.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    try {
      write_json_file(cfg.output, doc);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitError;
    }
  }
  return outcome.code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  CLI::App app{"Semi-random planted clique toolkit"};
  app.require_subcommand(0, 1);
  std::string replay;
  app.add_option("--config", replay, "replay a config block (or a report containing one)");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--input", cfg.input, "input file");
    sub->add_option("-o,--output", cfg.output, "output file (default stdout)");
  };

  auto* gen = app.add_subcommand("gen", "sample an instance");
  common(gen);
  gen->add_option("--n", cfg.n);
  gen->add_option("--k", cfg.k);
  gen->add_option("--p", cfg.p);
  gen->add_option("--m", cfg.m, "right side size (with --bipartite)");
  gen->add_flag("--bipartite", cfg.bipartite, "sample B(k, m, p)");
  gen->add_option("--plan", cfg.deletion, "deletion strategy");
  gen->add_option("--addition", cfg.addition, "addition strategy");
  gen->add_option("--fraction", cfg.fraction);
  gen->add_option("--copies", cfg.copies);
  gen->add_option("--size", cfg.size);
  gen->add_option("--rewrite-q", cfg.rewrite_q);

  auto* cert = app.add_subcommand("certify", "biclique certificate");
  common(cert);
  cert->add_option("--method", cfg.method, "spectral | geometric | sdp");
  cert->add_option("--r", cfg.r);
  cert->add_option("--k", cfg.k);
  cert->add_option("--p", cfg.p);
  add_solver_flags(cert, cfg);

  auto* lb = app.add_subcommand("sdp-lb", "explicit degree-2 SDP solution");
  common(lb);
  lb->add_option("--k", cfg.k);
  lb->add_option("--n", cfg.n);
  lb->add_option("--l", cfg.l);
  lb->add_flag("--solve", cfg.run_solver, "confirm feasibility with the solver");
  add_solver_flags(lb, cfg);

  auto* sol = app.add_subcommand("solve", "min-norm pseudo-distribution");
  common(sol);
  sol->add_option("--k", cfg.k);
  sol->add_option("--degree", cfg.degree);
  add_solver_flags(sol, cfg);

  auto* ld = app.add_subcommand("listdecode", "rounding by votes plus cleanup");
  common(ld);
  ld->add_option("--k", cfg.k);
  ld->add_option("--p", cfg.p);
  ld->add_option("--t", cfg.t);
  ld->add_option("--N", cfg.repetitions);
  ld->add_option("--delta", cfg.delta);
  ld->add_option("--degree", cfg.degree);
  add_solver_flags(ld, cfg);

  auto* orc = app.add_subcommand("oracle", "exhaustive baselines");
  common(orc);
  orc->add_option("--mode", cfg.mode, "good | quasi | cliques | biclique");
  orc->add_option("--k", cfg.k);
  orc->add_option("--l", cfg.l);
  orc->add_option("--p", cfg.p);
  orc->add_option("--c", cfg.c, "seed-size constant for quasi");

  auto* low = app.add_subcommand("lowdeg", "truncated likelihood-ratio norm");
  common(low);
  low->add_option("--k", cfg.k);
  low->add_option("--n", cfg.n);
  low->add_option("--l", cfg.l);
  low->add_option("--p", cfg.p);
  low->add_option("--D", cfg.lowdeg_degree);
  low->add_option("--csv", cfg.csv, "per-shape CSV");

  auto* bench = app.add_subcommand("bench", "module timings");
  common(bench);
  add_solver_flags(bench, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  if (!replay.empty()) {
    try {
      const Json j = read_json_file(replay);
      return execute(config_from_json(j.contains("config") ? j.at("config") : j), out, err);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitError;
    }
  }
  if (app.get_subcommands().empty()) {
    err << app.help();
    return kExitUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return execute(cfg, out, err);
}

}  // namespace semiclique
