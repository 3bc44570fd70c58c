#include "semiclique/listdecode.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "semiclique/oracle.h"

namespace semiclique {

void DecodeParams::validate() const {
  if (t < 1) throw std::invalid_argument("DecodeParams: t must be >= 1");
  if (repetitions < 0) throw std::invalid_argument("DecodeParams: N must be >= 0");
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("DecodeParams: need 0 < delta < 1/2");
  if (max_retries < 1) throw std::invalid_argument("DecodeParams: max_retries must be >= 1");
}

int default_repetitions(int n, int k, int t) {
  return static_cast<int>(std::ceil(4.0 * std::pow(static_cast<double>(n) / k, t) - 1e-9));
}

int default_intersection_cap(int n, double p) {
  return static_cast<int>(std::ceil(3.0 * std::log(static_cast<double>(n)) / std::log(1.0 / p) - 1e-9));
}

double default_cleanup_fraction(double p) { return 1.0 - (1.0 - p) / 6.0; }

std::vector<int> sample_tuple(const PseudoDistribution& d, int t, RandomStream& rng,
                              double divisor_floor, int max_retries, int* resampled) {
  if (t < 1 || t > d.degree()) throw std::invalid_argument("sample_tuple: need 1 <= t <= d");
  std::vector<double> weights(d.n());
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<int> q;
    bool ok = true;
    for (int step = 0; step < t && ok; ++step) {
      if (step > 0 && !(d.expectation(q) > divisor_floor)) {
        ok = false;
        break;
      }
      double total = 0.0;
      std::vector<int> ext = q;
      ext.push_back(0);
      for (int i = 0; i < d.n(); ++i) {
        ext.back() = i;
        weights[i] = std::max(0.0, d.expectation(ext));
        total += weights[i];
      }
      if (!(total > 0.0)) {
        ok = false;
        break;
      }
      double target = rng.uniform() * total;
      int pick = d.n() - 1;
      for (int i = 0; i < d.n(); ++i) {
        if (target < weights[i]) {
          pick = i;
          break;
        }
        target -= weights[i];
      }
      while (weights[pick] == 0.0 && pick > 0) --pick;  // rounding at the tail
      q.push_back(pick);
    }
    if (ok && d.expectation(q) > divisor_floor) return q;
    if (resampled) ++*resampled;
  }
  throw DivisorTooSmall("sample_tuple: no admissible tuple within the retry budget");
}

double tuple_probability(const PseudoDistribution& d, std::span<const int> q) {
  return d.expectation(q) / std::pow(static_cast<double>(d.k()), static_cast<double>(q.size()));
}

DecodeReport decode(const Graph& g, int k, const DecodeParams& params, const PseudoDistribution& d,
                    std::uint64_t seed) {
  params.validate();
  if (d.n() != g.n()) throw std::invalid_argument("decode: pseudo-distribution size mismatch");
  if (params.t + 1 > d.degree()) throw std::invalid_argument("decode: need t + 1 <= d");
  DecodeReport report;
  report.repetitions = params.repetitions > 0 ? params.repetitions : default_repetitions(g.n(), k, params.t);
  const double floor = params.divisor_floor.value_or(default_divisor_floor(g.n(), k, params.t));
  const double threshold = 1.0 - 2.0 * params.delta;
  const RandomStream root = RandomStream(seed).substream("listdecode");
  std::set<VertexSet> seen;
  for (int rep = 0; rep < report.repetitions; ++rep) {
    RandomStream rng = root.substream(static_cast<std::uint64_t>(rep));
    const std::vector<int> q = sample_tuple(d, params.t, rng, floor, params.max_retries, &report.resampled);
    const ConditionalVector c = reweight(d, q, floor);
    VertexSet s;
    for (int i = 0; i < g.n(); ++i)
      if (c.values[i] >= threshold) s.push_back(i);
    if (!seen.insert(s).second) continue;
    report.raw_candidates.push_back({std::move(s), q, d.expectation(q), rep});
  }
  return report;
}

VertexSet degree_repair(const Graph& g, int k, double fraction, const VertexSet& s) {
  const Bitset mask = g.make_set(s);
  const double tau = fraction * k - 1.0;
  VertexSet out;
  for (int v = 0; v < g.n(); ++v)
    if (g.degree_into(v, mask) >= tau) out.push_back(v);
  return out;
}

DecodeReport cleanup(const Graph& g, int k, double p, DecodeReport raw, const DecodeParams& params) {
  const double fraction = params.cleanup_threshold_fraction.value_or(default_cleanup_fraction(p));
  raw.intersection_cap = params.intersection_cap.value_or(default_intersection_cap(g.n(), p));
  raw.cleanup_log.clear();
  std::vector<VertexSet> kept;
  for (const auto& cand : raw.raw_candidates) {
    CleanupStep step;
    step.input = cand.set;
    step.first_pass = degree_repair(g, k, fraction, cand.set);
    step.second_pass = degree_repair(g, k, fraction, step.first_pass);
    step.is_k_clique = static_cast<int>(step.second_pass.size()) == k && g.is_clique(step.second_pass);
    if (step.is_k_clique) kept.push_back(step.second_pass);
    raw.cleanup_log.push_back(std::move(step));
  }
  raw.final_list = prune_by_intersection(std::move(kept), raw.intersection_cap);
  return raw;
}

void attach_metrics(DecodeReport& report, const VertexSet& planted) {
  DecodeMetrics m;
  for (const auto& c : report.raw_candidates) {
    if (c.set == planted) m.raw_contains_planted = true;
    if (!planted.empty())
      m.max_raw_intersection_fraction =
          std::max(m.max_raw_intersection_fraction,
                   static_cast<double>(intersection_size(c.set, planted)) / static_cast<double>(planted.size()));
  }
  m.final_contains_planted =
      std::find(report.final_list.begin(), report.final_list.end(), planted) != report.final_list.end();
  m.final_length = report.final_list.size();
  report.metrics = m;
}

bool rounding_condition_holds(double omega, int n, int k, int t, double delta) {
  return omega * std::pow(static_cast<double>(n) / (static_cast<double>(k) * k), t) <= delta * k;
}

double pruned_length_bound(int n, int k, int cap) {
  return static_cast<double>(n) / k * (1.0 + 2.0 * n * cap / (static_cast<double>(k) * k));
}

Json to_json(const DecodeReport& report) {
  Json raw = Json::array();
  for (const auto& c : report.raw_candidates)
    raw.push_back({{"set", c.set}, {"q", c.q}, {"weight", c.weight}, {"repetition", c.repetition}});
  Json log = Json::array();
  for (const auto& s : report.cleanup_log)
    log.push_back({{"input", s.input},
                   {"first_pass", s.first_pass},
                   {"second_pass", s.second_pass},
                   {"is_k_clique", s.is_k_clique}});
  Json j{{"repetitions", report.repetitions},
         {"resampled", report.resampled},
         {"intersection_cap", report.intersection_cap},
         {"raw_candidates", raw},
         {"cleanup", log},
         {"final_list", report.final_list}};
  if (report.metrics)
    j["metrics"] = {{"raw_contains_planted", report.metrics->raw_contains_planted},
                    {"final_contains_planted", report.metrics->final_contains_planted},
                    {"max_raw_intersection_fraction", report.metrics->max_raw_intersection_fraction},
                    {"final_length", report.metrics->final_length}};
  return j;
}

}  // namespace semiclique
