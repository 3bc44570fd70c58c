#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "semiclique/lowdeg.h"
#include "semiclique/rng.h"

namespace semiclique {
namespace {

// Exact-planting oracle: enumerate every (S, P), weight by its probability,
// and use per-edge conditional independence to get E[chi_alpha].
double planted_moment_oracle(const std::vector<EdgePlacement>& alpha, int k, int n, int l,
                             double p) {
  const double a = std::sqrt((1 - p) / p);
  const double rs = double(l) / k, rp = double(k - l) / n;
  const double reduced = (n * p - (k - l)) / (n - double(k - l));
  auto edge_mean = [&](double q) { return q * a - (1 - q) / a; };
  double total = 0;
  for (unsigned s = 0; s < (1u << k); ++s)
    for (unsigned pm = 0; pm < (1u << n); ++pm) {
      double weight = 1;
      for (int i = 0; i < k; ++i) weight *= (s >> i & 1) ? rs : 1 - rs;
      for (int j = 0; j < n; ++j) weight *= (pm >> j & 1) ? rp : 1 - rp;
      if (weight == 0) continue;
      double prod = 1;
      for (const auto& e : alpha) {
        const bool in_s = s >> e.left & 1, in_p = pm >> e.right & 1;
        prod *= edge_mean(in_s ? (in_p ? 1.0 : reduced) : p);
      }
      total += weight * prod;
    }
  return total;
}

double oracle_norm(int k, int n, int l, double p, int degree) {
  std::vector<EdgePlacement> edges;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) edges.push_back({i, j});
  double total = 0;
  std::vector<EdgePlacement> alpha;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!alpha.empty()) {
      const double m = planted_moment_oracle(alpha, k, n, l, p);
      total += m * m;
    }
    if (static_cast<int>(alpha.size()) == degree) return;
    for (std::size_t e = from; e < edges.size(); ++e) {
      alpha.push_back(edges[e]);
      rec(e + 1);
      alpha.pop_back();
    }
  };
  rec(0);
  return total;
}

TEST(ChiMoment, DegreeOneVanishes) {
  const std::vector<int> d = {3, 1, 2};
  EXPECT_EQ(chi_moment(3, d, 6, 10, 3, 0.5), 0.0);
  EXPECT_EQ(chi_moment(1, std::vector<int>{1}, 6, 10, 3, 0.3), 0.0);
  EXPECT_EQ(chi_moment_squared_exact(3, d, 6, 10, 3, Rational(1, 2)), 0);
}

TEST(ChiMoment, SmallExample) {
  EXPECT_DOUBLE_EQ(chi_moment(2, std::vector<int>{2}, 4, 6, 2, 0.5), 0.125);
  EXPECT_EQ(chi_moment_squared_exact(2, std::vector<int>{2}, 4, 6, 2, Rational(1, 2)), Rational(1, 64));
  const std::vector<EdgePlacement> alpha = {{0, 0}, {1, 0}};
  EXPECT_NEAR(planted_moment_oracle(alpha, 4, 6, 2, 0.5), 0.125, 1e-15);
}

TEST(ChiMoment, EmptyLeftSideVanishes) {
  EXPECT_EQ(chi_moment(2, std::vector<int>{2, 2}, 5, 9, 0, 0.5), 0.0);
  EXPECT_EQ(lr_norm_squared(5, 9, 0, 0.5, 6).norm_sq_minus_one, 0.0);
}

TEST(ChiMoment, MatchesOracleOnShapes) {
  const std::vector<std::vector<EdgePlacement>> shapes = {
      {{0, 0}, {1, 0}},
      {{0, 0}, {1, 0}, {2, 0}},
      {{0, 0}, {1, 0}, {0, 1}, {1, 1}},
      {{0, 0}, {1, 0}, {2, 0}, {0, 2}, {3, 2}},
  };
  for (double p : {0.5, 0.7}) {
    for (const auto& alpha : shapes) {
      auto [left, degrees] = shape_of(alpha);
      EXPECT_NEAR(chi_moment(left, degrees, 4, 5, 2, p), planted_moment_oracle(alpha, 4, 5, 2, p), 1e-12);
    }
  }
}

TEST(ChiMoment, RejectsInadmissible) {
  EXPECT_THROW(chi_moment(1, std::vector<int>{2}, 4, 6, 2, 0.1), std::invalid_argument);
  EXPECT_THROW(chi_moment(1, std::vector<int>{2}, 4, 2, 1, 0.5), std::invalid_argument);
  EXPECT_THROW(chi_moment(1, std::vector<int>{2}, 4, 6, 5, 0.5), std::invalid_argument);
}

TEST(CountShapes, Examples) {
  EXPECT_EQ(count_bipartite_shapes(2, std::vector<int>{2}), 1);
  EXPECT_EQ(count_bipartite_shapes(1, std::vector<int>{1, 1}), 1);
  EXPECT_EQ(count_bipartite_shapes(2, std::vector<int>{2, 2}), 1);
  EXPECT_EQ(count_bipartite_shapes(3, std::vector<int>{1}), 0);
}

TEST(CountShapes, MatchesExhaustiveEnumeration) {
  for (int L = 1; L <= 3; ++L)
    for (int R = 1; R <= 3; ++R) {
      std::map<std::vector<int>, long> tally;
      const int cells = L * R;
      for (unsigned mask = 0; mask < (1u << cells); ++mask) {
        std::vector<int> deg(R, 0);
        std::vector<bool> covered(L, false);
        for (int c = 0; c < cells; ++c)
          if (mask >> c & 1) {
            ++deg[c % R];
            covered[c / R] = true;
          }
        if (std::find(covered.begin(), covered.end(), false) != covered.end()) continue;
        ++tally[deg];
      }
      for (const auto& [deg, count] : tally) {
        if (std::find(deg.begin(), deg.end(), 0) != deg.end()) continue;
        EXPECT_EQ(count_bipartite_shapes(L, deg), count) << L << "x" << R;
      }
    }
}

TEST(LrNorm, SmallExactValue) {
  LowDegReport rep = lr_norm_squared(4, 6, 2, 0.5, 2);
  ASSERT_TRUE(rep.exact_norm_sq_minus_one);
  EXPECT_EQ(*rep.exact_norm_sq_minus_one, Rational(9, 16));
  EXPECT_DOUBLE_EQ(rep.norm_sq_minus_one, 0.5625);
  int nonzero = 0;
  for (const auto& t : rep.terms)
    if (t.contribution != 0.0) {
      ++nonzero;
      EXPECT_EQ(t.left_count, 2);
      EXPECT_EQ(t.degrees, std::vector<int>{2});
      EXPECT_EQ(t.count, 36);
    }
  EXPECT_EQ(nonzero, 1);
  EXPECT_NEAR(oracle_norm(4, 6, 2, 0.5, 2), 0.5625, 1e-12);
}

TEST(LrNorm, MatchesOracleAtHigherDegree) {
  for (double p : {0.5, 0.7})
    for (int degree = 1; degree <= 4; ++degree)
      EXPECT_NEAR(lr_norm_squared(3, 4, 1, p, degree).norm_sq_minus_one,
                  oracle_norm(3, 4, 1, p, degree), 1e-10)
          << "p=" << p << " D=" << degree;
}

TEST(LrNorm, DegreeOneIsZero) {
  EXPECT_EQ(lr_norm_squared(10, 30, 4, 0.5, 1).norm_sq_minus_one, 0.0);
  EXPECT_EQ(lr_norm_squared(10, 30, 4, 0.3, 1).norm_sq_minus_one, 0.0);
}

TEST(LrNorm, TermsSumAndMonotoneInDegree) {
  double previous = 0;
  for (int degree = 1; degree <= kMaxLowDegDegree; ++degree) {
    LowDegReport rep = lr_norm_squared(20, 80, 3, 0.5, degree);
    double sum = 0;
    for (const auto& t : rep.terms) {
      EXPECT_GE(t.contribution, 0.0);
      EXPECT_GE(t.count, 0);
      int total = 0;
      for (int d : t.degrees) total += d;
      EXPECT_LE(total, degree);
      EXPECT_TRUE(std::is_sorted(t.degrees.rbegin(), t.degrees.rend()));
      sum += t.contribution;
    }
    EXPECT_NEAR(rep.norm_sq_minus_one, sum, 1e-12 * (1 + sum));
    EXPECT_GE(rep.norm_sq_minus_one, previous);
    EXPECT_EQ(rep.exact_norm_sq_minus_one.has_value(), degree <= 8);
    previous = rep.norm_sq_minus_one;
  }
  EXPECT_THROW(lr_norm_squared(20, 80, 3, 0.5, kMaxLowDegDegree + 1), std::invalid_argument);
}

TEST(LrNorm, ExactAndFloatingAgree) {
  LowDegReport rep = lr_norm_squared(30, 200, 4, 0.5, 8);
  ASSERT_TRUE(rep.exact_norm_sq_minus_one);
  EXPECT_NEAR(rep.norm_sq_minus_one, static_cast<double>(*rep.exact_norm_sq_minus_one),
              1e-12 * rep.norm_sq_minus_one);
}

// With k = n^{0.7}, the L = 2 all-degree-2 terms grow with R at fixed n, and
// the R = 1, 2 terms shrink as n grows.
TEST(LrNorm, TrendOnGrid) {
  for (int l : {1, 2}) {
    std::vector<std::vector<double>> by_n;
    for (int n : {100, 400, 1600, 6400}) {
      const int k = static_cast<int>(std::ceil(std::pow(n, 0.7)));
      LowDegReport rep = lr_norm_squared(k, n, l, 0.5, 8);
      std::vector<double> r_terms(5, 0.0);
      for (const auto& t : rep.terms) {
        if (t.left_count != 2) continue;
        if (std::all_of(t.degrees.begin(), t.degrees.end(), [](int d) { return d == 2; }))
          r_terms[t.right_count] = t.contribution;
      }
      for (int r = 1; r < 4; ++r) EXPECT_LT(r_terms[r], r_terms[r + 1]) << "n=" << n << " R=" << r;
      by_n.push_back(r_terms);
    }
    for (std::size_t i = 0; i + 1 < by_n.size(); ++i)
      for (int r : {1, 2}) EXPECT_GT(by_n[i][r], by_n[i + 1][r]);
  }
}

TEST(MonteCarlo, RandomShapes) {
  const int k = 6, n = 10, l = 3;
  RandomStream rng(2024);
  int outside = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<EdgePlacement> alpha;
    const int edges = 2 + static_cast<int>(rng.below(4));
    while (static_cast<int>(alpha.size()) < edges) {
      EdgePlacement e{static_cast<int>(rng.below(3)), static_cast<int>(rng.below(2))};
      bool dup = false;
      for (const auto& f : alpha) dup |= f.left == e.left && f.right == e.right;
      if (!dup) alpha.push_back(e);
    }
    auto [left, degrees] = shape_of(alpha);
    const double exact = chi_moment(left, degrees, k, n, l, 0.5);
    MonteCarloEstimate est = monte_carlo_moment(alpha, k, n, l, 0.5, 100000, trial);
    if (std::abs(est.estimate - exact) > 3 * est.stderr_) ++outside;
  }
  // 3-sigma misses are rare but not impossible over 20 independent checks.
  EXPECT_LE(outside, 1);
}

TEST(MonteCarlo, SingleEdgeIsCentered) {
  const std::vector<EdgePlacement> alpha = {{0, 0}};
  MonteCarloEstimate est = monte_carlo_moment(alpha, 6, 10, 3, 0.5, 100000, 1);
  EXPECT_LE(std::abs(est.estimate), 3 * est.stderr_);
  EXPECT_GT(est.stderr_, 0.0);
}

TEST(MonteCarlo, GeneralDensity) {
  const std::vector<EdgePlacement> alpha = {{0, 0}, {1, 0}, {2, 0}};
  auto [left, degrees] = shape_of(alpha);
  const int k = 6, n = 10, l = 2;
  const double p = 0.9;
  const double exact = chi_moment(left, degrees, k, n, l, p);
  MonteCarloEstimate est = monte_carlo_moment(alpha, k, n, l, p, 200000, 7);
  EXPECT_LE(std::abs(est.estimate - exact), 3 * est.stderr_);
}

TEST(Rational, FromDouble) {
  EXPECT_EQ(rational_from_double(0.5), Rational(1, 2));
  EXPECT_EQ(rational_from_double(0.3), Rational(3, 10));
  EXPECT_EQ(static_cast<double>(rational_from_double(M_PI)), M_PI);
  EXPECT_EQ(to_decimal_string(Rational(9, 16)), "0.5625");
}

}  // namespace
}  // namespace semiclique
