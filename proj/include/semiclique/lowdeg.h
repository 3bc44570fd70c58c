#ifndef SEMICLIQUE_LOWDEG_H_
#define SEMICLIQUE_LOWDEG_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace semiclique {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact rational for a double: the simplest fraction with denominator at most
// 10^6 that rounds to the same double, else the exact binary value.
Rational rational_from_double(double x);

// E_planted[chi_alpha] for an edge set alpha touching `left_count` left
// vertices, whose right vertices have the given degrees, under the planted
// biclique model with parameters (k, n, l, p). Uses the p-biased character
// (which is the +-1 character at p = 1/2). Exactly zero if any degree is 1.
// Throws std::invalid_argument for inadmissible parameters.
double chi_moment(int left_count, std::span<const int> degrees, int k, int n, int l, double p);
Rational chi_moment_squared_exact(int left_count, std::span<const int> degrees, int k, int n,
                                  int l, const Rational& p);

// Labeled bipartite graphs on left_count x degrees.size() vertices with the
// given right degree sequence and every left degree >= 1 (inclusion-exclusion
// over uncovered left vertices).
BigInt count_bipartite_shapes(int left_count, std::span<const int> degrees);

struct ShapeTerm {
  int left_count = 0;
  int right_count = 0;
  std::vector<int> degrees;  // sorted descending
  // Edge subsets alpha of the k x n graph with this shape: vertex placements
  // times distinct degree assignments times labeled shape count.
  BigInt count;
  double moment = 0.0;
  double contribution = 0.0;
  std::optional<Rational> exact_contribution;
};

struct LowDegReport {
  int k = 0;
  int n = 0;
  int l = 0;
  double p = 0.5;
  int degree = 0;
  std::vector<ShapeTerm> terms;
  double norm_sq_minus_one = 0.0;
  std::optional<Rational> exact_norm_sq_minus_one;
};

inline constexpr int kMaxLowDegDegree = 12;

// ||LR^{<=D} - 1||^2 between the planted biclique model and B(k, n, p),
// as a sum over edge-set shapes with 0 < |alpha| <= D. Exact rational
// arithmetic when k, n <= 10^4 and D <= 8.
LowDegReport lr_norm_squared(int k, int n, int l, double p, int degree);

struct EdgePlacement {
  int left = 0;
  int right = 0;
};

struct MonteCarloEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

// Sample mean of chi_alpha over draws of the planted model.
MonteCarloEstimate monte_carlo_moment(std::span<const EdgePlacement> alpha, int k, int n, int l,
                                      double p, std::int64_t samples, std::uint64_t seed);

// Left count and sorted right-degree sequence of an edge placement.
std::pair<int, std::vector<int>> shape_of(std::span<const EdgePlacement> alpha);

std::string to_decimal_string(const Rational& r, int digits = 17);

}  // namespace semiclique

#endif  // SEMICLIQUE_LOWDEG_H_
