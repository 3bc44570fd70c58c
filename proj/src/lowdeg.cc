#include "semiclique/lowdeg.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "semiclique/rng.h"

namespace semiclique {
namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

void check_admissible(int k, int n, int l, double p) {
  if (k < 1 || n < 1) throw std::invalid_argument("lowdeg: need k, n >= 1");
  if (l < 0 || l > k) throw std::invalid_argument("lowdeg: need 0 <= l <= k");
  if (k - l >= n) throw std::invalid_argument("lowdeg: need k - l < n");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("lowdeg: need 0 < p < 1");
  const double reduced = (n * p - (k - l)) / (n - static_cast<double>(k - l));
  if (l > 0 && reduced < 0.0)
    throw std::invalid_argument("lowdeg: reduced edge probability is negative");
}

void check_shape(int left_count, std::span<const int> degrees) {
  if (left_count < 1) throw std::invalid_argument("lowdeg: shape needs >= 1 left vertex");
  for (int d : degrees)
    if (d < 1 || d > left_count) throw std::invalid_argument("lowdeg: degree outside [1, L]");
}

BigInt binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt acc = 1;
  for (std::int64_t i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
  return acc;
}

Rational power(const Rational& base, int e) {
  Rational acc = 1;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

BigInt factorial(int n) {
  BigInt acc = 1;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

// Number of distinct orderings of a degree multiset.
BigInt arrangements(const std::vector<int>& degrees) {
  std::map<int, int> mult;
  for (int d : degrees) ++mult[d];
  BigInt acc = factorial(static_cast<int>(degrees.size()));
  for (auto [d, m] : mult) acc /= factorial(m);
  return acc;
}

// Non-increasing sequences with entries in [1, max_value] summing to <= budget.
void enumerate_degree_sequences(int length, int max_value, int budget, std::vector<int>& prefix,
                                const std::function<void(const std::vector<int>&)>& emit) {
  if (static_cast<int>(prefix.size()) == length) {
    emit(prefix);
    return;
  }
  const int remaining = length - static_cast<int>(prefix.size());
  const int cap = prefix.empty() ? max_value : std::min(max_value, prefix.back());
  for (int d = cap; d >= 1; --d) {
    if (d + (remaining - 1) > budget) continue;
    prefix.push_back(d);
    enumerate_degree_sequences(length, max_value, budget - d, prefix, emit);
    prefix.pop_back();
  }
}

}  // namespace

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
  // Continued fraction convergents, accepted once they round back to x.
  double rem = x;
  BigInt h_prev = 1, h = static_cast<std::int64_t>(std::floor(rem));
  BigInt k_prev = 0, k = 1;
  for (int iter = 0; iter < 64 && k <= 1000000; ++iter) {
    const Rational candidate(h, k);
    if (static_cast<double>(candidate) == x) return candidate;
    const double frac = rem - std::floor(rem);
    if (frac == 0.0) break;
    rem = 1.0 / frac;
    const auto a = static_cast<std::int64_t>(std::floor(rem));
    BigInt h_next = a * h + h_prev, k_next = a * k + k_prev;
    h_prev = h; h = h_next;
    k_prev = k; k = k_next;
  }
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  Rational r(scaled);
  exp -= 53;
  const Rational two(2);
  if (exp > 0) r *= power(two, exp);
  else r /= power(two, -exp);
  return r;
}

double chi_moment(int left_count, std::span<const int> degrees, int k, int n, int l, double p) {
  check_admissible(k, n, l, p);
  check_shape(left_count, degrees);
  const double a = std::sqrt((1.0 - p) / p);
  const double q = static_cast<double>(k - l) / n;
  const double off = -(static_cast<double>(k - l) / (n - static_cast<double>(k - l))) * a;
  double value = std::pow(static_cast<double>(l) / k, left_count);
  for (int d : degrees) {
    if (d == 1) return 0.0;  // the two branches cancel exactly
    value *= q * std::pow(a, d) + (1.0 - q) * std::pow(off, d);
  }
  return value;
}

Rational chi_moment_squared_exact(int left_count, std::span<const int> degrees, int k, int n,
                                  int l, const Rational& p) {
  check_admissible(k, n, l, static_cast<double>(p));
  check_shape(left_count, degrees);
  for (int d : degrees)
    if (d == 1) return 0;
  // moment = (l/k)^L * a^{sum d} * prod_i [q + (1-q) * (-q/(1-q))^{d_i}],
  // so its square only involves a^2 = (1-p)/p.
  const Rational a2 = (1 - p) / p;
  const Rational q(k - l, n);
  const Rational ratio = -q / (1 - q);
  Rational root = power(Rational(l, k), left_count);
  int total = 0;
  for (int d : degrees) {
    root *= q + (1 - q) * power(ratio, d);
    total += d;
  }
  return root * root * power(a2, total);
}

BigInt count_bipartite_shapes(int left_count, std::span<const int> degrees) {
  if (left_count < 1 || degrees.empty()) throw std::invalid_argument("count_bipartite_shapes: need L, R >= 1");
  BigInt total = 0;
  for (int j = 0; j <= left_count; ++j) {
    BigInt term = binomial(left_count, j);
    for (int d : degrees) term *= binomial(left_count - j, d);
    if (j % 2) total -= term;
    else total += term;
  }
  return total;
}

LowDegReport lr_norm_squared(int k, int n, int l, double p, int degree) {
  check_admissible(k, n, l, p);
  if (degree < 0) throw std::invalid_argument("lr_norm_squared: negative degree");
  if (degree > kMaxLowDegDegree)
    throw std::invalid_argument("lr_norm_squared: degree exceeds enumeration budget");
  LowDegReport report;
  report.k = k;
  report.n = n;
  report.l = l;
  report.p = p;
  report.degree = degree;
  const bool exact = k <= 10000 && n <= 10000 && degree <= 8;
  const Rational p_exact = rational_from_double(p);
  Rational exact_sum = 0;
  long double float_sum = 0.0L;

  for (int left = 1; left <= std::min(degree, k); ++left) {
    for (int right = 1; right <= std::min(degree, n); ++right) {
      std::vector<int> prefix;
      enumerate_degree_sequences(right, left, degree, prefix, [&](const std::vector<int>& degs) {
        int total = 0;
        for (int d : degs) total += d;
        if (total < left) return;  // some left vertex would be uncovered
        const BigInt shapes = count_bipartite_shapes(left, degs);
        if (shapes == 0) return;
        ShapeTerm term;
        term.left_count = left;
        term.right_count = right;
        term.degrees = degs;
        term.count = binomial(k, left) * binomial(n, right) * arrangements(degs) * shapes;
        term.moment = chi_moment(left, degs, k, n, l, p);
        if (exact) {
          Rational c = Rational(term.count) * chi_moment_squared_exact(left, degs, k, n, l, p_exact);
          term.contribution = static_cast<double>(c);
          exact_sum += c;
          term.exact_contribution = std::move(c);
        } else {
          const long double c = static_cast<long double>(term.count) * term.moment * term.moment;
          term.contribution = static_cast<double>(c);
          float_sum += c;
        }
        report.terms.push_back(std::move(term));
      });
    }
  }
  if (exact) {
    report.norm_sq_minus_one = static_cast<double>(exact_sum);
    report.exact_norm_sq_minus_one = exact_sum;
  } else {
    report.norm_sq_minus_one = static_cast<double>(float_sum);
  }
  return report;
}

std::pair<int, std::vector<int>> shape_of(std::span<const EdgePlacement> alpha) {
  std::set<int> lefts;
  std::map<int, int> right_deg;
  std::set<std::pair<int, int>> seen;
  for (auto e : alpha) {
    if (!seen.insert({e.left, e.right}).second)
      throw std::invalid_argument("shape_of: repeated edge");
    lefts.insert(e.left);
    ++right_deg[e.right];
  }
  std::vector<int> degs;
  for (auto [r, d] : right_deg) degs.push_back(d);
  std::sort(degs.rbegin(), degs.rend());
  return {static_cast<int>(lefts.size()), degs};
}

MonteCarloEstimate monte_carlo_moment(std::span<const EdgePlacement> alpha, int k, int n, int l,
                                      double p, std::int64_t samples, std::uint64_t seed) {
  check_admissible(k, n, l, p);
  if (samples < 1) throw std::invalid_argument("monte_carlo_moment: need samples >= 1");
  shape_of(alpha);  // validates distinct edges
  std::vector<int> lefts, rights;
  for (auto e : alpha) {
    if (e.left < 0 || e.left >= k || e.right < 0 || e.right >= n)
      throw std::invalid_argument("monte_carlo_moment: edge out of range");
    lefts.push_back(e.left);
    rights.push_back(e.right);
  }
  std::sort(lefts.begin(), lefts.end());
  lefts.erase(std::unique(lefts.begin(), lefts.end()), lefts.end());
  std::sort(rights.begin(), rights.end());
  rights.erase(std::unique(rights.begin(), rights.end()), rights.end());

  const double present = std::sqrt((1.0 - p) / p);
  const double absent = -std::sqrt(p / (1.0 - p));
  const double reduced = (n * p - (k - l)) / (n - static_cast<double>(k - l));
  const double left_rate = static_cast<double>(l) / k;
  const double right_rate = static_cast<double>(k - l) / n;

  RandomStream rng = RandomStream(seed).substream("lowdeg/monte-carlo");
  std::map<int, bool> in_s, in_p;
  double mean = 0.0, m2 = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int u : lefts) in_s[u] = rng.bernoulli(left_rate);
    for (int v : rights) in_p[v] = rng.bernoulli(right_rate);
    double chi = 1.0;
    for (auto e : alpha) {
      double prob = p;
      if (in_s[e.left]) prob = in_p[e.right] ? 1.0 : reduced;
      chi *= rng.bernoulli(prob) ? present : absent;
    }
    // Welford update.
    const double delta = chi - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (chi - mean);
  }
  const double var = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(samples))};
}

std::string to_decimal_string(const Rational& r, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << static_cast<double>(r);
  return os.str();
}

}  // namespace semiclique
