#include "semiclique/sdp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cblas.h>
#include <lapacke.h>

namespace semiclique {
namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kInf = std::numeric_limits<double>::infinity();

// svec layout: upper triangle packed by column, off-diagonal entries scaled
// by sqrt(2) so the Euclidean norm equals the Frobenius norm.
inline std::size_t svec_index(int i, int j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(j) * (j + 1) / 2 + i;
}

inline double svec_scale(int i, int j) { return i == j ? 1.0 : kSqrt2; }

Vec to_svec(const Mat& X) {
  const int n = static_cast<int>(X.rows());
  Vec x(static_cast<Eigen::Index>(n) * (n + 1) / 2);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) x[svec_index(i, j)] = svec_scale(i, j) * 0.5 * (X(i, j) + X(j, i));
  return x;
}

// Fills the full symmetric matrix.
void from_svec(const Vec& x, int n, Mat& X) {
  X.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) {
      const double v = x[svec_index(i, j)] / svec_scale(i, j);
      X(i, j) = v;
      X(j, i) = v;
    }
}

// Eigen-decomposes the upper triangle of `A` in place (eigenvectors on exit).
void symmetric_eigen(Mat& A, Vec& w, bool vectors) {
  const int n = static_cast<int>(A.rows());
  w.resize(n);
  if (n == 0) return;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'U', n, A.data(), n,
                                         w.data());
  if (info != 0) throw std::runtime_error("dsyevd failed with info " + std::to_string(info));
}

// Frobenius projection onto the PSD cone; X holds a full symmetric matrix and
// is overwritten with the result (upper triangle valid, lower mirrored).
void psd_project_inplace(Mat& X, Mat& work, Vec& w) {
  const int n = static_cast<int>(X.rows());
  work = X;
  symmetric_eigen(work, w, true);
  int negative = 0;
  while (negative < n && w[negative] < 0.0) ++negative;
  const int positive = n - negative;
  if (negative == 0) return;
  if (positive == 0) {
    X.setZero();
    return;
  }
  if (positive <= negative) {
    Mat B = work.rightCols(positive);
    for (int c = 0; c < positive; ++c) B.col(c) *= std::sqrt(w[negative + c]);
    cblas_dsyrk(CblasColMajor, CblasUpper, CblasNoTrans, n, positive, 1.0, B.data(), n, 0.0,
                X.data(), n);
  } else {
    // X - V_- L_- V_-^T with L_- < 0, i.e. X plus a PSD rank update.
    Mat B = work.leftCols(negative);
    for (int c = 0; c < negative; ++c) B.col(c) *= std::sqrt(-w[c]);
    cblas_dsyrk(CblasColMajor, CblasUpper, CblasNoTrans, n, negative, 1.0, B.data(), n, 1.0,
                X.data(), n);
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) X(j, i) = X(i, j);
}

// Problem data in svec coordinates with unit-norm equality rows.
struct Compiled {
  int n = 0;
  std::size_t N = 0;
  SpMat A;               // m x N
  Vec b;                 // normalized rhs
  Vec row_norm;          // original row norms
  Vec q;                 // linear objective
  SpMat P;               // Hessian of the quadratic objective (2 L^T L)
  bool has_quadratic = false;
  bool p_diagonal = true;
  Vec p_diag;
  Vec lower, upper;      // svec units; +-inf when unbounded
  std::vector<char> bounded;
  Vec entry_weight;      // 1 on the diagonal, 1/sqrt(2) off it
  double trace_bound = kInf;
  double inconsistent_row = 0.0;  // |rhs| of an all-zero row, if any
};

Eigen::SparseVector<double> row_to_svec(const std::vector<MatrixTerm>& terms, std::size_t N) {
  std::map<std::size_t, double> acc;
  for (const auto& t : terms) acc[svec_index(t.i, t.j)] += t.coef / svec_scale(t.i, t.j);
  Eigen::SparseVector<double> v(static_cast<Eigen::Index>(N));
  for (auto [e, c] : acc)
    if (c != 0.0) v.insert(static_cast<Eigen::Index>(e)) = c;
  return v;
}

Compiled compile(const SDPProblem& problem) {
  problem.validate();
  Compiled c;
  c.n = problem.dim;
  c.N = static_cast<std::size_t>(c.n) * (c.n + 1) / 2;
  const auto N = static_cast<Eigen::Index>(c.N);

  std::vector<Eigen::Triplet<double>> trips;
  std::vector<double> rhs, norms;
  for (const auto& eq : problem.equalities) {
    auto row = row_to_svec(eq.terms, c.N);
    const double norm = row.norm();
    if (norm == 0.0) {
      c.inconsistent_row = std::max(c.inconsistent_row, std::abs(eq.rhs));
      continue;
    }
    const auto r = static_cast<int>(rhs.size());
    for (Eigen::SparseVector<double>::InnerIterator it(row); it; ++it)
      trips.emplace_back(r, static_cast<int>(it.index()), it.value() / norm);
    rhs.push_back(eq.rhs / norm);
    norms.push_back(norm);
  }
  c.A.resize(static_cast<Eigen::Index>(rhs.size()), N);
  c.A.setFromTriplets(trips.begin(), trips.end());
  c.A.makeCompressed();
  c.b = Eigen::Map<Vec>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  c.row_norm = Eigen::Map<Vec>(norms.data(), static_cast<Eigen::Index>(norms.size()));

  c.q = Vec::Zero(N);
  c.p_diag = Vec::Zero(N);
  c.P.resize(N, N);
  if (const auto* lin = std::get_if<LinearObjective>(&problem.objective)) {
    for (const auto& t : lin->terms) c.q[svec_index(t.i, t.j)] += t.coef / svec_scale(t.i, t.j);
  } else if (const auto* sq = std::get_if<SquaredNormObjective>(&problem.objective)) {
    std::vector<Eigen::Triplet<double>> lt;
    for (std::size_t r = 0; r < sq->rows.size(); ++r) {
      auto row = row_to_svec(sq->rows[r], c.N);
      for (Eigen::SparseVector<double>::InnerIterator it(row); it; ++it)
        lt.emplace_back(static_cast<int>(r), static_cast<int>(it.index()), it.value());
    }
    SpMat L(static_cast<Eigen::Index>(sq->rows.size()), N);
    L.setFromTriplets(lt.begin(), lt.end());
    c.P = 2.0 * SpMat(L.transpose() * L);
    c.P.prune(0.0);
    c.has_quadratic = c.P.nonZeros() > 0;
    for (int k = 0; k < c.P.outerSize(); ++k)
      for (SpMat::InnerIterator it(c.P, k); it; ++it) {
        if (it.row() == it.col()) c.p_diag[it.row()] = it.value();
        else c.p_diagonal = false;
      }
  }

  c.lower = Vec::Constant(N, -kInf);
  c.upper = Vec::Constant(N, kInf);
  c.bounded.assign(c.N, 0);
  auto apply = [&](int i, int j, double lo, double hi) {
    const auto e = svec_index(i, j);
    const double s = svec_scale(i, j);
    c.lower[e] = std::max(c.lower[e], lo * s);
    c.upper[e] = std::min(c.upper[e], hi * s);
    c.bounded[e] = 1;
  };
  for (const auto& bd : problem.bounds) apply(bd.i, bd.j, bd.lower, bd.upper);
  for (auto [i, j] : problem.zero_pattern) apply(i, j, 0.0, 0.0);
  for (std::size_t e = 0; e < c.N; ++e)
    if (c.lower[e] > c.upper[e]) throw std::invalid_argument("SDPProblem: empty bound interval");

  c.entry_weight.resize(N);
  for (int j = 0; j < c.n; ++j)
    for (int i = 0; i <= j; ++i) c.entry_weight[svec_index(i, j)] = 1.0 / svec_scale(i, j);

  double tb = 0.0;
  for (int i = 0; i < c.n; ++i) tb += c.upper[svec_index(i, i)];
  c.trace_bound = tb;
  return c;
}

// Solves  H x + A^T y = r,  A x = b  for H = P + sigma I.
class AffineSolver {
 public:
  explicit AffineSolver(const Compiled& c) : c_(c) {}

  void factor(double sigma) {
    sigma_ = sigma;
    const auto m = c_.A.rows();
    if (!c_.has_quadratic || c_.p_diagonal) {
      h_inv_ = (c_.p_diag.array() + sigma).inverse().matrix();
      if (m == 0) return;
      m0_ = SpMat(c_.A * h_inv_.asDiagonal() * c_.A.transpose());
      double scale = 0.0;
      for (Eigen::Index k = 0; k < m; ++k) scale = std::max(scale, m0_.coeff(k, k));
      SpMat reg = m0_;
      for (Eigen::Index k = 0; k < m; ++k) reg.coeffRef(k, k) += 1e-10 * scale;
      schur_.compute(reg);
      if (schur_.info() != Eigen::Success) throw std::runtime_error("sdp: Schur factorization failed");
    } else {
      const auto N = static_cast<Eigen::Index>(c_.N);
      std::vector<Eigen::Triplet<double>> t;
      for (int k = 0; k < c_.P.outerSize(); ++k)
        for (SpMat::InnerIterator it(c_.P, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
      for (Eigen::Index e = 0; e < N; ++e) t.emplace_back(e, e, sigma);
      for (int k = 0; k < c_.A.outerSize(); ++k)
        for (SpMat::InnerIterator it(c_.A, k); it; ++it) {
          t.emplace_back(N + it.row(), it.col(), it.value());
          t.emplace_back(it.col(), N + it.row(), it.value());
        }
      for (Eigen::Index k = 0; k < m; ++k) t.emplace_back(N + k, N + k, -1e-10);
      kkt_.resize(N + m, N + m);
      kkt_.setFromTriplets(t.begin(), t.end());
      kkt_solver_.compute(kkt_);
      if (kkt_solver_.info() != Eigen::Success) throw std::runtime_error("sdp: KKT factorization failed");
    }
  }

  void solve(const Vec& r, Vec& x, Vec& y) const {
    const auto m = c_.A.rows();
    if (!c_.has_quadratic || c_.p_diagonal) {
      if (m == 0) {
        x = h_inv_.cwiseProduct(r);
        y.resize(0);
        return;
      }
      const Vec hr = h_inv_.cwiseProduct(r);
      const Vec rhs = c_.A * hr - c_.b;
      y = schur_.solve(rhs);
      for (int it = 0; it < 3; ++it) y += schur_.solve(Vec(rhs - m0_ * y));
      x = hr - h_inv_.cwiseProduct(c_.A.transpose() * y);
    } else {
      const auto N = static_cast<Eigen::Index>(c_.N);
      Vec full(N + m);
      full << r, c_.b;
      Vec sol = kkt_solver_.solve(full);
      for (int it = 0; it < 3; ++it) {
        Vec res(N + m);
        res.head(N) = full.head(N) - (c_.P * sol.head(N) + sigma_ * sol.head(N) +
                                      c_.A.transpose() * sol.tail(m));
        res.tail(m) = full.tail(m) - c_.A * sol.head(N);
        sol += kkt_solver_.solve(res);
      }
      x = sol.head(N);
      y = sol.tail(m);
    }
  }

 private:
  const Compiled& c_;
  double sigma_ = 1.0;
  Vec h_inv_;
  SpMat m0_;
  Eigen::SimplicialLDLT<SpMat> schur_;
  SpMat kkt_;
  Eigen::SimplicialLDLT<SpMat> kkt_solver_;
};

double entry_inf_norm(const Compiled& c, const Vec& d) {
  if (d.size() == 0) return 0.0;
  return d.cwiseProduct(c.entry_weight).cwiseAbs().maxCoeff();
}

// Weak-duality test for the ray y: every feasible x has
//   y^T b = <A^T y, x> >= min_box <g, x> + min(0, lambda_min(W)) * trace_bound
// with A^T y = W + g and g supported on boxed entries. Returns the separation.
double infeasibility_gap(const Compiled& c, const Vec& ray) {
  double best = -kInf;
  if (ray.size() == 0) return best;
  Mat W, work;
  Vec w;
  for (double sign : {1.0, -1.0}) {
    Vec y = sign * ray;
    Vec aty = c.A.transpose() * y;
    const double norm = aty.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) continue;
    y /= norm;
    aty /= norm;
    // Two splits of A^T y: everything boxed goes to g, or only the part
    // outside the PSD cone does.
    from_svec(aty, c.n, W);
    psd_project_inplace(W, work, w);
    const Vec outside = aty - to_svec(W);
    for (const Vec* source : {static_cast<const Vec*>(&aty), &outside}) {
      Vec g = *source;
      for (std::size_t e = 0; e < c.N; ++e)
        if (!c.bounded[e]) g[e] = 0.0;
      from_svec(Vec(aty - g), c.n, W);
      work = W;
      symmetric_eigen(work, w, false);
      const double lam = w.size() ? w[0] : 0.0;
      double lower = 0.0;
      bool finite = true;
      for (std::size_t e = 0; e < c.N && finite; ++e) {
        if (g[e] > 0.0) {
          if (!std::isfinite(c.lower[e])) finite = false;
          else lower += g[e] * c.lower[e];
        } else if (g[e] < 0.0) {
          if (!std::isfinite(c.upper[e])) finite = false;
          else lower += g[e] * c.upper[e];
        }
      }
      if (!finite) continue;
      if (lam < 0.0) {
        if (!std::isfinite(c.trace_bound)) continue;
        lower += lam * c.trace_bound;
      }
      best = std::max(best, lower - y.dot(c.b));
    }
  }
  return best;
}

SDPSolution run(const SDPProblem& problem, const SDPOptions& opt, const Mat* initial) {
  const Compiled c = compile(problem);
  const auto N = static_cast<Eigen::Index>(c.N);
  SDPSolution sol;

  Vec x = Vec::Zero(N), z1 = Vec::Zero(N), z2 = Vec::Zero(N);
  if (initial) {
    if (initial->rows() != c.n || initial->cols() != c.n)
      throw std::invalid_argument("sdp: warm start has the wrong shape");
    x = to_svec(*initial);
    z1 = x;
    z2 = x;
  }
  Vec u1 = Vec::Zero(N), u2 = Vec::Zero(N);

  auto finish = [&](SDPStatus status) {
    from_svec(z1, c.n, sol.X);
    sol.status = status;
    sol.objective_value = objective_value(problem, sol.X);
    sol.constraint_violation = constraint_violation(problem, sol.X);
    return sol;
  };

  if (c.inconsistent_row > opt.infeasibility_margin) {
    sol.infeasibility_gap = c.inconsistent_row;
    return finish(SDPStatus::InfeasibleCertified);
  }

  double rho = opt.rho;
  AffineSolver affine(c);
  affine.factor(2.0 * rho);
  const double alpha = opt.relaxation;

  // Inconsistent equalities: the least-squares residual y is orthogonal to
  // range(A), and y^T b <= |A^T y| |X|_F <= |A^T y| trace_bound when feasible.
  if (c.A.rows() > 0 && std::isfinite(c.trace_bound)) {
    Vec x0, y0;
    affine.solve(Vec::Zero(N), x0, y0);
    Vec res = c.b - c.A * x0;
    const double norm = res.norm();
    if (norm > opt.infeasibility_margin) {
      res /= norm;
      const double gap = res.dot(c.b) - Vec(c.A.transpose() * res).norm() * c.trace_bound;
      if (gap > opt.infeasibility_margin) {
        sol.infeasibility_gap = gap;
        return finish(SDPStatus::InfeasibleCertified);
      }
    }
  }

  Vec y, y_prev, r, xh1, xh2, z1_prev, z2_prev;
  Mat Z, work;
  Vec evals;
  int last_rho_change = 0;
  int rho_updates = 0;
  for (int k = 1; k <= opt.max_iter; ++k) {
    r = rho * ((z1 - u1) + (z2 - u2)) - c.q;
    y_prev = y;
    affine.solve(r, x, y);

    xh1 = alpha * x + (1.0 - alpha) * z1;
    xh2 = alpha * x + (1.0 - alpha) * z2;
    z1_prev = z1;
    z2_prev = z2;

    from_svec(xh1 + u1, c.n, Z);
    psd_project_inplace(Z, work, evals);
    z1 = to_svec(Z);
    z2 = (xh2 + u2).cwiseMax(c.lower).cwiseMin(c.upper);
    u1 += xh1 - z1;
    u2 += xh2 - z2;

    sol.iterations = k;
    sol.primal_residual = std::max(entry_inf_norm(c, x - z1), entry_inf_norm(c, x - z2));
    if (c.A.rows() > 0)
      sol.primal_residual = std::max(sol.primal_residual, (c.A * x - c.b).cwiseAbs().maxCoeff());
    sol.dual_residual =
        rho * std::max(entry_inf_norm(c, z1 - z1_prev), entry_inf_norm(c, z2 - z2_prev));

    if (opt.trace && k % std::max(1, opt.trace_every) == 0)
      *opt.trace << "{\"iter\":" << k << ",\"rho\":" << rho << ",\"primal\":" << sol.primal_residual
                 << ",\"dual\":" << sol.dual_residual << "}\n";

    if (sol.primal_residual <= opt.tol_p && sol.dual_residual <= opt.tol_d)
      return finish(SDPStatus::Converged);

    if (opt.infeasibility_check_every > 0 && k >= 2 * opt.infeasibility_check_every &&
        k % opt.infeasibility_check_every == 0 && last_rho_change < k - 1 && y_prev.size() == y.size()) {
      const double gap = infeasibility_gap(c, y - y_prev);
      if (gap > opt.infeasibility_margin) {
        sol.infeasibility_gap = gap;
        return finish(SDPStatus::InfeasibleCertified);
      }
    }

    if (opt.adaptive_rho && k % 50 == 0 && rho_updates < 40) {
      const double pr = sol.primal_residual, dr = std::max(sol.dual_residual, 1e-300);
      const double ratio = pr / dr;
      if (ratio > 10.0 || ratio < 0.1) {
        const double next = std::clamp(rho * std::sqrt(ratio), rho / 100.0, rho * 100.0);
        const double bounded = std::clamp(next, 1e-4, 1e4);
        if (bounded != rho) {
          u1 *= rho / bounded;
          u2 *= rho / bounded;
          rho = bounded;
          affine.factor(2.0 * rho);
          last_rho_change = k;
          ++rho_updates;
        }
      }
    }
  }
  if (opt.infeasibility_check_every > 0 && y_prev.size() == y.size() && y.size() > 0) {
    const double gap = infeasibility_gap(c, y - y_prev);
    if (gap > opt.infeasibility_margin) {
      sol.infeasibility_gap = gap;
      return finish(SDPStatus::InfeasibleCertified);
    }
  }
  return finish(SDPStatus::MaxIterations);
}

double term_value(const std::vector<MatrixTerm>& terms, const Mat& X) {
  double s = 0.0;
  for (const auto& t : terms) s += t.coef * X(t.i, t.j);
  return s;
}

}  // namespace

void SDPProblem::validate() const {
  if (dim < 1) throw std::invalid_argument("SDPProblem: dim must be >= 1");
  auto check = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= dim || j >= dim)
      throw std::invalid_argument("SDPProblem: entry index out of range");
  };
  for (const auto& eq : equalities)
    for (const auto& t : eq.terms) check(t.i, t.j);
  for (const auto& bd : bounds) {
    check(bd.i, bd.j);
    if (bd.lower > bd.upper) throw std::invalid_argument("SDPProblem: empty bound interval");
  }
  for (auto [i, j] : zero_pattern) check(i, j);
  if (const auto* lin = std::get_if<LinearObjective>(&objective))
    for (const auto& t : lin->terms) check(t.i, t.j);
  if (const auto* sq = std::get_if<SquaredNormObjective>(&objective))
    for (const auto& row : sq->rows)
      for (const auto& t : row) check(t.i, t.j);
}

std::string to_string(SDPStatus s) {
  switch (s) {
    case SDPStatus::Converged: return "converged";
    case SDPStatus::MaxIterations: return "max-iterations";
    case SDPStatus::InfeasibleCertified: return "infeasible-certified";
  }
  return "unknown";
}

SDPSolution solve(const SDPProblem& problem, const SDPOptions& options) {
  return run(problem, options, nullptr);
}

SDPSolution solve(const SDPProblem& problem, const SDPOptions& options, const Mat& initial) {
  return run(problem, options, &initial);
}

double objective_value(const SDPProblem& problem, const Mat& X) {
  if (const auto* lin = std::get_if<LinearObjective>(&problem.objective)) return term_value(lin->terms, X);
  if (const auto* sq = std::get_if<SquaredNormObjective>(&problem.objective)) {
    double s = 0.0;
    for (const auto& row : sq->rows) {
      const double v = term_value(row, X);
      s += v * v;
    }
    return s;
  }
  return 0.0;
}

double constraint_violation(const SDPProblem& problem, const Mat& X) {
  double worst = 0.0;
  for (const auto& eq : problem.equalities)
    worst = std::max(worst, std::abs(term_value(eq.terms, X) - eq.rhs));
  for (const auto& bd : problem.bounds) {
    const double v = X(bd.i, bd.j);
    worst = std::max({worst, bd.lower - v, v - bd.upper});
  }
  for (auto [i, j] : problem.zero_pattern) worst = std::max(worst, std::abs(X(i, j)));
  return worst;
}

Mat project_psd(const Mat& X) {
  Mat Z = 0.5 * (X + X.transpose());
  Mat work;
  Vec w;
  psd_project_inplace(Z, work, w);
  return Z;
}

Mat project_affine(const SDPProblem& problem, const Mat& X) {
  SDPProblem plain;
  plain.dim = problem.dim;
  plain.equalities = problem.equalities;
  const Compiled c = compile(plain);
  AffineSolver affine(c);
  affine.factor(1.0);
  Vec x, y;
  affine.solve(to_svec(X), x, y);
  Mat out;
  from_svec(x, c.n, out);
  return out;
}

Vec eigenvalues(const Mat& X) {
  Mat work = 0.5 * (X + X.transpose());
  Vec w;
  symmetric_eigen(work, w, false);
  return w;
}

double min_eigenvalue(const Mat& X) {
  if (X.rows() == 0) return 0.0;
  return eigenvalues(X)[0];
}

}  // namespace semiclique
