#include <cmath>
#include <limits>

#include "risopt/errors.hpp"
#include "risopt/qcqp.hpp"

namespace risopt {
namespace {

/// Real (2n+2) x 2n system whose nullspace parameterizes steps s that keep
/// g constant along the whole ray: A2 s = 0 and s^H c1 + c2^H s = 0, with
/// c1 = A2 x_k + a2 and c2 = A2^H x_k + a3, in stacked [Re s; Im s] form.
RMat escape_system(const Qcqp1& q, const CVec& x_k) {
  const int n = q.n();
  const CVec c1 = q.A2 * x_k + q.a2;
  const CVec c2 = q.A2.adjoint() * x_k + q.a3;
  RMat W(2 * n + 2, 2 * n);
  W.topRows(2 * n) = real_rep(q.A2);
  W.row(2 * n) << (c1.real() + c2.real()).transpose(),
      (c1.imag() + c2.imag()).transpose();
  W.row(2 * n + 1) << (c1.imag() - c2.imag()).transpose(),
      (c2.real() - c1.real()).transpose();
  return W;
}

}  // namespace

RankCheck rank_deficiency_check(const Qcqp1& q, const CVec& x_k, int m) {
  q.check_dims();
  return {numerical_rank(escape_system(q, x_k), 1e-9), 2 * m + 2};
}

QcqpSolution escape_step(const Qcqp1& q, const CVec& x_k) {
  q.check_dims();
  const int n = q.n();
  if (x_k.size() != n) throw ConfigError("escape_step: x_k size mismatch");

  const RMat W = escape_system(q, x_k);
  Eigen::JacobiSVD<RMat> svd(W, Eigen::ComputeFullV);
  const RVec sv = svd.singularValues();
  const double cutoff = sv.size() ? 1e-9 * sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  const int k = 2 * n - rank;
  if (k == 0)
    throw SolverError("NullspaceEmpty", "escape system has full column rank");

  // Nullspace basis as rows; reduce f over u in R^k through
  // delta f(u) = u^T T u + 2 t^T u.
  const RMat V2 = svd.matrixV().rightCols(k).transpose();
  const RMat T = V2 * real_rep(q.A1) * V2.transpose();
  const CVec v = q.A1 * x_k + q.a1;
  const RVec t = V2 * real_stack(v);

  Eigen::SelfAdjointEigenSolver<RMat> es(T);
  const RVec ev = es.eigenvalues();
  const double zero_tol =
      1e-12 * std::max(1.0, std::max(std::abs(ev(0)), std::abs(ev(k - 1))));

  RVec u;
  bool found = false;
  if (ev(0) <= zero_tol) {
    // Nonconvex along the nullspace: ride a nonpositive-curvature
    // eigenvector, doubling its length until f demonstrably drops.
    for (int i = 0; i < k && ev(i) <= zero_tol && !found; ++i) {
      RVec dir = es.eigenvectors().col(i);
      const double td = t.dot(dir);
      if (td > 0) dir = -dir;
      const double lin = t.dot(dir);
      if (ev(i) >= -zero_tol && std::abs(lin) < 1e-14) continue;  // flat
      double c = 1.0;
      for (int dbl = 0; dbl < 64; ++dbl) {
        const double df = c * c * ev(i) + 2.0 * c * lin;
        if (df <= -1e-12) {
          u = c * dir;
          found = true;
          break;
        }
        c *= 2.0;
      }
    }
  }
  if (!found) {
    // Convex (or flat) restriction: pseudo-inverse Newton point.
    RVec u_ls = RVec::Zero(k);
    for (int i = 0; i < k; ++i) {
      if (ev(i) > zero_tol)
        u_ls += es.eigenvectors().col(i) *
                (-es.eigenvectors().col(i).dot(t) / ev(i));
    }
    const double df = u_ls.dot(T * u_ls) + 2.0 * t.dot(u_ls);
    if (df <= -1e-12) {
      u = u_ls;
      found = true;
    }
  }
  if (!found)
    throw SolverError("NoDecrease",
                      "no descent direction in the escape nullspace");

  const CVec s = real_unstack(V2.transpose() * u);
  QcqpSolution sol;
  sol.x = x_k + s;
  sol.objective = q.f(sol.x);
  sol.g_residual = std::abs(q.g(sol.x));
  sol.duality_gap = std::numeric_limits<double>::quiet_NaN();
  sol.status = QcqpStatus::EscapeStep;
  if (sol.objective >= q.f(x_k))
    throw SolverError("NoDecrease", "escape step failed to reduce f");
  return sol;
}

}  // namespace risopt
