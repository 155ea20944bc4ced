#include <algorithm>
#include <cmath>
#include <limits>

#include "risopt/errors.hpp"
#include "risopt/qcqp.hpp"
#include "risopt/rng.hpp"

namespace risopt {
namespace {

/// Real and imaginary parts of g as real-valued Hermitian quadratics:
/// r_i(x) = x^H G_i x + 2 Re(x^H u_i) + w_i.
struct SplitConstraint {
  CMat G1, G2;
  CVec u1, u2;
  double w1 = 0, w2 = 0;

  explicit SplitConstraint(const Qcqp1& q) {
    const cxd half(0.5, 0.0);
    const cxd half_i(0.0, -0.5);  // 1/(2i)
    G1 = half * (q.A2 + q.A2.adjoint());
    G2 = half_i * (q.A2 - q.A2.adjoint());
    u1 = half * (q.a2 + q.a3);
    u2 = half_i * (q.a2 - q.a3);
    w1 = q.a4.real();
    w2 = q.a4.imag();
  }

  double r1(const CVec& x) const {
    return (x.dot(G1 * x)).real() + 2.0 * x.dot(u1).real() + w1;
  }
  double r2(const CVec& x) const {
    return (x.dot(G2 * x)).real() + 2.0 * x.dot(u2).real() + w2;
  }
};

double g_scale(const Qcqp1& q, double xnorm) {
  return 1.0 + std::abs(q.a4) + xnorm * (q.a2.norm() + q.a3.norm()) +
         xnorm * xnorm * q.A2.norm();
}

/// One Newton sweep on the two real components of g along a fixed complex
/// direction w: solves g(x0 + zeta w) = 0 for the complex scalar zeta.
/// Updates x in place; returns false on a numerically dead Jacobian.
bool newton_sweep_along(const Qcqp1& q, const CVec& w, CVec& x) {
  const CVec c1 = q.A2 * x + q.a2;
  const CVec c2 = q.A2.adjoint() * x + q.a3;
  const cxd alpha = w.dot(c1);          // w^H c1
  const cxd beta = c2.dot(w);           // c2^H w
  const cxd gamma = w.dot(q.A2 * w);    // w^H A2 w
  const cxd g0 = q.g(x);

  const double scale = g_scale(q, x.norm() + w.norm());
  cxd zeta(0.0, 0.0);
  cxd g_cur = g0;
  for (int it = 0; it < 80; ++it) {
    if (std::abs(g_cur) <= 1e-16 * scale) break;
    const cxd dre = alpha + beta + 2.0 * zeta.real() * gamma;
    const cxd dim = cxd(0, 1) * (beta - alpha) + 2.0 * zeta.imag() * gamma;
    Eigen::Matrix2d J;
    J << dre.real(), dim.real(), dre.imag(), dim.imag();
    Eigen::Vector2d rhs(-g_cur.real(), -g_cur.imag());
    // Least-squares solve: the Jacobian is singular when one component of
    // g is identically zero along w, which is fine.
    const Eigen::Vector2d step =
        J.completeOrthogonalDecomposition().solve(rhs);
    if (!step.allFinite()) return false;
    double t = 1.0;
    const double cur = std::abs(g_cur);
    bool moved = false;
    for (int ls = 0; ls < 30 && !moved; ++ls) {
      const cxd zt = zeta + t * cxd(step(0), step(1));
      const cxd gt = g0 + std::conj(zt) * alpha + zt * beta +
                     std::norm(zt) * gamma;
      if (std::abs(gt) < cur) {
        zeta = zt;
        g_cur = gt;
        moved = true;
      }
      t *= 0.5;
    }
    if (!moved) break;  // line-search stall: keep what we have
  }
  x += zeta * w;
  return true;
}

/// Drives g to the evaluation noise floor along w. Each sweep expands g
/// around the current x, so re-anchoring between sweeps removes the
/// incremental rounding drift that a single expansion accumulates.
bool restore_along(const Qcqp1& q, const CVec& w, CVec& x) {
  CVec best_x = x;
  double best_g = std::abs(q.g(best_x));
  const double target = 1e-15 * g_scale(q, x.norm() + w.norm());
  for (int pass = 0; pass < 4 && best_g > target; ++pass) {
    CVec cand = best_x;
    if (!newton_sweep_along(q, w, cand)) break;
    const double gc = std::abs(q.g(cand));
    if (gc >= best_g) break;
    best_x = std::move(cand);
    best_g = gc;
  }
  if (best_g > 1e-11 * g_scale(q, best_x.norm())) return false;
  x = std::move(best_x);
  return true;
}

/// Try a few natural directions until one restores feasibility.
bool restore_feasibility(const Qcqp1& q, CVec& x, std::uint64_t salt = 0) {
  const CVec c1 = q.A2 * x + q.a2;
  const CVec c2 = q.A2.adjoint() * x + q.a3;
  std::vector<CVec> dirs;
  if (c1.norm() > 0) dirs.push_back(c1.normalized());
  if (c2.norm() > 0) dirs.push_back(c2.normalized());
  if ((c1 + c2).norm() > 0) dirs.push_back((c1 + c2).normalized());
  RngStream rng(0x5eedf00dULL ^ salt);
  for (int extra = 0; extra < 3; ++extra)
    dirs.push_back(rng.cgaussian_vector(x.size()).normalized());
  for (const CVec& w : dirs) {
    CVec cand = x;
    if (restore_along(q, w, cand)) {
      x = cand;
      return true;
    }
  }
  return false;
}

struct DualState {
  double nu1 = 0, nu2 = 0;
  double value = -std::numeric_limits<double>::infinity();
};

CMat p_matrix(const Qcqp1& q, const SplitConstraint& sc, double nu1,
              double nu2) {
  return q.A1 + nu1 * sc.G1 + nu2 * sc.G2;
}

CVec p_vector(const Qcqp1& q, const SplitConstraint& sc, double nu1,
              double nu2) {
  return q.a1 + nu1 * sc.u1 + nu2 * sc.u2;
}

/// q(nu) = nu.w - p^H P^{-1} p where P must be positive definite; returns
/// false when P is not PD.
bool dual_value(const Qcqp1& q, const SplitConstraint& sc, double nu1,
                double nu2, double& val, CVec* xhat = nullptr,
                Eigen::LLT<CMat>* llt_out = nullptr) {
  const CMat P = p_matrix(q, sc, nu1, nu2);
  Eigen::LLT<CMat> llt(P);
  if (llt.info() != Eigen::Success) return false;
  const CVec p = p_vector(q, sc, nu1, nu2);
  const CVec sol = llt.solve(p);
  val = nu1 * sc.w1 + nu2 * sc.w2 - p.dot(sol).real();
  if (xhat) *xhat = -sol;
  if (llt_out) *llt_out = llt;
  return true;
}

struct Candidate {
  CVec x;
  double f = std::numeric_limits<double>::infinity();
  bool ok = false;
};

void consider(const Qcqp1& q, CVec x, Candidate& best) {
  if (!restore_feasibility(q, x)) return;
  const double f = q.f(x);
  if (!best.ok || f < best.f) best = {std::move(x), f, true};
}

/// Barrier path-following on the three-multiplier lifted dual. Improves the
/// certified dual bound and yields a primal matrix for extraction.
struct IpmResult {
  double dual_value = -std::numeric_limits<double>::infinity();
  CVec x_mean;     // correlation-column estimate
  CMat cov;        // residual covariance around x_mean
  bool diverged = false;
  bool ok = false;
};

IpmResult ipm_fallback(const Qcqp1& q, const SplitConstraint& sc) {
  const int n = q.n();
  const int d = n + 1;
  CMat Mf = CMat::Zero(d, d), H1 = CMat::Zero(d, d), H2 = CMat::Zero(d, d);
  Mf.topLeftCorner(n, n) = q.A1;
  Mf.col(n).head(n) = q.a1;
  Mf.row(n).head(n) = q.a1.adjoint();
  H1.topLeftCorner(n, n) = sc.G1;
  H1.col(n).head(n) = sc.u1;
  H1.row(n).head(n) = sc.u1.adjoint();
  H1(n, n) = sc.w1;
  H2.topLeftCorner(n, n) = sc.G2;
  H2.col(n).head(n) = sc.u2;
  H2.row(n).head(n) = sc.u2.adjoint();
  H2(n, n) = sc.w2;

  IpmResult res;
  // Strictly feasible start: y = (0, 0, y3) with y3 low enough.
  Eigen::LLT<CMat> lltA(q.A1);
  if (lltA.info() != Eigen::Success) return res;
  double y1 = 0, y2 = 0;
  double y3 = -(q.a1.dot(lltA.solve(q.a1)).real() + 1.0 + std::abs(q.a4));

  const auto make_z = [&](double a, double b, double c) {
    CMat Z = Mf - a * H1 - b * H2;
    Z(n, n) -= c;
    return Z;
  };

  CMat Zinv;
  for (double tau = 1.0; tau >= 1e-12; tau *= 0.1) {
    for (int it = 0; it < 60; ++it) {
      const CMat Z = make_z(y1, y2, y3);
      Eigen::LLT<CMat> llt(Z);
      if (llt.info() != Eigen::Success) return res;  // lost the cone
      Zinv = llt.solve(CMat::Identity(d, d));
      const double t1 = (Zinv * H1).trace().real();
      const double t2 = (Zinv * H2).trace().real();
      const double t3 = Zinv(n, n).real();
      Eigen::Vector3d grad(-tau * t1, -tau * t2, 1.0 - tau * t3);
      Eigen::Matrix3d hess;
      const CMat ZH1 = Zinv * H1, ZH2 = Zinv * H2;
      const CMat ZE = Zinv.col(n) * Zinv.row(n) / 1.0;  // Zinv E Zinv
      hess(0, 0) = -tau * (ZH1 * ZH1).trace().real();
      hess(0, 1) = hess(1, 0) = -tau * (ZH1 * ZH2).trace().real();
      hess(1, 1) = -tau * (ZH2 * ZH2).trace().real();
      hess(0, 2) = hess(2, 0) = -tau * (ZH1 * Zinv.col(n))(n).real();
      hess(1, 2) = hess(2, 1) = -tau * (ZH2 * Zinv.col(n))(n).real();
      hess(2, 2) = -tau * ZE(n, n).real();
      Eigen::Vector3d step =
          (-hess + 1e-14 * Eigen::Matrix3d::Identity()).ldlt().solve(grad);
      if (!step.allFinite()) break;
      double alpha = 1.0;
      bool moved = false;
      const double psi0 =
          y3 + tau * 2.0 * CMat(llt.matrixL()).diagonal().real().array().log().sum();
      for (int ls = 0; ls < 50; ++ls) {
        const double c1 = y1 + alpha * step(0), c2 = y2 + alpha * step(1),
                     c3 = y3 + alpha * step(2);
        Eigen::LLT<CMat> lt(make_z(c1, c2, c3));
        if (lt.info() == Eigen::Success) {
          const double psi =
              c3 + tau * 2.0 *
                       CMat(lt.matrixL()).diagonal().real().array().log().sum();
          if (psi > psi0 + 1e-4 * alpha * grad.dot(step)) {
            y1 = c1;
            y2 = c2;
            y3 = c3;
            moved = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (y3 > 1e40 * (1.0 + Mf.norm())) {
        res.diverged = true;
        return res;
      }
      if (!moved || grad.norm() <= 1e-13 * (1.0 + std::abs(y3))) break;
    }
  }
  // y is strictly dual feasible, so y3 is a certified lower bound.
  res.dual_value = y3;
  const CMat X = make_z(y1, y2, y3).llt().solve(CMat::Identity(d, d)) *
                 1e-12;  // tau * Z^{-1} at the last barrier level
  const double corner = X(n, n).real();
  if (corner > 0) {
    res.x_mean = X.col(n).head(n) / corner;
    res.cov = X.topLeftCorner(n, n) - res.x_mean * res.x_mean.adjoint();
    res.ok = true;
  }
  return res;
}

}  // namespace

QcqpSolution solve_bounded(const Qcqp1& q, double tol) {
  q.check_dims();
  if (boundedness_margin(q) <= 0)
    throw SolverError("Unbounded",
                      "solve_bounded requires a positive boundedness margin");
  const SplitConstraint sc(q);
  const int n = q.n();
  const double gtol = tol * (1.0 + std::abs(q.a4));

  DualState best;
  double nu1 = 0, nu2 = 0;
  CVec xhat(n);
  Eigen::LLT<CMat> llt;
  double val = 0;
  bool stalled = false;
  bool infeasible = false;
  // Multipliers balancing A1 against the constraint blocks legitimately
  // reach ~|A1|/|A2|, so the divergence cutoff must track that ratio.
  const double nu_cap =
      1e14 * (1.0 + (q.A1.norm() + q.a1.norm()) /
                        std::max(q.A2.norm() + q.a2.norm() + q.a3.norm(),
                                 1e-12));

  if (!dual_value(q, sc, nu1, nu2, val, &xhat, &llt))
    throw SolverError("Unbounded", "A1 lost definiteness");  // cannot happen
  best = {nu1, nu2, val};

  for (int it = 0; it < 200; ++it) {
    const double r1 = sc.r1(xhat), r2 = sc.r2(xhat);
    const Eigen::Vector2d grad(r1, r2);
    if (grad.norm() <= gtol) break;

    const CVec g1 = sc.G1 * xhat + sc.u1;
    const CVec g2 = sc.G2 * xhat + sc.u2;
    const CVec s1 = llt.solve(g1), s2 = llt.solve(g2);
    Eigen::Matrix2d hess;
    hess(0, 0) = -2.0 * g1.dot(s1).real();
    hess(0, 1) = hess(1, 0) = -2.0 * g1.dot(s2).real();
    hess(1, 1) = -2.0 * g2.dot(s2).real();
    const double reg = 1e-12 * (1.0 + std::abs(hess(0, 0)) + std::abs(hess(1, 1)));
    Eigen::Vector2d step =
        (-hess + reg * Eigen::Matrix2d::Identity()).ldlt().solve(grad);
    if (!step.allFinite()) {
      stalled = true;
      break;
    }

    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      double cand_val;
      CVec cand_x;
      Eigen::LLT<CMat> cand_llt;
      if (dual_value(q, sc, nu1 + alpha * step(0), nu2 + alpha * step(1),
                     cand_val, &cand_x, &cand_llt) &&
          cand_val >= val + 1e-4 * alpha * grad.dot(step)) {
        nu1 += alpha * step(0);
        nu2 += alpha * step(1);
        val = cand_val;
        xhat = std::move(cand_x);
        llt = std::move(cand_llt);
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (val > best.value) best = {nu1, nu2, val};
    if (std::hypot(nu1, nu2) > nu_cap) {
      infeasible = true;
      break;
    }
    if (!moved) {
      stalled = true;
      break;
    }
  }

  if (infeasible) {
    QcqpSolution sol;
    sol.x = CVec::Zero(n);
    sol.objective = 0;
    sol.g_residual = std::abs(q.g(sol.x));
    sol.status = QcqpStatus::Infeasible;
    sol.dual = QcqpDual{best.nu1, best.nu2, best.value};
    sol.duality_gap = std::numeric_limits<double>::infinity();
    return sol;
  }

  // Candidate generation. Weak duality certifies any feasible x whose f
  // touches the best dual value.
  Candidate cand;
  consider(q, xhat, cand);

  if (stalled || !cand.ok) {
    // Possible boundary optimum: split off the near-null eigenspace of P
    // and restore feasibility along it (the Lagrangian is flat there).
    const CMat P = p_matrix(q, sc, best.nu1, best.nu2);
    const CVec p = p_vector(q, sc, best.nu1, best.nu2);
    Eigen::SelfAdjointEigenSolver<CMat> es(P);
    const RVec ev = es.eigenvalues();
    const double cut = std::max(1e-9 * std::max(ev.maxCoeff(), 0.0),
                                std::numeric_limits<double>::min());
    CVec xt = CVec::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (ev(i) > cut)
        xt -= es.eigenvectors().col(i) * (es.eigenvectors().col(i).dot(p)) /
              ev(i);
    }
    for (int i = 0; i < n && ev(i) <= cut; ++i) {
      CVec xn = xt;
      if (restore_along(q, es.eigenvectors().col(i), xn)) {
        const double f = q.f(xn);
        if (!cand.ok || f < cand.f) cand = {xn, f, true};
      }
    }
    consider(q, xt, cand);
  }

  double dual_bound = best.value;
  const auto obj_tol = [](double f) { return 1e-6 * (1.0 + std::abs(f)); };

  if (!cand.ok || cand.f - dual_bound > obj_tol(cand.f)) {
    const IpmResult ipm = ipm_fallback(q, sc);
    if (ipm.diverged) {
      QcqpSolution sol;
      sol.x = CVec::Zero(n);
      sol.objective = 0;
      sol.g_residual = std::abs(q.g(sol.x));
      sol.status = QcqpStatus::Infeasible;
      sol.duality_gap = std::numeric_limits<double>::infinity();
      return sol;
    }
    dual_bound = std::max(dual_bound, ipm.dual_value);
    if (ipm.ok) {
      consider(q, ipm.x_mean, cand);
      if (cand.f - dual_bound > obj_tol(cand.f)) {
        // Randomized extraction around the relaxation mean, plus retries
        // from jittered multipliers.
        Eigen::SelfAdjointEigenSolver<CMat> ces(ipm.cov);
        const RVec cev = ces.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        RngStream rng(0xa5a5a5a5ULL);
        for (int draw = 0; draw < 64 && cand.f - dual_bound > obj_tol(cand.f);
             ++draw) {
          CVec xi = rng.cgaussian_vector(n);
          for (int i = 0; i < n; ++i) xi(i) *= cev(i);
          consider(q, ipm.x_mean + ces.eigenvectors() * xi, cand);
          const double j1 = best.nu1 * (1.0 + 0.01 * rng.gaussian());
          const double j2 = best.nu2 * (1.0 + 0.01 * rng.gaussian());
          double jval;
          CVec jx;
          if (dual_value(q, sc, j1, j2, jval, &jx)) consider(q, jx, cand);
        }
      }
    }
  }

  if (!cand.ok)
    throw SolverError("SdrExtraction",
                      "could not recover a feasible point from the relaxation");

  QcqpSolution sol;
  sol.x = cand.x;
  sol.objective = cand.f;
  sol.g_residual = std::abs(q.g(cand.x));
  sol.duality_gap = cand.f - dual_bound;
  sol.status = QcqpStatus::GlobalSdr;
  sol.dual = QcqpDual{best.nu1, best.nu2, dual_bound};
  return sol;
}

}  // namespace risopt
