#include <cmath>
#include <limits>

#include "risopt/admm_wsinr.hpp"
#include "risopt/errors.hpp"
#include "risopt/rng.hpp"

namespace risopt {

CVec project_unit_disc(const CVec& v) {
  CVec out = v;
  for (Eigen::Index l = 0; l < out.size(); ++l) {
    const double mag = std::abs(out(l));
    if (mag > 1.0) out(l) /= mag;
  }
  return out;
}

CVec y_update(const CVec& x, const CVec& mu, double rho) {
  return project_unit_disc(x + mu / rho);
}

Alg1Result run_alg1(const ChannelSet& cs, double lambda,
                    const AdmmParams& params, double p_t, double sigma2,
                    std::optional<CVec> x0, bool keep_trace) {
  params.validate();
  if (lambda < 0.0 || lambda > 1.0)
    throw ConfigError("run_alg1: lambda must lie in [0, 1]");
  const int n = cs.n();

  // The escape construction moves inside the nullspace of F1^H F2, which
  // collapses to F2 s = 0 whenever F1 has full row rank, so those steps are
  // blind to the h2 term: with lambda < 1/2 the dominant part of the
  // objective would be unreachable from feasible_init's h2-zeroing start.
  // The problem is invariant under swapping the users along with
  // lambda <-> 1-lambda, so iterate on the relabeled channels and report
  // everything against the caller's labels.
  const bool swapped = lambda < 0.5;
  const ChannelSet work =
      swapped ? ChannelSet{cs.F, cs.d2, cs.d1, cs.g2, cs.g1, cs.F2, cs.F1}
              : cs;
  const double lam = swapped ? 1.0 - lambda : lambda;

  CVec x = x0 ? *x0 : feasible_init(work).x;
  if (x.size() != n) throw ConfigError("run_alg1: x0 size mismatch");
  CVec y = project_unit_disc(x);
  CVec mu = CVec::Zero(n);
  if (params.random_init) {
    RngStream rng(0, 0, StreamTag::kAdmmInit);
    y = project_unit_disc(rng.cgaussian_vector(n));
    mu = 0.01 * rng.cgaussian_vector(n);
  }

  Alg1Result res;
  double rho = params.rho0;
  double prev_primal = std::numeric_limits<double>::infinity();
  CVec mu_step = mu;  // multiplier consistent with the last x-step optimality

  for (int k = 1; k <= params.k_max; ++k) {
    const Qcqp1 q = assemble_wsinr_x(work, lam, rho, mu, y);
    res.final_margin = boundedness_margin(q);
    QcqpSolution step;
    if (res.final_margin > 0) {
      step = solve_bounded(q, 1e-10);
      if (step.status == QcqpStatus::Infeasible)
        throw SolverError("XStepInfeasible",
                          "orthogonality constraint reported infeasible");
    } else {
      step = escape_step(q, x);
    }
    x = step.x;
    // The x-step solves min f + Re<mu, x-y> + (rho/2)||x-y||^2, so its exact
    // stationarity reads grad f + mu + rho(x-y) + nu-terms = 0 with the
    // pre-update mu and y; at a fixed point this coincides with the updated
    // multiplier.  Audit against this snapshot, not the lagged update.
    mu_step = mu + rho * (x - y);

    const CVec y_new = y_update(x, mu, rho);
    mu += rho * (x - y_new);
    const double primal = (x - y_new).norm();
    const double dual = (y_new - y).norm();
    y = y_new;
    res.iterations = k;

    if (keep_trace)
      res.trace.push_back({k, wsinr_surrogate_objective(cs, RisVector{x}, lambda),
                           primal, dual, rho, step.status});
    if (std::max(primal, dual) <= params.eps) {
      res.converged = true;
      break;
    }
    if (primal > 0.25 * prev_primal) rho *= params.delta;
    prev_primal = primal;
  }

  res.ris = RisVector{x}.clipped();
  res.y = y;
  res.mu = mu;
  res.surrogate = wsinr_surrogate_objective(cs, res.ris, lambda);
  res.objective = wsinr_reported_objective(res.surrogate, p_t, sigma2);
  const double w = std::sqrt(0.5);
  res.prec = mrt_precoders(cs, res.ris, w, w, p_t);
  res.qos = evaluate(cs, res.prec, res.ris, sigma2, sigma2);
  res.kkt = kkt_residual(cs, lambda, res.ris.x, mu_step);
  return res;
}

KktReport kkt_residual(const ChannelSet& cs, double lambda, const CVec& x,
                       const CVec& mu) {
  const int n = cs.n();
  if (x.size() != n || mu.size() != n)
    throw ConfigError("kkt_residual: size mismatch");
  const CVec h1 = cs.d1 + cs.F1 * x;
  const CVec h2 = cs.d2 + cs.F2 * x;

  KktReport rep;
  rep.orthogonality = std::abs(h1.dot(h2));
  rep.modulus_violation =
      std::max(0.0, x.cwiseAbs().maxCoeff() - 1.0);

  // Disc multipliers from the splitting multiplier: active components have
  // mu aligned with x, the rest contribute nothing at optimality.
  RVec tau = RVec::Zero(n);
  for (int l = 0; l < n; ++l) {
    const double m2 = std::norm(x(l));
    if (std::abs(x(l)) >= 1.0 - 1e-6 && m2 > 0)
      tau(l) = std::max(0.0, (std::conj(x(l)) * mu(l)).real() / m2);
  }
  rep.tau = tau;
  rep.complementarity = 0;
  for (int l = 0; l < n; ++l)
    rep.complementarity =
        std::max(rep.complementarity, std::abs(tau(l) * (std::norm(x(l)) - 1.0)));

  const CVec grad_f =
      -2.0 * lambda * (cs.F1.adjoint() * h1) -
      2.0 * (1.0 - lambda) * (cs.F2.adjoint() * h2);
  const CVec c1 = cs.F1.adjoint() * h2;
  const CVec c2 = cs.F2.adjoint() * h1;
  const CVec q1 = c1 + c2;
  const CVec q2 = cxd(0, 1) * (c2 - c1);
  const CVec base = grad_f + tau.cast<cxd>().cwiseProduct(x);

  // Least-squares orthogonality multipliers over the stacked real system.
  RMat A(2 * n, 2);
  A.col(0) = real_stack(q1);
  A.col(1) = real_stack(q2);
  const RVec b = -real_stack(base);
  const Eigen::Vector2d nu = A.colPivHouseholderQr().solve(b);
  rep.nu_re = nu(0);
  rep.nu_im = nu(1);
  rep.stationarity = (base + nu(0) * q1 + nu(1) * q2).norm();
  rep.stationarity_rel = rep.stationarity / (1.0 + grad_f.norm());
  return rep;
}

}  // namespace risopt
