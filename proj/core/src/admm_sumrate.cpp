#include <cmath>
#include <limits>

#include "risopt/admm_sumrate.hpp"
#include "risopt/admm_wsinr.hpp"
#include "risopt/errors.hpp"
#include "risopt/rng.hpp"

namespace risopt {

double objective_ap(const ChannelSet& cs, const RisVector& ris, double p_t,
                    double sigma2) {
  const double n1 = (cs.d1 + cs.F1 * ris.x).squaredNorm();
  const double n2 = (cs.d2 + cs.F2 * ris.x).squaredNorm();
  return p_t * p_t * n1 * n2 + 2.0 * p_t * sigma2 * (n1 + n2);
}

PowerSplit power_split(const ChannelSet& cs, const CVec& x, double p_t,
                       double sigma2_1, double sigma2_2) {
  const double b1 = p_t * (cs.d1 + cs.F1 * x).squaredNorm();
  const double b2 = p_t * (cs.d2 + cs.F2 * x).squaredNorm();
  if (b1 <= 0 && b2 <= 0)
    throw SolverError("DegenerateChannel",
                      "power_split: both effective channels vanished");
  if (b1 <= 0) return {1.0, PowerSplit::Regime::AllUser2};
  if (b2 <= 0) return {0.0, PowerSplit::Regime::AllUser1};
  const double diff = sigma2_1 * b2 - sigma2_2 * b1;
  if (diff > b1 * b2) return {1.0, PowerSplit::Regime::AllUser2};
  if (diff < -b1 * b2) return {0.0, PowerSplit::Regime::AllUser1};
  return {0.5 + diff / (2.0 * b1 * b2), PowerSplit::Regime::Interior};
}

CVec z_update(const CVec& z_prev, double p_t, double sigma2, double h1_sq,
              const CVec& h2, const CVec& mu2, double rho2) {
  const double c = rho2 - 2.0 * p_t * (p_t * h1_sq + 2.0 * sigma2);
  const CVec p = -mu2 - rho2 * h2;
  if (c > 0) return -p / c;
  return (1.0 - c) * z_prev - p;
}

Alg2Result run_alg2(const ChannelSet& cs, const AdmmParams& params, double p_t,
                    double sigma2, std::optional<CVec> x0, bool keep_trace) {
  params.validate();
  const int n = cs.n();

  // feasible_init prefers the construction with h2 = 0 exactly, but that is
  // a degenerate near-fixed-point here: z tracks h2, so z stays 0, the
  // x-step's h1 weight P_T(P_T||z||^2 + 2 sigma^2) collapses to noise scale,
  // and the loop stops immediately at its own start.  Seeding from the
  // relabeled channels zeroes h1 instead and keeps the z coupling alive.
  CVec x = x0 ? *x0
              : feasible_init(
                    ChannelSet{cs.F, cs.d2, cs.d1, cs.g2, cs.g1, cs.F2, cs.F1})
                    .x;
  if (x.size() != n) throw ConfigError("run_alg2: x0 size mismatch");
  CVec y = project_unit_disc(x);
  CVec z = cs.F2 * x + cs.d2;
  CVec mu1 = CVec::Zero(n), mu2 = CVec::Zero(cs.m());
  if (params.random_init) {
    RngStream rng(0, 0, StreamTag::kAdmmInit);
    y = project_unit_disc(rng.cgaussian_vector(n));
    mu1 = 0.01 * rng.cgaussian_vector(n);
    mu2 = 0.01 * rng.cgaussian_vector(cs.m());
  }

  Alg2Result res;
  double rho1 = params.rho1_0, rho2 = params.rho2_0;
  double prev_primal_x = std::numeric_limits<double>::infinity();
  double prev_primal_z = std::numeric_limits<double>::infinity();
  CVec mu1_step = mu1, mu2_step = mu2;

  for (int k = 1; k <= params.k_max; ++k) {
    const Qcqp1 q = assemble_sumrate_x(cs, p_t, sigma2, z, rho1, rho2, mu1, mu2, y);
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

    const CVec h1 = cs.d1 + cs.F1 * x;
    const CVec h2 = cs.d2 + cs.F2 * x;
    // Multipliers for which the x-step optimality holds exactly (pre-update
    // y and z); identical to the updated ones at a fixed point.  These feed
    // the KKT audit so its residual is not inflated by rho * update lag.
    mu1_step = mu1 + rho1 * (x - y);
    mu2_step = mu2 + rho2 * (h2 - z);
    const CVec z_new = z_update(z, p_t, sigma2, h1.squaredNorm(), h2, mu2, rho2);
    const CVec y_new = y_update(x, mu1, rho1);
    mu1 += rho1 * (x - y_new);
    mu2 += rho2 * (h2 - z_new);

    const double primal_x = (x - y_new).norm();
    const double dual_y = (y_new - y).norm();
    const double primal_z = (h2 - z_new).norm();
    const double dual_z = (z_new - z).norm();
    y = y_new;
    z = z_new;
    res.iterations = k;

    if (keep_trace)
      res.trace.push_back({k, objective_ap(cs, RisVector{x}, p_t, sigma2),
                           primal_x, dual_y, primal_z, dual_z, rho1, rho2,
                           step.status});
    if (std::max(std::max(primal_x, dual_y), std::max(primal_z, dual_z)) <=
        params.eps) {
      res.converged = true;
      break;
    }
    if (primal_x > 0.25 * prev_primal_x) rho1 *= params.delta1;
    if (primal_z > prev_primal_z) rho2 *= params.delta2;
    prev_primal_x = primal_x;
    prev_primal_z = primal_z;
  }

  res.ris = RisVector{x}.clipped();
  res.y = y;
  res.z = z;
  res.mu1 = mu1;
  res.mu2 = mu2;
  res.objective = objective_ap(cs, res.ris, p_t, sigma2);

  res.split = power_split(cs, res.ris.x, p_t, sigma2, sigma2);
  res.single_user = (res.split.regime != PowerSplit::Regime::Interior);
  res.prec = mrt_precoders(cs, res.ris, std::sqrt(1.0 - res.split.t),
                           std::sqrt(res.split.t), p_t);
  res.qos = evaluate(cs, res.prec, res.ris, sigma2, sigma2);
  res.sum_rate = res.qos.sum_rate;
  res.kkt = kkt_residual_sumrate(cs, p_t, sigma2, res.ris.x, mu1_step, mu2_step);
  return res;
}

SumrateKktReport kkt_residual_sumrate(const ChannelSet& cs, double p_t,
                                      double sigma2, const CVec& x,
                                      const CVec& mu1, const CVec& mu2) {
  const int n = cs.n();
  if (x.size() != n || mu1.size() != n || mu2.size() != cs.m())
    throw ConfigError("kkt_residual_sumrate: size mismatch");
  const CVec h1 = cs.d1 + cs.F1 * x;
  const CVec h2 = cs.d2 + cs.F2 * x;
  const double h1_sq = h1.squaredNorm(), h2_sq = h2.squaredNorm();

  SumrateKktReport rep;
  rep.orthogonality = std::abs(h1.dot(h2));
  rep.modulus_violation = std::max(0.0, x.cwiseAbs().maxCoeff() - 1.0);

  RVec tau = RVec::Zero(n);
  for (int l = 0; l < n; ++l) {
    const double m2 = std::norm(x(l));
    if (std::abs(x(l)) >= 1.0 - 1e-6 && m2 > 0)
      tau(l) = std::max(0.0, (std::conj(x(l)) * mu1(l)).real() / m2);
  }
  rep.tau = tau;
  rep.complementarity = 0;
  for (int l = 0; l < n; ++l)
    rep.complementarity = std::max(rep.complementarity,
                                   std::abs(tau(l) * (std::norm(x(l)) - 1.0)));

  const CVec grad_f =
      -2.0 * p_t * (p_t * h2_sq + 2.0 * sigma2) * (cs.F1.adjoint() * h1) -
      2.0 * p_t * (p_t * h1_sq + 2.0 * sigma2) * (cs.F2.adjoint() * h2);
  const CVec c1 = cs.F1.adjoint() * h2;
  const CVec c2 = cs.F2.adjoint() * h1;
  const CVec q1 = c1 + c2;
  const CVec q2 = cxd(0, 1) * (c2 - c1);
  const CVec base = grad_f + tau.cast<cxd>().cwiseProduct(x);

  RMat A(2 * n, 2);
  A.col(0) = real_stack(q1);
  A.col(1) = real_stack(q2);
  const Eigen::Vector2d nu = A.colPivHouseholderQr().solve(RVec(-real_stack(base)));
  rep.nu_re = nu(0);
  rep.nu_im = nu(1);
  rep.stationarity = (base + nu(0) * q1 + nu(1) * q2).norm();
  rep.stationarity_rel = rep.stationarity / (1.0 + grad_f.norm());

  const CVec z_implied = -mu2 / (2.0 * p_t * (p_t * h1_sq + 2.0 * sigma2));
  rep.z_consistency = (h2 - z_implied).norm();
  return rep;
}

}  // namespace risopt
