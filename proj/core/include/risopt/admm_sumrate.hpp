#pragma once

#include <optional>
#include <vector>

#include "risopt/channel.hpp"
#include "risopt/config.hpp"
#include "risopt/qcqp.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

/// Product-form objective the sum-rate driver maximizes:
/// P_T^2 ||h1||^2 ||h2||^2 + 2 P_T sigma^2 (||h1||^2 + ||h2||^2).
double objective_ap(const ChannelSet& cs, const RisVector& ris, double p_t,
                    double sigma2);

/// Power allocation t = omega_2^2 between the two users.
struct PowerSplit {
  enum class Regime { Interior, AllUser2, AllUser1 };
  double t = 0.5;
  Regime regime = Regime::Interior;
};

/// Fraction of the power budget handed to user 2 that maximizes the true
/// sum rate over orthogonal matched-filter beams. With a_j = sigma_j^2 and
/// b_j = P_T ||h_j||^2: interior optimum 1/2 + (a1 b2 - a2 b1)/(2 b1 b2)
/// when |a1 b2 - a2 b1| <= b1 b2, else the nearer endpoint. A vanished
/// channel (b_j = 0) selects the surviving user's endpoint.
PowerSplit power_split(const ChannelSet& cs, const CVec& x, double p_t,
                       double sigma2_1, double sigma2_2);

/// Consensus-variable update for the z = F2 x + d2 split: exact minimizer
/// while the z-subproblem is strongly convex, a unit gradient step on it
/// otherwise.
CVec z_update(const CVec& z_prev, double p_t, double sigma2, double h1_sq,
              const CVec& h2, const CVec& mu2, double rho2);

struct Alg2TraceRow {
  int k = 0;
  double objective = 0;   ///< product-form objective at the iterate
  double primal_x = 0;    ///< ||x - y||
  double dual_y = 0;      ///< ||y_k - y_{k-1}||
  double primal_z = 0;    ///< ||F2 x + d2 - z||
  double dual_z = 0;      ///< ||z_k - z_{k-1}||
  double rho1 = 0, rho2 = 0;
  QcqpStatus branch = QcqpStatus::GlobalSdr;
};

struct SumrateKktReport {
  double stationarity = 0;
  double stationarity_rel = 0;
  double complementarity = 0;
  double orthogonality = 0;
  double modulus_violation = 0;
  double z_consistency = 0;  ///< gap between F2 x + d2 and the z mu2 implies
  double nu_re = 0, nu_im = 0;
  RVec tau;
};

struct Alg2Result {
  RisVector ris;
  CVec y, z, mu1, mu2;
  Precoders prec;        ///< matched filters under the tuned power split
  QosReport qos;
  SumrateKktReport kkt;
  PowerSplit split;
  double objective = 0;  ///< product-form objective at the final point
  double sum_rate = 0;   ///< true sum rate of the returned design
  double final_margin = 0;   ///< boundedness margin of the last x-step
  int iterations = 0;
  bool converged = false;
  bool single_user = false;  ///< split collapsed to one active user
  std::vector<Alg2TraceRow> trace;
};

/// Sum-rate maximization through the product-form surrogate: two-block
/// consensus ADMM (disc split plus effective-channel split), global x-step
/// when bounded, escape ray otherwise; matched filters with the optimal
/// power split on the final channels.
Alg2Result run_alg2(const ChannelSet& cs, const AdmmParams& params, double p_t,
                    double sigma2, std::optional<CVec> x0 = std::nullopt,
                    bool keep_trace = true);

/// First-order optimality residuals of a candidate (x, mu1, mu2) triple for
/// the product-form problem.
SumrateKktReport kkt_residual_sumrate(const ChannelSet& cs, double p_t,
                                      double sigma2, const CVec& x,
                                      const CVec& mu1, const CVec& mu2);

}  // namespace risopt
