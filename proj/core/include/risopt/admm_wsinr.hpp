#pragma once

#include <optional>
#include <vector>

#include "risopt/channel.hpp"
#include "risopt/config.hpp"
#include "risopt/qcqp.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

/// Componentwise projection onto the closed unit disc.
CVec project_unit_disc(const CVec& v);

/// Splitting-variable update: project x + mu / rho onto the unit polydisc.
CVec y_update(const CVec& x, const CVec& mu, double rho);

struct WsinrTraceRow {
  int k = 0;
  double objective = 0;    ///< weighted sum SINR the iterate maps to
  double primal_gap = 0;   ///< ||x - y||
  double dual_gap = 0;     ///< ||y_k - y_{k-1}||
  double rho = 0;
  QcqpStatus branch = QcqpStatus::GlobalSdr;  ///< x-step branch taken
};

struct KktReport {
  double stationarity = 0;      ///< gradient-of-Lagrangian norm, best nu
  double stationarity_rel = 0;  ///< stationarity / (1 + ||grad f||)
  double complementarity = 0;   ///< max_l |tau_l (|x_l|^2 - 1)|
  double orthogonality = 0;     ///< |h1^H h2|
  double modulus_violation = 0; ///< max_l (|x_l| - 1)_+
  double nu_re = 0, nu_im = 0;  ///< least-squares constraint multipliers
  RVec tau;                     ///< recovered disc multipliers, >= 0
};

struct Alg1Result {
  RisVector ris;        ///< final reflection vector (clipped to the disc)
  CVec y, mu;           ///< terminal splitting variable and multiplier
  Precoders prec;       ///< equal-split matched filters on the final channel
  QosReport qos;
  KktReport kkt;
  double objective = 0;  ///< lambda SINR_1 + (1 - lambda) SINR_2
  double surrogate = 0;  ///< lambda ||h1||^2 + (1 - lambda) ||h2||^2
  double final_margin = 0;  ///< boundedness margin of the last x-step
  int iterations = 0;
  bool converged = false;
  std::vector<WsinrTraceRow> trace;
};

/// Weighted-channel-gain maximization under the orthogonality constraint:
/// ADMM on the disc split, with the x-step solved globally when bounded and
/// by an escape ray otherwise. x0 overrides the built-in feasible start
/// (it must satisfy the orthogonality constraint).
Alg1Result run_alg1(const ChannelSet& cs, double lambda,
                    const AdmmParams& params, double p_t, double sigma2,
                    std::optional<CVec> x0 = std::nullopt,
                    bool keep_trace = true);

/// First-order optimality residuals of a candidate (x, mu) pair for the
/// weighted-channel-gain problem. The disc multipliers tau are recovered
/// from mu; the orthogonality multipliers by least squares.
KktReport kkt_residual(const ChannelSet& cs, double lambda, const CVec& x,
                       const CVec& mu);

}  // namespace risopt
