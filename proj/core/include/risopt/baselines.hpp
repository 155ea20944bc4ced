#pragma once

#include <string>

#include "risopt/channel.hpp"
#include "risopt/rng.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

/// Output of one comparison scheme on one channel realization. The link
/// report is always recomputable from (ris, prec): evaluate() on those
/// reproduces qos bit-for-bit up to roundoff.
struct BaselineResult {
  std::string scheme;
  RisVector ris;    ///< reflection coefficients used (zeros = surface off)
  Precoders prec;
  QosReport qos;
  double objective = 0;  ///< the quantity the scheme itself maximizes
  int iterations = 0;    ///< bisection iterations (0 for closed forms)
  double bracket = 0;    ///< final bisection bracket width
};

/// Zero-forcing without the surface: precoder matrix pinv([d1 d2])^H, each
/// column rescaled to power P_T / 2. Throws SolverError("CollinearChannels")
/// when the direct links do not admit a zero-forcing pair.
BaselineResult zf_no_ris(const ChannelSet& cs, double p_t, double sigma2_1,
                         double sigma2_2);

/// Uniform random phases x_l = exp(i tau_l), tau_l ~ U[0, 2pi).
RisVector random_phase_ris(const ChannelSet& cs, RngStream& rng);

/// Quadratic-phase profile theta_l = exp(-i (l-1)^2 / m); returns the
/// conjugated coefficients x = conj(theta).
RisVector dft_phase_ris(int n, int m);

/// Best weighted sum SINR achievable with per-beam constraints
/// ||w_j|| <= 1 when the reflection pattern is held fixed.
BaselineResult fixed_ris_wsinr(const ChannelSet& cs, const RisVector& x_fixed,
                               double lambda, double sigma2_1, double sigma2_2,
                               double tol = 1e-4);

/// Best sum rate under the sum power budget ||w1||^2 + ||w2||^2 <= p_t
/// when the reflection pattern is held fixed.
BaselineResult fixed_ris_sumrate(const ChannelSet& cs, const RisVector& x_fixed,
                                 double p_t, double sigma2_1, double sigma2_2,
                                 double tol = 1e-4);

/// Weighted-MMSE sum-rate precoding on the direct links only.
BaselineResult wmmse_no_ris(const ChannelSet& cs, double p_t, double sigma2_1,
                            double sigma2_2, int iters = 200);

}  // namespace risopt
