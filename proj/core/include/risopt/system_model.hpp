#pragma once

#include "risopt/channel.hpp"
#include "risopt/linalg.hpp"

namespace risopt {

/// Conjugated reflection coefficients x_l = conj(theta_l); the physical
/// phase shifts are theta(). Feasible means |x_l| <= 1 + tol.
struct RisVector {
  CVec x;

  Eigen::Index size() const { return x.size(); }
  CVec theta() const { return x.conjugate(); }
  bool within_unit_disc(double tol = 1e-9) const;
  /// Largest modulus excess over 1 (0 when inside the disc).
  double modulus_violation() const;
  /// Clip every entry onto the closed unit disc, keeping phases.
  RisVector clipped() const;
};

/// Downlink beamformers for the two users.
struct Precoders {
  CVec w1, w2;
  double total_power() const { return w1.squaredNorm() + w2.squaredNorm(); }
};

/// Link-quality summary of one configuration.
struct QosReport {
  double sinr1 = 0, sinr2 = 0;
  double rate1 = 0, rate2 = 0;   ///< log2(1 + sinr_j)
  double sum_rate = 0;
  double interference1 = 0;      ///< |h1^H w2|^2
  double interference2 = 0;      ///< |h2^H w1|^2
  double orthogonality_residual = 0;  ///< |h1^H h2| / (||h1|| ||h2||)
};

/// Exact SINRs/rates for given precoders and reflection coefficients.
QosReport evaluate(const ChannelSet& cs, const Precoders& prec,
                   const RisVector& ris, double sigma2_1, double sigma2_2);

/// Matched-filter precoders w_j = omega_j sqrt(P_T) h_j / ||h_j||.
/// Requires omega1^2 + omega2^2 <= 1 and nonzero effective channels.
Precoders mrt_precoders(const ChannelSet& cs, const RisVector& ris,
                        double omega1, double omega2, double p_t);

/// Interference-free SINR cap omega_j^2 P_T ||h_j||^2 / sigma_j^2.
double sinr_upper_bound(const ChannelSet& cs, const RisVector& ris, int user,
                        double omega, double p_t, double sigma2);

/// lambda ||h1||^2 + (1 - lambda) ||h2||^2: the channel-gain surrogate
/// maximized by the weighted-SINR pipeline.
double wsinr_surrogate_objective(const ChannelSet& cs, const RisVector& ris,
                                 double lambda);

/// Weighted sum SINR the surrogate value corresponds to under an equal
/// power split and matched filtering: (P_T / (2 sigma^2)) * surrogate.
double wsinr_reported_objective(double surrogate, double p_t, double sigma2);

}  // namespace risopt
