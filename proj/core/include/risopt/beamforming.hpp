#pragma once

#include "risopt/linalg.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

/// Largest |h_own^H w|^2 over unit-norm beams w whose leakage into the
/// other user stays bounded: |h_oth^H w|^2 <= leak_cap. Pass an infinite
/// cap for plain matched filtering.
double leak_capped_gain(const CVec& h_own, const CVec& h_oth, double leak_cap);

/// A beam attaining leak_capped_gain, scaled to unit norm (zero vector when
/// h_own = 0).
CVec leak_capped_beam(const CVec& h_own, const CVec& h_oth, double leak_cap);

struct PowerMinResult {
  bool feasible = false;
  double power = 0;  ///< total ||w1||^2 + ||w2||^2 at the solution
  Precoders prec;
};

/// Minimum total transmit power meeting SINR targets t1, t2 for the
/// two-user downlink, via the uplink-duality fixed point. A zero target
/// drops that user (zero beam).
PowerMinResult min_power_beamforming(const CVec& h1, const CVec& h2, double t1,
                                     double t2, double sigma2_1,
                                     double sigma2_2);

struct BeamSearchResult {
  Precoders prec;
  double objective = 0;  ///< achieved value at the returned beams
  double lo = 0, hi = 0; ///< final bisection bracket on the objective
  int iterations = 0;
};

/// max lambda SINR_1 + (1 - lambda) SINR_2 subject to per-beam constraints
/// ||w_j|| <= 1: bisection on the objective with a refining grid over the
/// SINR split and an exact two-dimensional feasibility test per pair.
BeamSearchResult wsinr_beam_search(const CVec& h1, const CVec& h2,
                                   double lambda, double sigma2_1,
                                   double sigma2_2, double tol = 1e-4);

/// max rate_1 + rate_2 subject to ||w1||^2 + ||w2||^2 <= p_t: bisection on
/// the sum rate with a refining grid over the rate split and a minimum-power
/// feasibility test per pair.
BeamSearchResult sumrate_beam_search(const CVec& h1, const CVec& h2,
                                     double p_t, double sigma2_1,
                                     double sigma2_2, double tol = 1e-4);

/// Classic alternating weighted-MMSE precoding for the two-user sum rate
/// under a sum power budget. Monotone in the sum rate; stops at iters or
/// when the rate improvement drops below 1e-8.
Precoders wmmse_beamforming(const CVec& h1, const CVec& h2, double p_t,
                            double sigma2_1, double sigma2_2, int iters = 200);

}  // namespace risopt
