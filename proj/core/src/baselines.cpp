#include "risopt/baselines.hpp"

#include <cmath>
#include <complex>

#include "risopt/beamforming.hpp"
#include "risopt/errors.hpp"

namespace risopt {

namespace {

constexpr double kPi = 3.14159265358979323846;

RisVector surface_off(int n) { return RisVector{CVec::Zero(n)}; }

BaselineResult from_search(const char* scheme, const ChannelSet& cs,
                           const RisVector& ris, const BeamSearchResult& bs,
                           double sigma2_1, double sigma2_2) {
  BaselineResult out;
  out.scheme = scheme;
  out.ris = ris;
  out.prec = bs.prec;
  out.qos = evaluate(cs, bs.prec, ris, sigma2_1, sigma2_2);
  out.objective = bs.objective;
  out.iterations = bs.iterations;
  out.bracket = bs.hi - bs.lo;
  return out;
}

}  // namespace

BaselineResult zf_no_ris(const ChannelSet& cs, double p_t, double sigma2_1,
                         double sigma2_2) {
  const Eigen::Index m = cs.d1.size();
  CMat d(m, 2);
  d.col(0) = cs.d1;
  d.col(1) = cs.d2;

  // W = D (D^H D)^{-1} gives d_i^H w_j = delta_ij before rescaling.
  const CMat gram = d.adjoint() * d;
  const double det = std::abs(gram.determinant());
  const double scale = gram.norm();
  if (!(det > 1e-24 * scale * scale))
    throw SolverError("CollinearChannels",
                      "direct links too aligned for zero forcing");
  const CMat w = d * gram.inverse();

  BaselineResult out;
  out.scheme = "no_ris_zf";
  out.ris = surface_off(cs.n());
  const double amp = std::sqrt(p_t / 2.0);
  out.prec.w1 = amp * w.col(0).normalized();
  out.prec.w2 = amp * w.col(1).normalized();
  out.qos = evaluate(cs, out.prec, out.ris, sigma2_1, sigma2_2);
  out.objective = out.qos.sum_rate;
  return out;
}

RisVector random_phase_ris(const ChannelSet& cs, RngStream& rng) {
  RisVector ris;
  ris.x.resize(cs.n());
  for (Eigen::Index l = 0; l < ris.x.size(); ++l) {
    const double tau = 2.0 * kPi * rng.uniform();
    ris.x(l) = cxd(std::cos(tau), std::sin(tau));
  }
  return ris;
}

RisVector dft_phase_ris(int n, int m) {
  if (n <= 0 || m <= 0) throw ConfigError("dft_phase_ris needs n, m >= 1");
  RisVector ris;
  ris.x.resize(n);
  for (int l = 0; l < n; ++l) {
    const double phase = static_cast<double>(l) * static_cast<double>(l) /
                         static_cast<double>(m);
    // theta_l = exp(-i (l-1)^2 / m) in 1-based indexing; store the conjugate.
    ris.x(l) = cxd(std::cos(phase), std::sin(phase));
  }
  return ris;
}

BaselineResult fixed_ris_wsinr(const ChannelSet& cs, const RisVector& x_fixed,
                               double lambda, double sigma2_1, double sigma2_2,
                               double tol) {
  const CVec h1 = effective_channel(cs, 1, x_fixed.x);
  const CVec h2 = effective_channel(cs, 2, x_fixed.x);
  const BeamSearchResult bs =
      wsinr_beam_search(h1, h2, lambda, sigma2_1, sigma2_2, tol);
  return from_search("fixed_wsinr", cs, x_fixed, bs, sigma2_1, sigma2_2);
}

BaselineResult fixed_ris_sumrate(const ChannelSet& cs, const RisVector& x_fixed,
                                 double p_t, double sigma2_1, double sigma2_2,
                                 double tol) {
  const CVec h1 = effective_channel(cs, 1, x_fixed.x);
  const CVec h2 = effective_channel(cs, 2, x_fixed.x);
  const BeamSearchResult bs =
      sumrate_beam_search(h1, h2, p_t, sigma2_1, sigma2_2, tol);
  return from_search("fixed_sumrate", cs, x_fixed, bs, sigma2_1, sigma2_2);
}

BaselineResult wmmse_no_ris(const ChannelSet& cs, double p_t, double sigma2_1,
                            double sigma2_2, int iters) {
  BaselineResult out;
  out.scheme = "no_ris_wmmse";
  out.ris = surface_off(cs.n());
  out.prec = wmmse_beamforming(cs.d1, cs.d2, p_t, sigma2_1, sigma2_2, iters);
  out.qos = evaluate(cs, out.prec, out.ris, sigma2_1, sigma2_2);
  out.objective = out.qos.sum_rate;
  out.iterations = iters;
  return out;
}

}  // namespace risopt
