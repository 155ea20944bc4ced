#include "risopt/system_model.hpp"

#include <cmath>

#include "risopt/errors.hpp"

namespace risopt {

bool RisVector::within_unit_disc(double tol) const {
  return modulus_violation() <= tol;
}

double RisVector::modulus_violation() const {
  double v = 0.0;
  for (Eigen::Index l = 0; l < x.size(); ++l)
    v = std::max(v, std::abs(x(l)) - 1.0);
  return std::max(v, 0.0);
}

RisVector RisVector::clipped() const {
  RisVector out{x};
  for (Eigen::Index l = 0; l < out.x.size(); ++l) {
    const double a = std::abs(out.x(l));
    if (a > 1.0) out.x(l) /= a;
  }
  return out;
}

QosReport evaluate(const ChannelSet& cs, const Precoders& prec,
                   const RisVector& ris, double sigma2_1, double sigma2_2) {
  if (sigma2_1 <= 0 || sigma2_2 <= 0) throw ConfigError("noise must be > 0");
  const CVec h1 = effective_channel(cs, 1, ris.x);
  const CVec h2 = effective_channel(cs, 2, ris.x);

  QosReport q;
  const double s11 = std::norm(h1.dot(prec.w1));
  const double s22 = std::norm(h2.dot(prec.w2));
  q.interference1 = std::norm(h1.dot(prec.w2));
  q.interference2 = std::norm(h2.dot(prec.w1));
  q.sinr1 = s11 / (q.interference1 + sigma2_1);
  q.sinr2 = s22 / (q.interference2 + sigma2_2);
  q.rate1 = std::log2(1.0 + q.sinr1);
  q.rate2 = std::log2(1.0 + q.sinr2);
  q.sum_rate = q.rate1 + q.rate2;

  const double n1 = h1.norm(), n2 = h2.norm();
  q.orthogonality_residual =
      (n1 > 0 && n2 > 0) ? std::abs(h1.dot(h2)) / (n1 * n2) : 0.0;
  return q;
}

Precoders mrt_precoders(const ChannelSet& cs, const RisVector& ris,
                        double omega1, double omega2, double p_t) {
  if (omega1 < 0 || omega2 < 0 ||
      omega1 * omega1 + omega2 * omega2 > 1.0 + 1e-12)
    throw ConfigError("power split must satisfy omega1^2 + omega2^2 <= 1");
  const CVec h1 = effective_channel(cs, 1, ris.x);
  const CVec h2 = effective_channel(cs, 2, ris.x);
  const double n1 = h1.norm(), n2 = h2.norm();
  if ((omega1 > 0 && n1 == 0) || (omega2 > 0 && n2 == 0))
    throw SolverError("DegenerateChannel",
                      "effective channel vanishes under matched filtering");
  const double sq = std::sqrt(p_t);
  Precoders p;
  p.w1 = n1 > 0 ? CVec(omega1 * sq / n1 * h1) : CVec(CVec::Zero(cs.m()));
  p.w2 = n2 > 0 ? CVec(omega2 * sq / n2 * h2) : CVec(CVec::Zero(cs.m()));
  return p;
}

double sinr_upper_bound(const ChannelSet& cs, const RisVector& ris, int user,
                        double omega, double p_t, double sigma2) {
  const CVec h = effective_channel(cs, user, ris.x);
  return omega * omega * p_t * h.squaredNorm() / sigma2;
}

double wsinr_surrogate_objective(const ChannelSet& cs, const RisVector& ris,
                                 double lambda) {
  if (lambda < 0 || lambda > 1) throw ConfigError("lambda must be in [0,1]");
  const CVec h1 = effective_channel(cs, 1, ris.x);
  const CVec h2 = effective_channel(cs, 2, ris.x);
  return lambda * h1.squaredNorm() + (1.0 - lambda) * h2.squaredNorm();
}

double wsinr_reported_objective(double surrogate, double p_t, double sigma2) {
  return p_t / (2.0 * sigma2) * surrogate;
}

}  // namespace risopt
