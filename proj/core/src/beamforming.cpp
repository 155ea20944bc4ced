#include <cmath>
#include <limits>

#include "risopt/beamforming.hpp"
#include "risopt/errors.hpp"

namespace risopt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Decomposition of h_own against h_oth's direction: h_own = conj(p) u1 +
/// q u2 with u1 = h_oth/||h_oth||, q >= 0.
struct SpanSplit {
  CVec u1, u2;
  cxd p;       // h_own^H u1
  double q;    // h_own^H u2, real nonnegative by construction
};

SpanSplit split_against(const CVec& h_own, const CVec& h_oth) {
  SpanSplit s;
  const double on = h_oth.norm();
  s.u1 = on > 0 ? CVec(h_oth / on) : CVec(CVec::Zero(h_oth.size()));
  s.p = on > 0 ? h_own.dot(s.u1) : cxd(0, 0);
  CVec r = h_own - s.u1 * std::conj(s.p);
  s.q = r.norm();
  s.u2 = s.q > 0 ? CVec(r / s.q) : CVec(CVec::Zero(h_own.size()));
  return s;
}

double own_norm(const SpanSplit& s) {
  return std::sqrt(std::norm(s.p) + s.q * s.q);
}

double pick_amplitude(const SpanSplit& s, double oth_norm, double leak_cap) {
  const double total = own_norm(s);
  if (total <= 0) return 0;
  const double a_unc = std::abs(s.p) / total;
  if (!(leak_cap < kInf) || oth_norm <= 0) return a_unc;
  const double a_cap = std::sqrt(std::max(0.0, leak_cap)) / oth_norm;
  return std::min(a_unc, a_cap);
}

}  // namespace

double leak_capped_gain(const CVec& h_own, const CVec& h_oth,
                        double leak_cap) {
  if (leak_cap < 0) return 0;
  const SpanSplit s = split_against(h_own, h_oth);
  const double a = pick_amplitude(s, h_oth.norm(), leak_cap);
  const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
  const double amp = a * std::abs(s.p) + b * s.q;
  return amp * amp;
}

CVec leak_capped_beam(const CVec& h_own, const CVec& h_oth, double leak_cap) {
  const SpanSplit s = split_against(h_own, h_oth);
  if (own_norm(s) <= 0 || leak_cap < 0) return CVec::Zero(h_own.size());
  const double a = pick_amplitude(s, h_oth.norm(), leak_cap);
  const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
  const cxd phase =
      std::abs(s.p) > 0 ? cxd(std::conj(s.p) / std::abs(s.p)) : cxd(1, 0);
  return a * phase * s.u1 + b * s.u2;
}

PowerMinResult min_power_beamforming(const CVec& h1, const CVec& h2, double t1,
                                     double t2, double sigma2_1,
                                     double sigma2_2) {
  const Eigen::Index m = h1.size();
  PowerMinResult res;
  res.prec.w1 = CVec::Zero(m);
  res.prec.w2 = CVec::Zero(m);

  const CVec v1 = h1 / std::sqrt(sigma2_1);
  const CVec v2 = h2 / std::sqrt(sigma2_2);
  const double n1 = v1.squaredNorm(), n2 = v2.squaredNorm();

  if (t1 <= 0 && t2 <= 0) {
    res.feasible = true;
    return res;
  }
  if (t2 <= 0) {
    if (n1 <= 0) return res;
    res.prec.w1 = std::sqrt(t1 / n1) * v1.normalized();
    res.power = t1 / n1;
    res.feasible = true;
    return res;
  }
  if (t1 <= 0) {
    if (n2 <= 0) return res;
    res.prec.w2 = std::sqrt(t2 / n2) * v2.normalized();
    res.power = t2 / n2;
    res.feasible = true;
    return res;
  }
  if (n1 <= 0 || n2 <= 0) return res;

  // Uplink fixed point: monotone from zero, diverges iff infeasible.
  const CMat I = CMat::Identity(m, m);
  double q1 = 0, q2 = 0;
  const double q_ceiling = 1e13 * (t1 / n1 + t2 / n2 + 1.0);
  CMat S1inv, S2inv;
  for (int it = 0; it < 2000; ++it) {
    S1inv = (I + q2 * v2 * v2.adjoint()).llt().solve(I);
    S2inv = (I + q1 * v1 * v1.adjoint()).llt().solve(I);
    const double q1n = t1 / (v1.dot(S1inv * v1)).real();
    const double q2n = t2 / (v2.dot(S2inv * v2)).real();
    const double move = std::abs(q1n - q1) + std::abs(q2n - q2);
    q1 = q1n;
    q2 = q2n;
    if (q1 + q2 > q_ceiling) return res;  // infeasible targets
    if (move <= 1e-14 * (q1 + q2)) break;
  }

  // Dual downlink beams and the power pair meeting the targets exactly.
  S1inv = (I + q2 * v2 * v2.adjoint()).llt().solve(I);
  S2inv = (I + q1 * v1 * v1.adjoint()).llt().solve(I);
  const CVec b1 = (S1inv * v1).normalized();
  const CVec b2 = (S2inv * v2).normalized();
  const double g11 = std::norm(v1.dot(b1)), g12 = std::norm(v1.dot(b2));
  const double g21 = std::norm(v2.dot(b1)), g22 = std::norm(v2.dot(b2));
  Eigen::Matrix2d A;
  A << g11, -t1 * g12, -t2 * g21, g22;
  const Eigen::Vector2d p = A.colPivHouseholderQr().solve(Eigen::Vector2d(t1, t2));
  if (!(p(0) >= 0) || !(p(1) >= 0) || !p.allFinite()) return res;

  res.prec.w1 = std::sqrt(p(0)) * b1;
  res.prec.w2 = std::sqrt(p(1)) * b2;
  res.power = p(0) + p(1);
  res.feasible = true;
  return res;
}

namespace {

/// Feasibility of the SINR pair (t1, t2) under per-beam unit power: sweep
/// beam 1's leakage budget and check user 2's surplus; exact up to the
/// sweep resolution since both inner maximizations are closed-form.
struct PairProbe {
  double margin = -kInf;  ///< best surplus found (>= 0 means feasible)
  double leak1 = 0;       ///< beam-1 leakage budget attaining it
};

PairProbe probe_pair(const CVec& h1, const CVec& h2, double t1, double t2,
                     double sigma2_1, double sigma2_2) {
  PairProbe best;
  const double leak_max = h2.squaredNorm();
  const auto eval = [&](double l1) {
    double cap2 = kInf;
    if (t1 > 0) {
      const double need = leak_capped_gain(h1, h2, l1) / t1 - sigma2_1;
      if (need < 0) return;  // user 1 unreachable at this leakage budget
      cap2 = need;
    }
    const double surplus =
        leak_capped_gain(h2, h1, cap2) - t2 * (l1 + sigma2_2);
    if (surplus > best.margin) best = {surplus, l1};
  };
  const int grid = 64;
  for (int i = 0; i <= grid; ++i) eval(leak_max * i / grid);
  double centre = best.leak1, step = leak_max / grid;
  for (int refine = 0; refine < 2; ++refine) {
    for (int i = -8; i <= 8; ++i) {
      const double l1 = centre + step * i / 8.0;
      if (l1 >= 0 && l1 <= leak_max) eval(l1);
    }
    centre = best.leak1;
    step /= 8.0;
  }
  return best;
}

struct SplitProbe {
  bool feasible = false;
  double t1 = 0, t2 = 0, leak1 = 0;
};

/// Does some split lambda t1 + (1 - lambda) t2 = gamma admit beams?
SplitProbe probe_wsinr_level(const CVec& h1, const CVec& h2, double lambda,
                             double gamma, double s1, double s2) {
  SplitProbe out;
  const auto consider = [&](double t1) {
    if (out.feasible) return;
    const double t2 = lambda < 1 ? (gamma - lambda * t1) / (1.0 - lambda) : 0.0;
    if (t2 < 0) return;
    const PairProbe pr = probe_pair(h1, h2, t1, t2, s1, s2);
    if (pr.margin >= 0) out = {true, t1, t2, pr.leak1};
  };
  if (lambda >= 1.0) {
    consider(gamma);
    return out;
  }
  if (lambda <= 0.0) {
    consider(0.0);
    return out;
  }
  const double t1_max = gamma / lambda;
  const int grid = 64;
  for (int i = 0; i <= grid && !out.feasible; ++i)
    consider(t1_max * i / grid);
  // A coarse miss can clip a narrow feasible window; retry at finer pitch.
  for (int i = 0; i <= 4 * grid && !out.feasible; ++i)
    consider(t1_max * i / (4 * grid));
  return out;
}

}  // namespace

BeamSearchResult wsinr_beam_search(const CVec& h1, const CVec& h2,
                                   double lambda, double sigma2_1,
                                   double sigma2_2, double tol) {
  if (lambda < 0 || lambda > 1)
    throw ConfigError("wsinr_beam_search: lambda must lie in [0, 1]");
  const Eigen::Index m = h1.size();
  BeamSearchResult res;
  res.prec.w1 = CVec::Zero(m);
  res.prec.w2 = CVec::Zero(m);

  const double cap = lambda * h1.squaredNorm() / sigma2_1 +
                     (1.0 - lambda) * h2.squaredNorm() / sigma2_2;
  if (cap <= 0) return res;

  double lo = 0, hi = cap;
  SplitProbe best = probe_wsinr_level(h1, h2, lambda, cap, sigma2_1, sigma2_2);
  if (best.feasible) {
    lo = cap;
  } else {
    best = probe_wsinr_level(h1, h2, lambda, 0.0, sigma2_1, sigma2_2);
    for (int it = 0; it < 40 && hi - lo > tol * (1.0 + hi); ++it) {
      ++res.iterations;
      const double mid = 0.5 * (lo + hi);
      const SplitProbe pr =
          probe_wsinr_level(h1, h2, lambda, mid, sigma2_1, sigma2_2);
      if (pr.feasible) {
        lo = mid;
        best = pr;
      } else {
        hi = mid;
      }
    }
  }
  res.lo = lo;
  res.hi = hi;
  if (!best.feasible) return res;

  res.prec.w1 = leak_capped_beam(h1, h2, best.leak1);
  const double cap2 =
      best.t1 > 0
          ? std::max(0.0, std::norm(h1.dot(res.prec.w1)) / best.t1 - sigma2_1)
          : kInf;
  res.prec.w2 = leak_capped_beam(h2, h1, cap2);
  if (lambda >= 1.0) res.prec.w2.setZero();
  if (lambda <= 0.0) res.prec.w1.setZero();

  const double i1 = std::norm(h1.dot(res.prec.w2));
  const double i2 = std::norm(h2.dot(res.prec.w1));
  const double sinr1 = std::norm(h1.dot(res.prec.w1)) / (i1 + sigma2_1);
  const double sinr2 = std::norm(h2.dot(res.prec.w2)) / (i2 + sigma2_2);
  res.objective = lambda * sinr1 + (1.0 - lambda) * sinr2;
  return res;
}

BeamSearchResult sumrate_beam_search(const CVec& h1, const CVec& h2,
                                     double p_t, double sigma2_1,
                                     double sigma2_2, double tol) {
  const Eigen::Index m = h1.size();
  BeamSearchResult res;
  res.prec.w1 = CVec::Zero(m);
  res.prec.w2 = CVec::Zero(m);

  const double cap = std::log2(1.0 + p_t * h1.squaredNorm() / sigma2_1) +
                     std::log2(1.0 + p_t * h2.squaredNorm() / sigma2_2);
  if (cap <= 0) return res;

  struct RateProbe {
    bool feasible = false;
    PowerMinResult pm;
  };
  const auto probe_rate = [&](double r) {
    RateProbe out;
    const int grid = 64;
    double best_r1 = 0, best_margin = -kInf;
    for (int pass = 0; pass < 3; ++pass) {
      const int pts = pass == 0 ? grid : 16;
      const double centre = pass == 0 ? r / 2 : best_r1;
      const double halfspan = pass == 0 ? r / 2 : r / (grid << (3 * pass - 2));
      for (int i = -pts / 2; i <= pts / 2; ++i) {
        const double r1 = centre + halfspan * 2.0 * i / pts;
        if (r1 < 0 || r1 > r) continue;
        const double t1 = std::exp2(r1) - 1.0;
        const double t2 = std::exp2(r - r1) - 1.0;
        const PowerMinResult pm =
            min_power_beamforming(h1, h2, t1, t2, sigma2_1, sigma2_2);
        const double margin = pm.feasible ? p_t - pm.power : -kInf;
        if (margin > best_margin) {
          best_margin = margin;
          best_r1 = r1;
          if (margin >= 0) out = {true, pm};
        }
      }
      if (out.feasible) break;
    }
    return out;
  };

  double lo = 0, hi = cap;
  RateProbe best = probe_rate(cap);
  if (best.feasible) {
    lo = cap;
  } else {
    best = probe_rate(0.0);
    for (int it = 0; it < 40 && hi - lo > tol * (1.0 + hi); ++it) {
      ++res.iterations;
      const double mid = 0.5 * (lo + hi);
      const RateProbe pr = probe_rate(mid);
      if (pr.feasible) {
        lo = mid;
        best = pr;
      } else {
        hi = mid;
      }
    }
  }
  res.lo = lo;
  res.hi = hi;
  if (!best.feasible) return res;

  res.prec = best.pm.prec;
  if (best.pm.power > 0 && best.pm.power < p_t) {
    const double scale = std::sqrt(p_t / best.pm.power);
    res.prec.w1 *= scale;  // spending the leftover budget helps both users
    res.prec.w2 *= scale;
  }
  const double sinr1 = std::norm(h1.dot(res.prec.w1)) /
                       (std::norm(h1.dot(res.prec.w2)) + sigma2_1);
  const double sinr2 = std::norm(h2.dot(res.prec.w2)) /
                       (std::norm(h2.dot(res.prec.w1)) + sigma2_2);
  res.objective = std::log2(1.0 + sinr1) + std::log2(1.0 + sinr2);
  return res;
}

Precoders wmmse_beamforming(const CVec& h1, const CVec& h2, double p_t,
                            double sigma2_1, double sigma2_2, int iters) {
  if (iters < 1) throw ConfigError("wmmse_beamforming: iters must be >= 1");
  const Eigen::Index m = h1.size();
  Precoders w;
  w.w1 = h1.norm() > 0 ? CVec(std::sqrt(p_t / 2) * h1.normalized())
                       : CVec(CVec::Zero(m));
  w.w2 = h2.norm() > 0 ? CVec(std::sqrt(p_t / 2) * h2.normalized())
                       : CVec(CVec::Zero(m));
  if (h1.norm() <= 0 && h2.norm() <= 0) return w;
  if (h1.norm() <= 0) {
    w.w2 = std::sqrt(p_t) * h2.normalized();
    return w;
  }
  if (h2.norm() <= 0) {
    w.w1 = std::sqrt(p_t) * h1.normalized();
    return w;
  }

  const auto rate = [&](const Precoders& p) {
    const double s1 = std::norm(h1.dot(p.w1)) /
                      (std::norm(h1.dot(p.w2)) + sigma2_1);
    const double s2 = std::norm(h2.dot(p.w2)) /
                      (std::norm(h2.dot(p.w1)) + sigma2_2);
    return std::log2(1.0 + s1) + std::log2(1.0 + s2);
  };

  double prev_rate = rate(w);
  const CMat I = CMat::Identity(m, m);
  for (int it = 0; it < iters; ++it) {
    const cxd y1 = h1.dot(w.w1), y2 = h2.dot(w.w2);
    const double d1 = std::norm(y1) + std::norm(h1.dot(w.w2)) + sigma2_1;
    const double d2 = std::norm(y2) + std::norm(h2.dot(w.w1)) + sigma2_2;
    const cxd c1 = y1 / d1, c2 = y2 / d2;
    const double e1 = 1.0 - std::norm(y1) / d1;
    const double e2 = 1.0 - std::norm(y2) / d2;
    const double om1 = 1.0 / e1, om2 = 1.0 / e2;

    const CMat A = om1 * std::norm(c1) * h1 * h1.adjoint() +
                   om2 * std::norm(c2) * h2 * h2.adjoint();
    const CVec b1 = om1 * c1 * h1;
    const CVec b2 = om2 * c2 * h2;
    const auto power_at = [&](double eta) {
      const CMat K = (A + eta * I).llt().solve(I);
      return std::pair<Precoders, double>{
          Precoders{K * b1, K * b2},
          (K * b1).squaredNorm() + (K * b2).squaredNorm()};
    };
    const double eta_floor = 1e-12 * (A.trace().real() / m + 1.0);
    auto cand = power_at(eta_floor);
    if (cand.second > p_t) {
      double eta_hi = eta_floor;
      do {
        eta_hi *= 4.0;
        cand = power_at(eta_hi);
      } while (cand.second > p_t && eta_hi < 1e30);
      double eta_lo = eta_hi / 4.0;
      for (int bs = 0; bs < 80; ++bs) {
        const double eta = 0.5 * (eta_lo + eta_hi);
        cand = power_at(eta);
        if (cand.second > p_t)
          eta_lo = eta;
        else
          eta_hi = eta;
      }
      cand = power_at(eta_hi);
    }
    w = cand.first;
    const double r = rate(w);
    if (std::abs(r - prev_rate) < 1e-8) break;
    prev_rate = r;
  }
  return w;
}

}  // namespace risopt
