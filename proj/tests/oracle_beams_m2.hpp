#pragma once

// Exact 4-parameter reduction of the two-user M = 2 beam design used as an
// oracle for the fixed-surface searches. Write w_j = a_j u1 + b_j e^{i p_j}
// u2 in the Gram-Schmidt basis of (h1, h2). Only |h1^H w_j| = ||h1|| a_j and
// |h2^H w_j| enter the SINRs, and the optimal phases align w2's two
// components with h2 while anti-aligning w1's, so the objective depends on
// (a1, b1, a2, b2) >= 0 alone. A refining 4-d grid then gives the optimum
// to grid accuracy.

#include <algorithm>
#include <cmath>

#include "risopt/linalg.hpp"

namespace risopt::testing {

struct ReducedBeams {
  double nh1, c1, c2;  // ||h1||, |u1^H h2|, ||h2 - u1 (u1^H h2)||
};

inline ReducedBeams reduce_beams(const CVec& h1, const CVec& h2) {
  const CVec u1 = h1 / h1.norm();
  const CVec v = h2 - u1 * (u1.dot(h2));
  return {h1.norm(), std::abs(u1.dot(h2)), v.norm()};
}

inline double beams_wsinr(const ReducedBeams& r, double lam, double s1,
                          double s2, double a1, double b1, double a2,
                          double b2) {
  const double sig1 = r.nh1 * a1, int1 = r.nh1 * a2;
  const double sig2 = r.c1 * a2 + r.c2 * b2;
  const double int2 = std::abs(r.c1 * a1 - r.c2 * b1);
  const double sinr1 = sig1 * sig1 / (int1 * int1 + s1);
  const double sinr2 = sig2 * sig2 / (int2 * int2 + s2);
  return lam * sinr1 + (1 - lam) * sinr2;
}

inline double beams_sumrate(const ReducedBeams& r, double s1, double s2,
                            double a1, double b1, double a2, double b2) {
  const double sig1 = r.nh1 * a1, int1 = r.nh1 * a2;
  const double sig2 = r.c1 * a2 + r.c2 * b2;
  const double int2 = std::abs(r.c1 * a1 - r.c2 * b1);
  const double sinr1 = sig1 * sig1 / (int1 * int1 + s1);
  const double sinr2 = sig2 * sig2 / (int2 * int2 + s2);
  return std::log2(1 + sinr1) + std::log2(1 + sinr2);
}

/// Refining grid over polar pairs (r_j, w_j) with a_j = r_j cos w_j,
/// b_j = r_j sin w_j. per_beam => r_j <= 1 each, else r_1^2 + r_2^2 <= p_t.
template <class Obj>
double beam_grid_oracle(const Obj& obj, bool per_beam, double p_t) {
  const double rmax = per_beam ? 1.0 : std::sqrt(p_t);
  double lo1 = 0, hi1 = rmax, lo2 = 0, hi2 = rmax;
  double wl1 = 0, wh1 = M_PI / 2, wl2 = 0, wh2 = M_PI / 2;
  double best = -1;
  for (int pass = 0; pass < 3; ++pass) {
    const int g = 24;
    double b_r1 = 0, b_w1 = 0, b_r2 = 0, b_w2 = 0;
    best = -1;
    for (int i1 = 0; i1 <= g; ++i1)
      for (int j1 = 0; j1 <= g; ++j1)
        for (int i2 = 0; i2 <= g; ++i2)
          for (int j2 = 0; j2 <= g; ++j2) {
            const double r1 = lo1 + (hi1 - lo1) * i1 / g;
            const double w1 = wl1 + (wh1 - wl1) * j1 / g;
            const double r2 = lo2 + (hi2 - lo2) * i2 / g;
            const double w2 = wl2 + (wh2 - wl2) * j2 / g;
            if (!per_beam && r1 * r1 + r2 * r2 > p_t) continue;
            const double f = obj(r1 * std::cos(w1), r1 * std::sin(w1),
                                 r2 * std::cos(w2), r2 * std::sin(w2));
            if (f > best) {
              best = f;
              b_r1 = r1;
              b_w1 = w1;
              b_r2 = r2;
              b_w2 = w2;
            }
          }
    auto shrink = [&](double c, double lo, double hi, double fl, double fh,
                      double* nlo, double* nhi) {
      const double w = (hi - lo) * (2.0 / g);
      *nlo = std::max(fl, c - w);
      *nhi = std::min(fh, c + w);
    };
    shrink(b_r1, lo1, hi1, 0, rmax, &lo1, &hi1);
    shrink(b_w1, wl1, wh1, 0, M_PI / 2, &wl1, &wh1);
    shrink(b_r2, lo2, hi2, 0, rmax, &lo2, &hi2);
    shrink(b_w2, wl2, wh2, 0, M_PI / 2, &wl2, &wh2);
  }
  return best;
}

}  // namespace risopt::testing
