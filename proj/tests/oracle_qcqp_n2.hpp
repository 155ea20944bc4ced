#pragma once

// Grid oracle for the n = 2 single-constraint QCQP. For fixed x1 the
// constraint g(x1, x2) = 0 is a complex quadratic in x2 whose real and
// imaginary parts are two real quadrics sharing the (s^2 + t^2) coefficient,
// so their intersection reduces to a line-conic problem with at most two
// roots (plus two degenerate families handled explicitly). Scanning x1 over
// a polar grid bounded by a coercivity radius and recovering x2 exactly from
// the constraint yields a certified global minimum up to grid resolution.

#include <algorithm>
#include <cmath>
#include <vector>

#include "risopt/qcqp.hpp"
#include "risopt/rng.hpp"

namespace risopt::testing {

/// Solutions w of c0 + c1 w + c2 conj(w) + c3 |w|^2 = 0 (the form g takes
/// in any single coordinate with the others held fixed).
inline std::vector<cxd> roots_from_coefficients(cxd c0, cxd c1, cxd c2,
                                                cxd c3) {
  const double aR = c0.real(), aI = c0.imag();
  const double bR = (c1 + c2).real(), bI = (c1 + c2).imag();
  const double cR = c2.imag() - c1.imag(), cI = (c1 - c2).real();
  const double dR = c3.real(), dI = c3.imag();

  std::vector<cxd> roots;
  auto push_root = [&](double s, double t) {
    if (std::isfinite(s) && std::isfinite(t)) roots.emplace_back(s, t);
  };
  const double dscale = std::abs(c3);
  if (dscale < 1e-14) {
    // Both quadrics are lines.
    const double det = bR * cI - bI * cR;
    if (std::abs(det) < 1e-14) return roots;
    push_root((-aR * cI + aI * cR) / det, (-bR * aI + bI * aR) / det);
    return roots;
  }
  // Eliminate the shared quadratic term: al + be s + ga t = 0.
  const double al = dI * aR - dR * aI;
  const double be = dI * bR - dR * bI;
  const double ga = dI * cR - dR * cI;
  // Back-substitute into the quadric with the larger |d|.
  const bool use_re = std::abs(dR) >= std::abs(dI);
  const double a = use_re ? aR : aI, b = use_re ? bR : bI,
               c = use_re ? cR : cI, d = use_re ? dR : dI;
  const double lscale = std::abs(be) + std::abs(ga);
  if (lscale < 1e-12 * (std::abs(al) + dscale)) {
    if (std::abs(al) > 1e-12 * dscale) return roots;  // inconsistent quadrics
    // Proportional quadrics: a circle of solutions; sample it.
    const double s0 = -b / (2 * d), t0 = -c / (2 * d);
    const double r2 = s0 * s0 + t0 * t0 - a / d;
    if (r2 < 0) return roots;
    const double r = std::sqrt(r2);
    for (int k = 0; k < 64; ++k) {
      const double ph = 2 * M_PI * k / 64;
      push_root(s0 + r * std::cos(ph), t0 + r * std::sin(ph));
    }
    return roots;
  }
  if (std::abs(ga) >= std::abs(be)) {
    const double p = -al / ga, m = -be / ga;  // t = p + m s
    const double A = d * (1 + m * m);
    const double B = b + c * m + 2 * d * p * m;
    const double C = a + c * p + d * p * p;
    const double disc = B * B - 4 * A * C;
    if (std::abs(A) < 1e-14) {
      if (std::abs(B) > 1e-14) {
        const double s = -C / B;
        push_root(s, p + m * s);
      }
    } else if (disc >= 0) {
      const double sq = std::sqrt(disc);
      for (double s : {(-B + sq) / (2 * A), (-B - sq) / (2 * A)})
        push_root(s, p + m * s);
    }
  } else {
    const double p = -al / be, m = -ga / be;  // s = p + m t
    const double A = d * (1 + m * m);
    const double B = c + b * m + 2 * d * p * m;
    const double C = a + b * p + d * p * p;
    const double disc = B * B - 4 * A * C;
    if (std::abs(A) < 1e-14) {
      if (std::abs(B) > 1e-14) {
        const double t = -C / B;
        push_root(p + m * t, t);
      }
    } else if (disc >= 0) {
      const double sq = std::sqrt(disc);
      for (double t : {(-B + sq) / (2 * A), (-B - sq) / (2 * A)})
        push_root(p + m * t, t);
    }
  }
  return roots;
}

/// Values of coordinate l solving g = 0 with the other coordinates of x
/// held fixed.
inline std::vector<cxd> coordinate_roots(const Qcqp1& q, const CVec& x,
                                         Eigen::Index l) {
  CVec x0 = x;
  x0(l) = 0;
  const cxd c0 = q.g(x0);
  cxd c1 = std::conj(q.a3(l)), c2 = q.a2(l);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i == l) continue;
    c1 += std::conj(x0(i)) * q.A2(i, l);
    c2 += q.A2(l, i) * x0(i);
  }
  return roots_from_coefficients(c0, c1, c2, q.A2(l, l));
}

/// n = 2 special case: roots in the second coordinate for fixed first.
inline std::vector<cxd> constraint_roots(const Qcqp1& q, cxd x1) {
  CVec x(2);
  x << x1, cxd(0, 0);
  return coordinate_roots(q, x, 1);
}

struct QcqpOracleResult {
  bool found = false;
  double objective = 0;
  CVec x;
};

inline QcqpOracleResult qcqp_grid_oracle(const Qcqp1& q, int grid = 400) {
  // Radius bound from any feasible point: m r^2 - 2 ||a1|| r <= f(x*) <= U.
  const double m = boundedness_margin(q);
  double U = 0;
  bool have_u = false;
  for (int ir = 0; ir < 40 && !have_u; ++ir) {
    for (int ip = 0; ip < 40 && !have_u; ++ip) {
      const cxd x1 = std::polar(ir * 0.1, 2 * M_PI * ip / 40);
      for (const cxd& x2 : constraint_roots(q, x1)) {
        CVec x(2);
        x << x1, x2;
        if (std::abs(q.g(x)) > 1e-7) continue;
        U = q.f(x);
        have_u = true;
        break;
      }
    }
  }
  QcqpOracleResult res;
  if (!have_u || m <= 0) return res;
  const double na1 = q.a1.norm();
  const double rmax =
      (na1 + std::sqrt(std::max(0.0, na1 * na1 + m * U))) / m + 0.05;

  struct Cell {
    double f;
    int ir, ip;
  };
  std::vector<Cell> cells;
  auto scan = [&](double r_lo, double r_hi, double p_lo, double p_hi, int g,
                  bool track) {
    for (int ir = 0; ir <= g; ++ir) {
      const double r = r_lo + (r_hi - r_lo) * ir / g;
      if (r < 0) continue;
      for (int ip = 0; ip < g; ++ip) {
        const double ph = p_lo + (p_hi - p_lo) * ip / g;
        const cxd x1 = std::polar(r, ph);
        bool any = false;
        double fbest = 0;
        for (const cxd& x2 : constraint_roots(q, x1)) {
          CVec x(2);
          x << x1, x2;
          if (std::abs(q.g(x)) > 1e-7) continue;
          const double f = q.f(x);
          if (!any || f < fbest) {
            any = true;
            fbest = f;
          }
          if (!res.found || f < res.objective) {
            res.found = true;
            res.objective = f;
            res.x = x;
          }
        }
        if (track && any) cells.push_back({fbest, ir, ip});
      }
    }
  };
  scan(0.0, rmax, 0.0, 2 * M_PI, grid, true);
  // The coarse pass alone carries a few 1e-3 of parameterization error at
  // this radius; refine around the best cells, keeping windows basin-diverse.
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.f < b.f; });
  std::vector<Cell> picked;
  for (const Cell& c : cells) {
    bool close = false;
    for (const Cell& p : picked) {
      int dp = std::abs(c.ip - p.ip);
      dp = std::min(dp, grid - dp);
      if (std::abs(c.ir - p.ir) <= 3 && dp <= 3) {
        close = true;
        break;
      }
    }
    if (!close) picked.push_back(c);
    if (picked.size() >= 8) break;
  }
  const double dr = rmax / grid, dphi = 2 * M_PI / grid;
  for (const Cell& c : picked)
    scan(c.ir * dr - 1.5 * dr, c.ir * dr + 1.5 * dr, c.ip * dphi - 1.5 * dphi,
         c.ip * dphi + 1.5 * dphi, 200, false);
  return res;
}

/// Random coercive instance used by the oracle-agreement checks; the 0.3 I
/// shift keeps boundedness margins comfortably positive.
inline Qcqp1 random_n2_instance(RngStream& rng) {
  Qcqp1 q;
  const CMat R = rng.cgaussian_matrix(2, 2);
  q.A1 = R * R.adjoint() + 0.3 * CMat::Identity(2, 2);
  q.a1 = 0.7 * rng.cgaussian_vector(2);
  q.A2 = rng.cgaussian_matrix(2, 2);
  q.a2 = 0.8 * rng.cgaussian_vector(2);
  q.a3 = 0.8 * rng.cgaussian_vector(2);
  q.a4 = rng.cgaussian();
  return q;
}

}  // namespace risopt::testing
