#pragma once

#include <iosfwd>
#include <optional>

#include "risopt/channel.hpp"
#include "risopt/linalg.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

/// Complex quadratic program with one complex (two real) equality:
///   minimize  f(x) = x^H A1 x + x^H a1 + a1^H x
///   subject to g(x) = x^H A2 x + x^H a2 + a3^H x + a4 = 0.
/// A1 is Hermitian; A2 is general, so g is complex-valued.
struct Qcqp1 {
  CMat A1;
  CVec a1;
  CMat A2;
  CVec a2, a3;
  cxd a4{0.0, 0.0};

  int n() const { return static_cast<int>(a1.size()); }
  double f(const CVec& x) const;
  cxd g(const CVec& x) const;
  /// Gradient of f in the 2*d/dconj(x) convention: 2 (A1 x + a1).
  CVec f_gradient(const CVec& x) const;
  void check_dims() const;
};

enum class QcqpStatus {
  GlobalSdr,    ///< solved to global optimality through the lifted relaxation
  EscapeStep,   ///< descent step on an unbounded instance
  Infeasible,   ///< the relaxation is provably infeasible
};

/// Multipliers of the lifted problem: nu1/nu2 pair with Re g / Im g, y3 is
/// the homogenization multiplier (equals the dual objective value).
struct QcqpDual {
  double nu1 = 0, nu2 = 0, y3 = 0;
};

struct QcqpSolution {
  CVec x;
  double objective = 0;
  double g_residual = 0;      ///< |g(x)| at the returned point
  double duality_gap = 0;     ///< f(x) - dual value (0 up to tolerances)
  QcqpStatus status = QcqpStatus::GlobalSdr;
  std::optional<QcqpDual> dual;
};

/// x-subproblem of the weighted-channel-gain ADMM:
///   A1 = -lambda F1^H F1 - (1-lambda) F2^H F2 + (rho/2) I
///   a1 = -lambda F1^H d1 - (1-lambda) F2^H d2 - (rho/2) y + mu/2
/// with the shared orthogonality data A2 = F1^H F2, a2 = F1^H d2,
/// a3 = F2^H d1, a4 = d1^H d2.
Qcqp1 assemble_wsinr_x(const ChannelSet& cs, double lambda, double rho,
                       const CVec& mu, const CVec& y);

/// x-subproblem of the sum-rate ADMM (equal noise sigma2):
///   A1 = -P_T (P_T ||z||^2 + 2 sigma2) F1^H F1 + (rho1/2) I
///        + (rho2/2) F2^H F2
///   a1 = -P_T (P_T ||z||^2 + 2 sigma2) F1^H d1 + mu1/2 + F2^H mu2 / 2
///        - (rho1/2) y + (rho2/2) F2^H (d2 - z)
Qcqp1 assemble_sumrate_x(const ChannelSet& cs, double p_t, double sigma2,
                         const CVec& z, double rho1, double rho2,
                         const CVec& mu1, const CVec& mu2, const CVec& y);

/// Smallest eigenvalue of A1; f is bounded below on the constraint set
/// whenever this is positive.
double boundedness_margin(const Qcqp1& q);

/// Globally solve a bounded instance (boundedness_margin > 0) through the
/// lifted two-multiplier dual; the relaxation is tight here, so the
/// returned point is a global minimizer up to the tolerances.
/// tol scales the feasibility target |g| <= tol * (1 + |a4|).
QcqpSolution solve_bounded(const Qcqp1& q, double tol = 1e-10);

/// From a feasible x_k of a (possibly) unbounded instance, construct a step
/// s with g identically zero along the whole ray x_k + alpha s (alpha >= 0)
/// and f(x_k + s) < f(x_k). Throws SolverError("NoDecrease") if no
/// safeguarded variant decreases f.
QcqpSolution escape_step(const Qcqp1& q, const CVec& x_k);

/// Deterministic strictly feasible point of the orthogonality constraint
/// with ||x||_inf <= 1, built from a nullspace direction. Requires, for
/// j = 2 (falling back to j = 1), rank(F_j) = m and ||F_j^+ d_j||_inf <= 1;
/// throws SolverError("ConditionsUnmet") otherwise.
RisVector feasible_init(const ChannelSet& cs);

struct RankCheck {
  int rank = 0;   ///< numerical rank of the escape system matrix
  int bound = 0;  ///< structural bound 2m + 2
};

/// Rank of the (2n+2) x 2n real system whose nullspace the escape step
/// searches, evaluated at x_k, against the structural bound 2m + 2.
RankCheck rank_deficiency_check(const Qcqp1& q, const CVec& x_k, int m);

/// Text dump (rows of "re,im" pairs) for bug reports.
void dump_qcqp(const Qcqp1& q, std::ostream& os);

}  // namespace risopt
