#include <cmath>

#include "risopt/channel.hpp"
#include "risopt/errors.hpp"
#include "risopt/qcqp.hpp"

namespace risopt {
namespace {

/// Orthogonality-feasible x built from user j's side: pick y with
/// F_j y orthogonal to the other user's direct path and to every column of
/// the other F, then cancel d_j with the minimum-norm preimage. The result
/// satisfies h_1^H h_2 = 0 exactly and ||x||_inf <= 1.
bool try_side(const CMat& F_own, const CVec& d_own, const CMat& F_oth,
              const CVec& d_oth, CVec& out) {
  const int m = static_cast<int>(F_own.rows());
  const int n = static_cast<int>(F_own.cols());
  if (n <= m) return false;

  Eigen::JacobiSVD<CMat> fsvd(F_own);
  const RVec fsv = fsvd.singularValues();
  if (fsv(fsv.size() - 1) <= 1e-9 * fsv(0)) return false;  // rank < m

  const CVec pre = F_own.completeOrthogonalDecomposition().solve(d_own);
  const double amp = 1.0 - pre.cwiseAbs().maxCoeff();
  if (amp < 0) return false;

  CMat A(n + 1, n);
  A.topRows(n) = F_oth.adjoint() * F_own;
  A.bottomRows(1) = d_oth.adjoint() * F_own;
  Eigen::JacobiSVD<CMat> asvd(A, Eigen::ComputeFullV);
  const RVec asv = asvd.singularValues();
  if (asv(asv.size() - 1) > 1e-9 * asv(0)) return false;  // no nullspace
  const CVec y = asvd.matrixV().col(n - 1);

  out = amp * y / y.norm() - pre;
  return true;
}

}  // namespace

RisVector feasible_init(const ChannelSet& cs) {
  CVec x;
  if (try_side(cs.F2, cs.d2, cs.F1, cs.d1, x) ||
      try_side(cs.F1, cs.d1, cs.F2, cs.d2, x))
    return RisVector{x};
  throw SolverError("ConditionsUnmet",
                    "feasible_init needs one effective channel matrix with "
                    "full row rank and a unit-disc minimum-norm preimage");
}

}  // namespace risopt
