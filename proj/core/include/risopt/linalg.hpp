#pragma once

#include <Eigen/Dense>
#include <complex>

namespace risopt {

using cxd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Stack a complex vector as [Re; Im].
inline RVec real_stack(const CVec& v) {
  RVec out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

/// Unstack [Re; Im] back into a complex vector.
inline CVec real_unstack(const RVec& v) {
  const Eigen::Index n = v.size() / 2;
  CVec out(n);
  out.real() = v.head(n);
  out.imag() = v.tail(n);
  return out;
}

/// Real 2n x 2n representation [[Ar, -Ai], [Ai, Ar]] of a complex matrix,
/// chosen so that s^H A s = stack(s)^T rep(A) stack(s) for Hermitian A.
inline RMat real_rep(const CMat& a) {
  const Eigen::Index n = a.rows();
  RMat out(2 * n, 2 * a.cols());
  out.topLeftCorner(n, a.cols()) = a.real();
  out.topRightCorner(n, a.cols()) = -a.imag();
  out.bottomLeftCorner(n, a.cols()) = a.imag();
  out.bottomRightCorner(n, a.cols()) = a.real();
  return out;
}

/// Smallest eigenvalue of a Hermitian matrix.
inline double min_eigenvalue(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Numerical rank with a relative singular value cutoff.
inline int numerical_rank(const RMat& a, double rel_cutoff) {
  Eigen::JacobiSVD<RMat> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cut = rel_cutoff * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

}  // namespace risopt
