#include <ostream>

#include "risopt/errors.hpp"
#include "risopt/qcqp.hpp"

namespace risopt {

double Qcqp1::f(const CVec& x) const {
  const cxd quad = x.dot(A1 * x);  // x^H A1 x, real for Hermitian A1
  return quad.real() + 2.0 * x.dot(a1).real();
}

cxd Qcqp1::g(const CVec& x) const {
  return x.dot(A2 * x) + x.dot(a2) + a3.dot(x) + a4;
}

CVec Qcqp1::f_gradient(const CVec& x) const { return 2.0 * (A1 * x + a1); }

void Qcqp1::check_dims() const {
  const Eigen::Index n = a1.size();
  if (A1.rows() != n || A1.cols() != n || A2.rows() != n || A2.cols() != n ||
      a2.size() != n || a3.size() != n)
    throw ConfigError("inconsistent subproblem dimensions");
}

namespace {

/// Constraint data shared by both assemblies: g(x) = h1(x)^H h2(x).
void fill_orthogonality(const ChannelSet& cs, Qcqp1& q) {
  q.A2 = cs.F1.adjoint() * cs.F2;
  q.a2 = cs.F1.adjoint() * cs.d2;
  q.a3 = cs.F2.adjoint() * cs.d1;
  q.a4 = cs.d1.dot(cs.d2);
}

}  // namespace

Qcqp1 assemble_wsinr_x(const ChannelSet& cs, double lambda, double rho,
                       const CVec& mu, const CVec& y) {
  if (lambda < 0 || lambda > 1) throw ConfigError("lambda must be in [0,1]");
  if (rho <= 0) throw ConfigError("rho must be > 0");
  const Eigen::Index n = cs.n();
  if (mu.size() != n || y.size() != n)
    throw ConfigError("mu/y must have length n");

  Qcqp1 q;
  q.A1 = -lambda * (cs.F1.adjoint() * cs.F1) -
         (1.0 - lambda) * (cs.F2.adjoint() * cs.F2);
  q.A1.diagonal().array() += rho / 2.0;
  q.a1 = -lambda * (cs.F1.adjoint() * cs.d1) -
         (1.0 - lambda) * (cs.F2.adjoint() * cs.d2) - (rho / 2.0) * y +
         0.5 * mu;
  fill_orthogonality(cs, q);
  return q;
}

Qcqp1 assemble_sumrate_x(const ChannelSet& cs, double p_t, double sigma2,
                         const CVec& z, double rho1, double rho2,
                         const CVec& mu1, const CVec& mu2, const CVec& y) {
  if (p_t <= 0 || sigma2 <= 0) throw ConfigError("p_t/sigma2 must be > 0");
  if (rho1 <= 0 || rho2 <= 0) throw ConfigError("penalties must be > 0");
  const Eigen::Index n = cs.n(), m = cs.m();
  if (mu1.size() != n || y.size() != n)
    throw ConfigError("mu1/y must have length n");
  if (mu2.size() != m || z.size() != m)
    throw ConfigError("mu2/z must have length m");

  const double c = p_t * (p_t * z.squaredNorm() + 2.0 * sigma2);
  Qcqp1 q;
  q.A1 = -c * (cs.F1.adjoint() * cs.F1) +
         (rho2 / 2.0) * (cs.F2.adjoint() * cs.F2);
  q.A1.diagonal().array() += rho1 / 2.0;
  q.a1 = -c * (cs.F1.adjoint() * cs.d1) + 0.5 * mu1 +
         0.5 * (cs.F2.adjoint() * mu2) - (rho1 / 2.0) * y +
         (rho2 / 2.0) * (cs.F2.adjoint() * (cs.d2 - z));
  fill_orthogonality(cs, q);
  return q;
}

double boundedness_margin(const Qcqp1& q) { return min_eigenvalue(q.A1); }

void dump_qcqp(const Qcqp1& q, std::ostream& os) {
  const auto put_mat = [&os](const char* name, const CMat& a) {
    os << "# " << name << " " << a.rows() << "x" << a.cols() << "\n";
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        if (j) os << " ";
        os << a(i, j).real() << "," << a(i, j).imag();
      }
      os << "\n";
    }
  };
  os.precision(17);
  put_mat("A1", q.A1);
  put_mat("a1", q.a1);
  put_mat("A2", q.A2);
  put_mat("a2", q.a2);
  put_mat("a3", q.a3);
  os << "# a4\n" << q.a4.real() << "," << q.a4.imag() << "\n";
}

}  // namespace risopt
