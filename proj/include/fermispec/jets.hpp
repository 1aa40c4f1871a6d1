#ifndef FERMISPEC_JETS_HPP
#define FERMISPEC_JETS_HPP

#include <Eigen/Dense>
#include <vector>

namespace fermispec {

/// Matrix-valued polynomial in eps, coefficient per power.  All jet
/// arithmetic below silently truncates at the order carried by the operands.
using MatrixJet = std::vector<Eigen::MatrixXd>;

MatrixJet jet_zero(int rows, int cols, int order);
MatrixJet jet_identity(int n, int order);
MatrixJet jet_add(const MatrixJet& a, const MatrixJet& b);
MatrixJet jet_scale(const MatrixJet& a, double s);
MatrixJet jet_mul(const MatrixJet& a, const MatrixJet& b, int order);
MatrixJet jet_transpose(const MatrixJet& a);
MatrixJet jet_truncate(const MatrixJet& a, int order);
Eigen::MatrixXd jet_eval(const MatrixJet& a, double eps);

/// (I + E)^{-1/2} for a symmetric jet with E = O(eps), via the binomial
/// series (finite in jet arithmetic).
MatrixJet jet_inv_sqrt(const MatrixJet& c, int order);

/// Result of order-by-order diagonalization of a symmetric matrix family:
/// u(eps)^T a(eps) u(eps) = diag(lambda(eps)) + O(eps^{order+1}), with
/// u orthogonal at eps = 0 and orthonormal through the jet order.
struct JetDiagonalization {
  MatrixJet u;                 ///< orthogonal conjugation jets
  Eigen::MatrixXd lambdas;     ///< row j = jet of eigenvalue j, ascending at eps=0
  int jet_order = 0;

  Eigen::VectorXd eigenvalues(double eps) const;
  Eigen::MatrixXd frame(double eps) const { return jet_eval(u, eps); }
};

/// Diagonalize a symmetric polynomial family A(eps) through the given jet
/// order.  Distinct eps = 0 eigenvalue clusters are separated with spectral
/// projector jets and orthonormalized cluster bases; a fully degenerate
/// cluster A(eps) = mu I + eps B(eps) recurses on B at one order less.
/// Non-symmetric input is rejected.
JetDiagonalization eps_jet_diagonalize(const MatrixJet& a, int jet_order,
                                       double cluster_tol = 1e-7);

}  // namespace fermispec

#endif
