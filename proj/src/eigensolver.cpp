#include "fermispec/eigensolver.hpp"

#include <stdexcept>

namespace fermispec {

SymmetricMatrix::SymmetricMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    throw std::invalid_argument("SymmetricMatrix: not square");
  if (m_.size() > 0) {
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    const double defect = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
    if (defect > 1e-13 * scale)
      throw std::invalid_argument("SymmetricMatrix: symmetry defect too large");
    m_ = 0.5 * (m_ + m_.transpose().eval());
  }
}

EigenDecomposition symmetric_eigs(const SymmetricMatrix& a, bool want_vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.compute(a.matrix(), want_vectors ? Eigen::ComputeEigenvectors
                                      : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("symmetric_eigs: QL iteration did not converge");
  EigenDecomposition out;
  out.values = es.eigenvalues();
  if (want_vectors) out.vectors = es.eigenvectors();
  return out;
}

Eigen::VectorXd tridiag_eigs(const Eigen::VectorXd& diag,
                             const Eigen::VectorXd& offdiag) {
  if (diag.size() == 0) return Eigen::VectorXd();
  if (offdiag.size() != diag.size() - 1)
    throw std::invalid_argument("tridiag_eigs: offdiag must have n-1 entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, offdiag, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("tridiag_eigs: QL iteration did not converge");
  return es.eigenvalues();
}

}  // namespace fermispec
