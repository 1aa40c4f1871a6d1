#ifndef FERMISPEC_EIGENSOLVER_HPP
#define FERMISPEC_EIGENSOLVER_HPP

#include <Eigen/Dense>
#include <optional>

namespace fermispec {

/// Dense real symmetric matrix; the constructor validates symmetry to
/// 1e-13 of the matrix scale and symmetrizes the stored copy.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(Eigen::MatrixXd m);

  int order() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

struct EigenDecomposition {
  Eigen::VectorXd values;                  ///< ascending
  std::optional<Eigen::MatrixXd> vectors;  ///< orthonormal columns if requested
};

/// Eigenvalues (and optionally vectors) of a dense symmetric matrix via
/// Householder tridiagonalization + implicit-shift QL iteration.  Throws on
/// iteration failure (pathological input).
EigenDecomposition symmetric_eigs(const SymmetricMatrix& a, bool want_vectors);

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal
/// and off-diagonal, ascending.  offdiag must have diag.size() - 1 entries.
Eigen::VectorXd tridiag_eigs(const Eigen::VectorXd& diag,
                             const Eigen::VectorXd& offdiag);

}  // namespace fermispec

#endif
