#ifndef FERMISPEC_MONOMIAL_HPP
#define FERMISPEC_MONOMIAL_HPP

#include <array>
#include <cstdint>

namespace fermispec {

/// Exponent tuple of a formal monomial z^alpha zbar^beta eps^m hbar^l in two
/// degrees of freedom.  The same struct doubles as the exponent record of a
/// position-basis monomial x^alpha xi^beta eps^m hbar^l; which basis is meant
/// is determined by the function producing or consuming it.
///
/// The grading counts eps with weight 1 and hbar with weight 2:
///   degree = |alpha| + |beta| + m + 2l.
struct Monomial {
  std::array<int, 2> alpha{0, 0};
  std::array<int, 2> beta{0, 0};
  int eps = 0;
  int hbar = 0;

  int degree() const {
    return alpha[0] + alpha[1] + beta[0] + beta[1] + eps + 2 * hbar;
  }

  /// Degree in the phase-space variables only (no eps, no hbar).
  int phase_degree() const { return alpha[0] + alpha[1] + beta[0] + beta[1]; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.alpha == b.alpha && a.beta == b.beta && a.eps == b.eps &&
           a.hbar == b.hbar;
  }
};

/// Graded lexicographic order: total degree first, then (alpha, beta, m, l).
/// This is the canonical term order used for serialization, so iteration over
/// a series is reproducible.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    if (a.beta != b.beta) return a.beta < b.beta;
    if (a.eps != b.eps) return a.eps < b.eps;
    return a.hbar < b.hbar;
  }
};

}  // namespace fermispec

#endif
