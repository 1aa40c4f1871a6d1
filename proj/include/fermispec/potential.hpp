#ifndef FERMISPEC_POTENTIAL_HPP
#define FERMISPEC_POTENTIAL_HPP

#include <Eigen/Dense>
#include <map>
#include <string>

namespace fermispec {

/// Sparse real bivariate polynomial, coefficients indexed by the exponents
/// (i, j) of x1^i x2^j.
class Poly2 {
 public:
  using ExpMap = std::map<std::array<int, 2>, double>;

  Poly2() = default;

  void add(int i, int j, double c);
  double coeff(int i, int j) const;
  const ExpMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int total_degree() const;

  double eval(const Eigen::Vector2d& x) const;
  Eigen::Vector2d gradient(const Eigen::Vector2d& x) const;
  Eigen::Matrix2d hessian(const Eigen::Vector2d& x) const;
  /// Third partial d^3 / dx1^i dx2^j with i + j = 3, evaluated at x.
  double third_partial(int i, const Eigen::Vector2d& x) const;

  Poly2 derivative(int var) const;
  Poly2 operator*(const Poly2& other) const;
  Poly2& operator+=(const Poly2& other);
  Poly2 scaled(double s) const;

  /// Substitute x = origin + frame * y; returns the polynomial in y.
  Poly2 affine_substitute(const Eigen::Vector2d& origin,
                          const Eigen::Matrix2d& frame) const;
  /// Substitute x_j = x_j / s_j (diagonal rescaling of the arguments).
  Poly2 arg_scaled(const Eigen::Vector2d& inv_scale) const;
  /// Terms of exact total degree d.
  Poly2 homogeneous_part(int d) const;

 private:
  ExpMap terms_;
};

/// Polynomial potential family V_eps = v0 + eps * v1.
struct PolyPotential {
  Poly2 v0;
  Poly2 v1;
  int max_total_degree = 0;

  double eval(const Eigen::Vector2d& x, double eps) const {
    return v0.eval(x) + eps * v1.eval(x);
  }
  Eigen::Vector2d gradient(const Eigen::Vector2d& x, double eps) const {
    return v0.gradient(x) + eps * v1.gradient(x);
  }
  Eigen::Matrix2d hessian(const Eigen::Vector2d& x, double eps) const {
    return v0.hessian(x) + eps * v1.hessian(x);
  }
};

PolyPotential make_potential(Poly2 v0, Poly2 v1);

/// The model family
///   V_eps = (1/2 + eps) x1^2 + (2 + 2 c eps) x2^2
///           + x1^3 + x1 x2^2 / 2 + gamma x1^2 x2 + x1^4 + x2^4,
/// a confining double-frequency well with near 1:2 resonant harmonic part.
PolyPotential fermi_example_potential(double gamma, double c);

/// Only the quadratic slice of the family above (cubic and quartic terms
/// zeroed); useful for harmonic-exactness checks.
PolyPotential fermi_example_quadratic(double c);

/// Parse the line-oriented `i j : coeff` format with an optional `[eps]`
/// section for v1.  '#' starts a comment.
PolyPotential parse_potential_file(const std::string& text);

std::string serialize_potential(const PolyPotential& p);

}  // namespace fermispec

#endif
