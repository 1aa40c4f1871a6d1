#ifndef FERMISPEC_SERIES_HPP
#define FERMISPEC_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fermispec/monomial.hpp"

namespace fermispec {

/// Truncated formal series in (z, zbar, eps, hbar) with complex coefficients,
/// stored term-wise in the canonical graded-lex order.  All normal-form
/// algebra lives on this type.  Terms with exactly zero coefficient are never
/// stored, so the empty map is the unique representation of 0.
///
/// eps and hbar are central: no operation ever mixes their exponents into the
/// phase-space exponents, which the Monomial layout enforces structurally.
template <typename Scalar = double>
class FormalSeries {
 public:
  using Complex = std::complex<Scalar>;
  using TermMap = std::map<Monomial, Complex, MonomialLess>;

  FormalSeries() = default;

  static FormalSeries term(const Monomial& mono, Complex coeff) {
    FormalSeries s;
    s.add_term(mono, coeff);
    return s;
  }

  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Complex coeff(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Complex(0) : it->second;
  }

  void add_term(const Monomial& mono, Complex c) {
    if (c == Complex(0)) return;
    auto [it, inserted] = terms_.emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Complex(0)) terms_.erase(it);
    }
  }

  FormalSeries& operator+=(const FormalSeries& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  FormalSeries& operator-=(const FormalSeries& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  FormalSeries& operator*=(Complex s) {
    if (s == Complex(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend FormalSeries operator+(FormalSeries a, const FormalSeries& b) {
    a += b;
    return a;
  }
  friend FormalSeries operator-(FormalSeries a, const FormalSeries& b) {
    a -= b;
    return a;
  }
  friend FormalSeries operator*(FormalSeries a, Complex s) {
    a *= s;
    return a;
  }
  friend FormalSeries operator*(Complex s, FormalSeries a) {
    a *= s;
    return a;
  }
  friend FormalSeries operator-(FormalSeries a) {
    a *= Complex(-1);
    return a;
  }

  /// Product, optionally truncated: terms above max_degree are dropped.
  /// Pass max_degree < 0 for the full product.
  friend FormalSeries product(const FormalSeries& a, const FormalSeries& b,
                              int max_degree = -1) {
    FormalSeries out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        m.alpha = {ma.alpha[0] + mb.alpha[0], ma.alpha[1] + mb.alpha[1]};
        m.beta = {ma.beta[0] + mb.beta[0], ma.beta[1] + mb.beta[1]};
        m.eps = ma.eps + mb.eps;
        m.hbar = ma.hbar + mb.hbar;
        if (max_degree >= 0 && m.degree() > max_degree) continue;
        out.add_term(m, ca * cb);
      }
    }
    return out;
  }

  friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
    return product(a, b);
  }

  /// d/dz_j
  FormalSeries dz(int j) const {
    FormalSeries out;
    for (const auto& [m, c] : terms_) {
      if (m.alpha[j] == 0) continue;
      Monomial d = m;
      d.alpha[j] -= 1;
      out.add_term(d, c * Scalar(m.alpha[j]));
    }
    return out;
  }

  /// d/dzbar_j
  FormalSeries dzbar(int j) const {
    FormalSeries out;
    for (const auto& [m, c] : terms_) {
      if (m.beta[j] == 0) continue;
      Monomial d = m;
      d.beta[j] -= 1;
      out.add_term(d, c * Scalar(m.beta[j]));
    }
    return out;
  }

  /// Multiply by eps^k.
  FormalSeries mul_eps(int k) const {
    FormalSeries out;
    for (const auto& [m, c] : terms_) {
      Monomial s = m;
      s.eps += k;
      out.terms_.emplace(s, c);
    }
    return out;
  }

  /// Multiply by hbar^k.
  FormalSeries mul_hbar(int k) const {
    FormalSeries out;
    for (const auto& [m, c] : terms_) {
      Monomial s = m;
      s.hbar += k;
      out.terms_.emplace(s, c);
    }
    return out;
  }

  /// Divide by hbar^k; every term must carry at least hbar^k.
  FormalSeries div_hbar(int k) const {
    FormalSeries out;
    for (const auto& [m, c] : terms_) {
      if (m.hbar < k) throw std::invalid_argument("series not divisible by hbar^k");
      Monomial s = m;
      s.hbar -= k;
      out.terms_.emplace(s, c);
    }
    return out;
  }

  bool eps_divisible(int k) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [k](const auto& t) { return t.first.eps >= k; });
  }
  bool hbar_divisible(int k) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [k](const auto& t) { return t.first.hbar >= k; });
  }

  FormalSeries truncate_degree(int max_degree) const {
    FormalSeries out;
    for (const auto& [m, c] : terms_)
      if (m.degree() <= max_degree) out.terms_.emplace(m, c);
    return out;
  }

  FormalSeries part_of_degree(int d) const {
    FormalSeries out;
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) out.terms_.emplace(m, c);
    return out;
  }

  /// Smallest total degree present; -1 for the zero series.
  int min_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      const int md = m.degree();
      if (d < 0 || md < d) d = md;
    }
    return d;
  }

  int max_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  int max_phase_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.phase_degree());
    return d;
  }

  Scalar norm_inf() const {
    Scalar n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, std::abs(c));
    return n;
  }

  /// Realness in the z-basis: coeff(alpha,beta) == conj(coeff(beta,alpha)),
  /// equivalently real coefficients in the (x,xi) basis.  Deviation is
  /// measured relative to the largest coefficient.
  Scalar realness_defect() const {
    Scalar defect = 0;
    for (const auto& [m, c] : terms_) {
      Monomial swapped = m;
      std::swap(swapped.alpha, swapped.beta);
      defect = std::max(defect, std::abs(c - std::conj(coeff(swapped))));
    }
    return defect;
  }

  bool is_real(Scalar tol = Scalar(1e-12)) const {
    const Scalar scale = std::max(norm_inf(), Scalar(1));
    return realness_defect() <= tol * scale;
  }

  /// Drop coefficients below tol (absolute).
  FormalSeries chop(Scalar tol) const {
    FormalSeries out;
    for (const auto& [m, c] : terms_)
      if (std::abs(c) > tol) out.terms_.emplace(m, c);
    return out;
  }

 private:
  TermMap terms_;
};

using Series = FormalSeries<double>;

/// Largest |coefficient| of a - b, for tolerance checks.
template <typename Scalar>
Scalar max_coeff_distance(const FormalSeries<Scalar>& a,
                          const FormalSeries<Scalar>& b) {
  return (a - b).norm_inf();
}

// ---------------------------------------------------------------------------
// Basis changes between the position monomials x^a xi^b and the complex
// monomials z^alpha zbar^beta, with z_j = x_j + i xi_j.  Both directions are
// plain substitutions expanded through series products; the round trip is an
// involution up to rounding.
// ---------------------------------------------------------------------------

namespace detail {

template <typename Scalar>
FormalSeries<Scalar> substitution_power(const FormalSeries<Scalar>& base,
                                        int power) {
  FormalSeries<Scalar> out = FormalSeries<Scalar>::term(Monomial{}, 1);
  for (int i = 0; i < power; ++i) out = out * base;
  return out;
}

}  // namespace detail

/// Expand one position-basis monomial x^a xi^b eps^m hbar^l into the z-basis.
/// The argument's alpha/beta fields are read as x/xi exponents.
template <typename Scalar = double>
FormalSeries<Scalar> position_monomial_to_z(const Monomial& pos,
                                            std::complex<Scalar> coeff) {
  using S = FormalSeries<Scalar>;
  using C = std::complex<Scalar>;
  S out = S::term(Monomial{{0, 0}, {0, 0}, pos.eps, pos.hbar}, coeff);
  for (int j = 0; j < 2; ++j) {
    // x_j = (z_j + zbar_j)/2
    S xj;
    {
      Monomial z;
      z.alpha[j] = 1;
      xj.add_term(z, C(Scalar(0.5)));
      Monomial zb;
      zb.beta[j] = 1;
      xj.add_term(zb, C(Scalar(0.5)));
    }
    // xi_j = (z_j - zbar_j)/(2i)
    S xij;
    {
      Monomial z;
      z.alpha[j] = 1;
      xij.add_term(z, C(0, Scalar(-0.5)));
      Monomial zb;
      zb.beta[j] = 1;
      xij.add_term(zb, C(0, Scalar(0.5)));
    }
    out = out * detail::substitution_power(xj, pos.alpha[j]);
    out = out * detail::substitution_power(xij, pos.beta[j]);
  }
  return out;
}

/// Convert a whole position-basis term map to a z-basis series.
template <typename Scalar = double>
FormalSeries<Scalar> from_position_terms(
    const std::vector<std::pair<Monomial, std::complex<Scalar>>>& terms) {
  FormalSeries<Scalar> out;
  for (const auto& [m, c] : terms) out += position_monomial_to_z<Scalar>(m, c);
  return out;
}

/// Convert a z-basis series to position-basis terms (alpha = x exponents,
/// beta = xi exponents in the result).
template <typename Scalar = double>
FormalSeries<Scalar> to_position_series(const FormalSeries<Scalar>& zser) {
  using S = FormalSeries<Scalar>;
  using C = std::complex<Scalar>;
  S out;
  for (const auto& [m, c] : zser.terms()) {
    S factor = S::term(Monomial{{0, 0}, {0, 0}, m.eps, m.hbar}, c);
    for (int j = 0; j < 2; ++j) {
      // z_j = x_j + i xi_j, zbar_j = x_j - i xi_j, written in the same
      // exponent layout (alpha = x, beta = xi).
      S zj, zbj;
      {
        Monomial x;
        x.alpha[j] = 1;
        zj.add_term(x, C(1));
        zbj.add_term(x, C(1));
        Monomial xi;
        xi.beta[j] = 1;
        zj.add_term(xi, C(0, 1));
        zbj.add_term(xi, C(0, -1));
      }
      factor = factor * detail::substitution_power(zj, m.alpha[j]);
      factor = factor * detail::substitution_power(zbj, m.beta[j]);
    }
    out += factor;
  }
  return out;
}

}  // namespace fermispec

#endif
