#ifndef FERMISPEC_WEYL_HPP
#define FERMISPEC_WEYL_HPP

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fermispec/series.hpp"

namespace fermispec {

// ---------------------------------------------------------------------------
// Sign convention.  The bracket orientation is pinned so that
//
//   [H20, z^alpha zbar^beta]_W = hbar <beta - alpha, omega0> z^alpha zbar^beta
//
// holds verbatim; everything else (homological splitting, BGNF) is derived
// from it.  In the z variables the Moyal expansion then reads
//
//   [f,g]_W = 2 sum_{k odd} hbar^k sum_{|g|+|d|=k} (-1)^{|d|}/(g! d!)
//             (dz^g dzbar^d f) (dzbar^g dz^d g),
//
// a finite sum for polynomial symbols, with purely rational-real structure
// constants (every factor of i cancels).
// ---------------------------------------------------------------------------

namespace detail {

inline double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

template <typename Scalar>
FormalSeries<Scalar> multi_dz(const FormalSeries<Scalar>& f,
                              const std::array<int, 2>& order) {
  FormalSeries<Scalar> out = f;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < order[j]; ++k) out = out.dz(j);
  return out;
}

template <typename Scalar>
FormalSeries<Scalar> multi_dzbar(const FormalSeries<Scalar>& f,
                                 const std::array<int, 2>& order) {
  FormalSeries<Scalar> out = f;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < order[j]; ++k) out = out.dzbar(j);
  return out;
}

}  // namespace detail

/// Weyl (Moyal) bracket [f,g]_W of two polynomial symbols, truncated at
/// max_degree (pass < 0 for no truncation).  Total on finite series: the sine
/// expansion terminates once k exceeds the phase-space degree of either
/// factor.  Each power of the bidifferential carries one power of hbar.
template <typename Scalar>
FormalSeries<Scalar> weyl_bracket(const FormalSeries<Scalar>& f,
                                  const FormalSeries<Scalar>& g,
                                  int max_degree = -1) {
  using S = FormalSeries<Scalar>;
  S out;
  const int kmax = std::min(f.max_phase_degree(), g.max_phase_degree());
  for (int k = 1; k <= kmax; k += 2) {
    // enumerate gamma, delta in N^2 x N^2 with |gamma| + |delta| = k
    for (int g0 = 0; g0 <= k; ++g0)
      for (int g1 = 0; g0 + g1 <= k; ++g1)
        for (int d0 = 0; g0 + g1 + d0 <= k; ++d0) {
          const int d1 = k - g0 - g1 - d0;
          const std::array<int, 2> gam{g0, g1}, del{d0, d1};
          S left = detail::multi_dzbar(detail::multi_dz(f, gam), del);
          if (left.empty()) continue;
          S right = detail::multi_dz(detail::multi_dzbar(g, gam), del);
          if (right.empty()) continue;
          const Scalar w =
              Scalar(2) * (((d0 + d1) % 2) ? Scalar(-1) : Scalar(1)) /
              Scalar(detail::factorial(g0) * detail::factorial(g1) *
                     detail::factorial(d0) * detail::factorial(d1));
          const int cut = max_degree < 0 ? -1 : max_degree;
          S term = product(left, right, cut < 0 ? -1 : cut);
          out += (term * std::complex<Scalar>(w)).mul_hbar(k);
        }
  }
  if (max_degree >= 0) out = out.truncate_degree(max_degree);
  return out;
}

/// Eigenvalue of hbar^{-1} ad_{H20} on z^alpha zbar^beta: <beta-alpha, omega0>.
inline double ad_h20_eigenvalue(const Monomial& mono,
                                const std::array<double, 2>& omega0) {
  return (mono.beta[0] - mono.alpha[0]) * omega0[0] +
         (mono.beta[1] - mono.alpha[1]) * omega0[1];
}

/// Quadratic oscillator symbol H20 = sum_j (omega0_j/2) z_j zbar_j.
template <typename Scalar = double>
FormalSeries<Scalar> harmonic_symbol(const std::array<double, 2>& omega,
                                     int eps_power = 0) {
  FormalSeries<Scalar> h;
  for (int j = 0; j < 2; ++j) {
    Monomial m;
    m.alpha[j] = 1;
    m.beta[j] = 1;
    m.eps = eps_power;
    h.add_term(m, std::complex<Scalar>(Scalar(omega[j]) / Scalar(2)));
  }
  return h;
}

template <typename Scalar = double>
struct SplitResult {
  FormalSeries<Scalar> kernel;     ///< resonant part, commutes with H20
  FormalSeries<Scalar> generator;  ///< solves (i/hbar)[H20, generator] = r - kernel
  int near_resonant_count = 0;     ///< monomials classified resonant by the floor
};

/// Split r (z-basis) along ker ad_{H20} + im ad_{H20}.  Monomials whose ad
/// eigenvalue is below the small-denominator floor are treated as resonant
/// and moved to the kernel; the count of such borderline monomials is
/// reported so callers can flag a near-resonance.
template <typename Scalar>
SplitResult<Scalar> split_homological(const FormalSeries<Scalar>& r,
                                      const std::array<double, 2>& omega0,
                                      double denominator_floor = 1e-9) {
  SplitResult<Scalar> out;
  for (const auto& [m, c] : r.terms()) {
    const double lambda = ad_h20_eigenvalue(m, omega0);
    if (std::abs(lambda) <= denominator_floor) {
      out.kernel.add_term(m, c);
      if (lambda != 0.0) ++out.near_resonant_count;
    } else {
      // (i/hbar)[H20, c z^a zbar^b] = i lambda c z^a zbar^b, so divide by
      // i*lambda to generate the image part.
      out.generator.add_term(m, c / std::complex<Scalar>(0, lambda));
    }
  }
  return out;
}

/// exp((i/hbar) ad_A)(p) truncated at max_degree.  Convergent in the formal
/// topology: A in O_3 raises the minimum degree by one per application.
template <typename Scalar>
FormalSeries<Scalar> exp_ad_conjugate(const FormalSeries<Scalar>& a,
                                      const FormalSeries<Scalar>& p,
                                      int max_degree) {
  using S = FormalSeries<Scalar>;
  if (!a.empty() && a.min_degree() < 3)
    throw std::invalid_argument("conjugation generator must lie in O_3");
  S sum = p.truncate_degree(max_degree);
  S term = sum;
  Scalar inv_factorial = 1;
  for (int l = 1; !term.empty() && l <= max_degree + 1; ++l) {
    // (i/hbar) [a, term]_W : one hbar divides out of the bracket.
    term = weyl_bracket(a, term, max_degree + 2).div_hbar(1) *
           std::complex<Scalar>(0, 1);
    term = term.truncate_degree(max_degree);
    inv_factorial /= Scalar(l);
    sum += term * std::complex<Scalar>(inv_factorial);
  }
  return sum;
}

template <typename Scalar = double>
struct BgnfResult {
  FormalSeries<Scalar> normal_form;  ///< K = K_3 + ... + K_order
  std::vector<FormalSeries<Scalar>> generators;  ///< per-degree corrections A'
  int near_resonant_count = 0;
};

/// Birkhoff-Gustavson normal form by successive degree-by-degree conjugation:
/// returns K with [H20, K]_W = 0 (each K_j resonant) and the per-degree
/// generators, such that exp((i/hbar) ad_A)(h20 + perturbation) = h20 + K
/// modulo degrees above `order`.  Requires perturbation in O_3.
template <typename Scalar>
BgnfResult<Scalar> bgnf_iterate(const FormalSeries<Scalar>& h20,
                                const FormalSeries<Scalar>& perturbation,
                                const std::array<double, 2>& omega0,
                                int order,
                                double denominator_floor = 1e-9) {
  using S = FormalSeries<Scalar>;
  if (order < 3) throw std::invalid_argument("bgnf order must be >= 3");
  if (!perturbation.empty() && perturbation.min_degree() < 3)
    throw std::invalid_argument("perturbation must lie in O_3");

  const S p = (h20 + perturbation).truncate_degree(order);
  S total_generator;
  BgnfResult<Scalar> out;
  for (int degree = 3; degree <= order; ++degree) {
    const S conjugated = exp_ad_conjugate(total_generator, p, order);
    const S remainder = conjugated.part_of_degree(degree);
    SplitResult<Scalar> split =
        split_homological(remainder, omega0, denominator_floor);
    out.normal_form += split.kernel;
    out.generators.push_back(split.generator);
    out.near_resonant_count += split.near_resonant_count;
    total_generator += split.generator;
  }
  return out;
}

/// One order-3 step: split the degree-3 part of the perturbation into the
/// resonant normal form K_3 and the generator A_3.
template <typename Scalar>
BgnfResult<Scalar> bgnf_order3(const FormalSeries<Scalar>& h20,
                               const FormalSeries<Scalar>& perturbation,
                               const std::array<double, 2>& omega0,
                               double denominator_floor = 1e-9) {
  return bgnf_iterate(h20, perturbation, omega0, 3, denominator_floor);
}

/// Coefficient mu of Re(z1^2 zbar2) in a resonant normal form (m = l = 0
/// stratum).  Returns {mu, nu} where nu multiplies Im(z1^2 zbar2); for
/// potentials depending on x only, nu vanishes.
template <typename Scalar>
std::array<Scalar, 2> fermi_coupling(const FormalSeries<Scalar>& k) {
  Monomial m;
  m.alpha = {2, 0};
  m.beta = {0, 1};
  const std::complex<Scalar> c = k.coeff(m);
  // mu Re(z1^2 zbar2) + nu Im(z1^2 zbar2) has coefficient (mu - i nu)/2 there.
  return {Scalar(2) * c.real(), Scalar(-2) * c.imag()};
}

}  // namespace fermispec

#endif
