#include "fermispec/jets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fermispec {

MatrixJet jet_zero(int rows, int cols, int order) {
  return MatrixJet(order + 1, Eigen::MatrixXd::Zero(rows, cols));
}

MatrixJet jet_identity(int n, int order) {
  MatrixJet j = jet_zero(n, n, order);
  j[0] = Eigen::MatrixXd::Identity(n, n);
  return j;
}

MatrixJet jet_add(const MatrixJet& a, const MatrixJet& b) {
  const int order = static_cast<int>(std::min(a.size(), b.size())) - 1;
  MatrixJet out(order + 1);
  for (int k = 0; k <= order; ++k) out[k] = a[k] + b[k];
  return out;
}

MatrixJet jet_scale(const MatrixJet& a, double s) {
  MatrixJet out = a;
  for (auto& m : out) m *= s;
  return out;
}

MatrixJet jet_mul(const MatrixJet& a, const MatrixJet& b, int order) {
  MatrixJet out = jet_zero(static_cast<int>(a[0].rows()),
                           static_cast<int>(b[0].cols()), order);
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    for (int j = 0; j < static_cast<int>(b.size()); ++j)
      if (i + j <= order) out[i + j] += a[i] * b[j];
  return out;
}

MatrixJet jet_transpose(const MatrixJet& a) {
  MatrixJet out = a;
  for (auto& m : out) m.transposeInPlace();
  return out;
}

MatrixJet jet_truncate(const MatrixJet& a, int order) {
  MatrixJet out = a;
  out.resize(order + 1,
             Eigen::MatrixXd::Zero(a[0].rows(), a[0].cols()));
  return out;
}

Eigen::MatrixXd jet_eval(const MatrixJet& a, double eps) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(a[0].rows(), a[0].cols());
  for (int k = static_cast<int>(a.size()) - 1; k >= 0; --k)
    v = eps * v + a[k];
  return v;
}

MatrixJet jet_inv_sqrt(const MatrixJet& c, int order) {
  const int n = static_cast<int>(c[0].rows());
  MatrixJet e = jet_truncate(c, order);
  e[0] -= Eigen::MatrixXd::Identity(n, n);
  MatrixJet out = jet_identity(n, order);
  MatrixJet epow = jet_identity(n, order);
  double binom = 1.0;  // binomial(-1/2, k)
  for (int k = 1; k <= order; ++k) {
    epow = jet_mul(epow, e, order);
    binom *= (-0.5 - (k - 1)) / k;
    out = jet_add(out, jet_scale(epow, binom));
  }
  return out;
}

Eigen::VectorXd JetDiagonalization::eigenvalues(double eps) const {
  const int n = static_cast<int>(lambdas.rows());
  Eigen::VectorXd v(n);
  for (int j = 0; j < n; ++j) {
    double acc = 0;
    for (int k = static_cast<int>(lambdas.cols()) - 1; k >= 0; --k)
      acc = eps * acc + lambdas(j, k);
    v[j] = acc;
  }
  return v;
}

namespace {

// Jets of a scalar (1x1 convenience wrappers are avoided; vectors of
// doubles are enough for the Gram-Schmidt bookkeeping).
using ScalarJet = std::vector<double>;
using VectorJet = std::vector<Eigen::VectorXd>;

ScalarJet dot_jet(const VectorJet& a, const VectorJet& b, int order) {
  ScalarJet s(order + 1, 0.0);
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    for (int j = 0; j < static_cast<int>(b.size()); ++j)
      if (i + j <= order) s[i + j] += a[i].dot(b[j]);
  return s;
}

ScalarJet inv_sqrt_jet(const ScalarJet& s, int order) {
  // s = s0 (1 + u); (1+u)^{-1/2} by binomial series, then scale.
  const double s0 = s[0];
  if (s0 <= 0) throw std::runtime_error("jet normalization lost positivity");
  ScalarJet u(order + 1, 0.0);
  for (int k = 1; k <= order; ++k) u[k] = s[k] / s0;
  ScalarJet out(order + 1, 0.0), upow(order + 1, 0.0);
  out[0] = 1.0;
  upow[0] = 1.0;
  double binom = 1.0;
  for (int k = 1; k <= order; ++k) {
    ScalarJet next(order + 1, 0.0);
    for (int i = 0; i <= order; ++i)
      for (int j = 0; i + j <= order; ++j) next[i + j] += upow[i] * u[j];
    upow = next;
    binom *= (-0.5 - (k - 1)) / k;
    for (int i = 0; i <= order; ++i) out[i] += binom * upow[i];
  }
  const double scale = 1.0 / std::sqrt(s0);
  for (auto& v : out) v *= scale;
  return out;
}

VectorJet scale_jet(const VectorJet& v, const ScalarJet& s, int order) {
  VectorJet out(order + 1, Eigen::VectorXd::Zero(v[0].size()));
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    for (int j = 0; j < static_cast<int>(s.size()); ++j)
      if (i + j <= order) out[i + j] += v[i] * s[j];
  return out;
}

void axpy_jet(VectorJet& y, const ScalarJet& a, const VectorJet& x,
              int order) {
  for (int i = 0; i < static_cast<int>(x.size()); ++i)
    for (int j = 0; j < static_cast<int>(a.size()); ++j)
      if (i + j <= order) y[i + j] -= a[j] * x[i];
}

// Spectral projector jets of the cluster [lo, hi) of a(eps), given in a basis
// where a[0] is diagonal ascending.  Determined order by order from
// idempotency (on-cluster blocks) and commutation with a (cross blocks).
MatrixJet projector_jet(const MatrixJet& a, int lo, int hi, int order) {
  const int n = static_cast<int>(a[0].rows());
  const double mu = a[0](lo, lo);
  MatrixJet p = jet_zero(n, n, order);
  for (int i = lo; i < hi; ++i) p[0](i, i) = 1.0;
  auto inside = [&](int i) { return i >= lo && i < hi; };
  for (int m = 1; m <= order; ++m) {
    // G_m = -sum_{i=1}^{m-1} P_i P_{m-i}
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < m; ++i) g -= p[i] * p[m - i];
    // H_m = -sum_{i=1}^{m} (A_i P_{m-i} - P_{m-i} A_i)
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i <= m && i < static_cast<int>(a.size()); ++i)
      h -= a[i] * p[m - i] - p[m - i] * a[i];
    Eigen::MatrixXd pm = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        if (inside(r) && inside(c))
          pm(r, c) = g(r, c);
        else if (!inside(r) && !inside(c))
          pm(r, c) = -g(r, c);
        else if (inside(r))
          pm(r, c) = h(r, c) / (mu - a[0](c, c));
        else
          pm(r, c) = h(r, c) / (a[0](r, r) - mu);
      }
    p[m] = 0.5 * (pm + pm.transpose());
  }
  return p;
}

JetDiagonalization diagonalize_impl(const MatrixJet& a, int jet_order,
                                    double cluster_tol);

// Fully degenerate branch: a(eps) = mu I + eps b(eps).
JetDiagonalization degenerate_branch(const MatrixJet& a, double mu,
                                     int jet_order, double cluster_tol) {
  const int n = static_cast<int>(a[0].rows());
  JetDiagonalization out;
  out.jet_order = jet_order;
  if (jet_order == 0) {
    out.u = jet_identity(n, 0);
    out.lambdas = Eigen::MatrixXd::Constant(n, 1, mu);
    return out;
  }
  MatrixJet b(a.begin() + 1, a.end());  // (a - mu I) / eps
  if (b.empty()) b.push_back(Eigen::MatrixXd::Zero(n, n));
  JetDiagonalization sub = diagonalize_impl(b, jet_order - 1, cluster_tol);
  // lambda(eps) = mu + eps nu(eps); re-orthonormalize the frame at full order.
  out.lambdas = Eigen::MatrixXd::Zero(n, jet_order + 1);
  out.lambdas.col(0).setConstant(mu);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < jet_order; ++k)
      out.lambdas(j, k + 1) = sub.lambdas(j, k);
  MatrixJet u = jet_truncate(sub.u, jet_order);
  MatrixJet gram = jet_mul(jet_transpose(u), u, jet_order);
  out.u = jet_mul(u, jet_inv_sqrt(gram, jet_order), jet_order);
  return out;
}

JetDiagonalization diagonalize_impl(const MatrixJet& a, int jet_order,
                                    double cluster_tol) {
  const int n = static_cast<int>(a[0].rows());
  JetDiagonalization out;
  out.jet_order = jet_order;
  if (n == 1) {
    out.u = jet_identity(1, jet_order);
    out.lambdas = Eigen::MatrixXd::Zero(1, jet_order + 1);
    for (int k = 0; k <= jet_order && k < static_cast<int>(a.size()); ++k)
      out.lambdas(0, k) = a[k](0, 0);
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a[0]);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double scale = std::max(1.0, std::max(std::abs(ev[0]), std::abs(ev[n - 1])));
  const double gap_tol = cluster_tol * scale;

  std::vector<int> cluster_start{0};
  for (int i = 1; i < n; ++i)
    if (ev[i] - ev[i - 1] > gap_tol) cluster_start.push_back(i);
  cluster_start.push_back(n);
  const int n_clusters = static_cast<int>(cluster_start.size()) - 1;

  if (n_clusters == 1) {
    const double mu = ev.mean();
    // Rotate so the eps^0 coefficient is exactly mu I in exact arithmetic.
    const Eigen::MatrixXd q0 = es.eigenvectors();
    MatrixJet rotated(std::min<std::size_t>(a.size(), jet_order + 1));
    for (std::size_t k = 0; k < rotated.size(); ++k)
      rotated[k] = q0.transpose() * a[k] * q0;
    rotated[0] = Eigen::MatrixXd::Constant(n, n, 0.0);
    rotated[0].diagonal().setConstant(mu);
    JetDiagonalization sub =
        degenerate_branch(rotated, mu, jet_order, cluster_tol);
    out.lambdas = sub.lambdas;
    out.u = sub.u;
    for (auto& m : out.u) m = q0 * m;
    return out;
  }

  // Distinct clusters: work in the eps = 0 eigenbasis, build projector jets
  // per cluster, project the cluster's constant basis and Gram-Schmidt it.
  const Eigen::MatrixXd q0 = es.eigenvectors();
  MatrixJet rotated(std::min<std::size_t>(a.size(), jet_order + 1));
  for (std::size_t k = 0; k < rotated.size(); ++k)
    rotated[k] = q0.transpose() * a[k] * q0;
  // Clean the eps^0 coefficient to the exact cluster means.
  Eigen::VectorXd d0(n);
  for (int c = 0; c < n_clusters; ++c) {
    const int lo = cluster_start[c], hi = cluster_start[c + 1];
    const double mu = ev.segment(lo, hi - lo).mean();
    for (int i = lo; i < hi; ++i) d0[i] = mu;
  }
  rotated[0] = Eigen::MatrixXd(d0.asDiagonal());

  MatrixJet v = jet_zero(n, n, jet_order);
  for (int c = 0; c < n_clusters; ++c) {
    const int lo = cluster_start[c], hi = cluster_start[c + 1];
    const MatrixJet p = projector_jet(rotated, lo, hi, jet_order);
    std::vector<VectorJet> basis;
    for (int i = lo; i < hi; ++i) {
      VectorJet vi(jet_order + 1);
      for (int k = 0; k <= jet_order; ++k) vi[k] = p[k].col(i);
      basis.push_back(std::move(vi));
    }
    // jet Gram-Schmidt within the cluster
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const ScalarJet proj = dot_jet(basis[j], basis[i], jet_order);
        axpy_jet(basis[i], proj, basis[j], jet_order);
      }
      const ScalarJet norm2 = dot_jet(basis[i], basis[i], jet_order);
      basis[i] = scale_jet(basis[i], inv_sqrt_jet(norm2, jet_order), jet_order);
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (int k = 0; k <= jet_order; ++k)
        v[k].col(lo + static_cast<int>(i)) = basis[i][k];
  }

  const MatrixJet conj =
      jet_mul(jet_mul(jet_transpose(v), jet_truncate(rotated, jet_order), jet_order),
              v, jet_order);

  out.lambdas = Eigen::MatrixXd::Zero(n, jet_order + 1);
  MatrixJet u_blocks = jet_identity(n, jet_order);
  for (int c = 0; c < n_clusters; ++c) {
    const int lo = cluster_start[c], hi = cluster_start[c + 1];
    const int d = hi - lo;
    if (d == 1) {
      for (int k = 0; k <= jet_order; ++k) out.lambdas(lo, k) = conj[k](lo, lo);
      continue;
    }
    MatrixJet block(jet_order + 1);
    for (int k = 0; k <= jet_order; ++k) block[k] = conj[k].block(lo, lo, d, d);
    JetDiagonalization sub = diagonalize_impl(block, jet_order, cluster_tol);
    out.lambdas.block(lo, 0, d, jet_order + 1) = sub.lambdas;
    for (int k = 0; k <= jet_order; ++k)
      u_blocks[k].block(lo, lo, d, d) = sub.u[k];
  }

  out.u = jet_mul(v, u_blocks, jet_order);
  for (auto& m : out.u) m = q0 * m;
  return out;
}

}  // namespace

JetDiagonalization eps_jet_diagonalize(const MatrixJet& a, int jet_order,
                                       double cluster_tol) {
  if (a.empty()) throw std::invalid_argument("empty matrix jet");
  if (jet_order < 0) throw std::invalid_argument("jet_order must be >= 0");
  const int n = static_cast<int>(a[0].rows());
  for (const auto& m : a) {
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("jet coefficients must be square, same size");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw std::invalid_argument("eps_jet_diagonalize: non-symmetric input");
  }
  return diagonalize_impl(jet_truncate(a, jet_order), jet_order, cluster_tol);
}

}  // namespace fermispec
