#pragma once

// Independent reference computations used to cross-check the library.

#include <cmath>
#include <map>
#include <numeric>

#include <Eigen/Dense>

#include "nij/crossed.hpp"
#include "nij/toeplitz.hpp"

namespace nijtest {

// Dense compression of T_phi + F to the first dim basis vectors, built
// entry by entry from the coefficient definition.
inline Eigen::MatrixXcd toeplitz_dense(const nij::ToeplitzData& a, int dim) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [k, c] : a.symbol.coeffs())
    for (int j = 0; j < dim; ++j) {
      const int i = j + k;
      if (i >= 0 && i < dim) m(i, j) += c;
    }
  for (int i = 0; i < a.correction.rows() && i < dim; ++i)
    for (int j = 0; j < a.correction.cols() && j < dim; ++j) m(i, j) += a.correction(i, j);
  return m;
}

// Winding number of a Laurent polynomial by counting roots of
// z^{-lo} phi(z) inside the unit disc (companion matrix eigenvalues).
// Returns false when a root lies within margin of the circle.
inline bool winding_by_roots(const nij::TrigPoly& phi, int& out, double margin = 1e-6) {
  if (phi.is_zero()) return false;
  const int lo = phi.min_degree();
  const int deg = phi.max_degree() - lo;
  int inside = 0;
  if (deg > 0) {
    const nij::Scalar lead = phi.coeff(phi.max_degree());
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -phi.coeff(lo + i) / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
    for (int i = 0; i < deg; ++i) {
      const double r = std::abs(es.eigenvalues()(i));
      if (std::abs(r - 1.0) < margin) return false;
      if (r < 1.0) ++inside;
    }
  }
  out = lo + inside;
  return true;
}

// dim ker of T_phi restricted to span{e_0..e_{n-1}}, from the exact
// (n + positive extent) x n section.
inline int section_kernel_dim(const nij::TrigPoly& phi, int n) {
  const int rows = n + phi.positive_extent();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, n);
  for (const auto& [k, c] : phi.coeffs())
    for (int j = 0; j < n; ++j)
      if (j + k >= 0 && j + k < rows) m(j + k, j) += c;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  svd.setThreshold(1e-10);
  return n - static_cast<int>(svd.rank());
}

// Covariant representation of C(X) x Z_M on l^2(X x Z_M):
//   (U xi)(x, n) = xi(x, n - 1),  (F xi)(x, n) = f(alpha^{-n} x) xi(x, n).
// Faithful on sums with powers in (-M/2, M/2) when alpha^M = id.
inline Eigen::MatrixXcd crossed_rep(const nij::DynSystem& sys, const nij::CrossedData& a, int M) {
  const int n = sys.size();
  auto idx = [&](int x, int k) { return ((k % M + M) % M) * n + x; };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n * M, n * M);
  for (const auto& [k, f] : a.terms)
    for (int x = 0; x < n; ++x)
      for (int m = 0; m < M; ++m) {
        // f u^k sends delta_(x, m) to f(alpha^{-(m+k)} x) delta_(x, m + k).
        int px = x;
        for (int s = 0; s < ((m + k) % M + M) % M; ++s) px = sys.apply(px, -1);
        out(idx(x, m + k), idx(x, m)) += f[static_cast<std::size_t>(px)];
      }
  return out;
}

// Period of alpha times enough copies to keep the product powers faithful.
inline int crossed_rep_size(const nij::DynSystem& sys, int max_power) {
  int period = 1;
  for (const auto& orbit : sys.orbits()) period = std::lcm(period, static_cast<int>(orbit.size()));
  int M = period;
  while (M <= 2 * max_power) M += period;
  return M;
}

}  // namespace nijtest
