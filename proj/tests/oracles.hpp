// Reference computations that do not go through the library's own
// enumeration, kernels or quadrature.
#ifndef RWLAB_TESTS_ORACLES_HPP
#define RWLAB_TESTS_ORACLES_HPP

#include <boost/math/special_functions/bessel.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// Lattice points k in Z^2 with lo <= |k| <= hi, by brute force over a box.
inline std::vector<std::pair<int, int>> lattice_points(double lo, double hi) {
  std::vector<std::pair<int, int>> pts;
  const int b = static_cast<int>(std::ceil(hi)) + 1;
  for (int a = -b; a <= b; ++a)
    for (int c = -b; c <= b; ++c) {
      const double n = std::sqrt(double(a * a + c * c));
      if (n >= lo - 1e-12 && n <= hi + 1e-12)
        pts.emplace_back(a, c);
    }
  return pts;
}

/// Number of sphere modes with sqrt(l(l+1)) in [lo, hi].
inline std::size_t sphere_count(double lo, double hi) {
  std::size_t n = 0;
  for (int l = 0; l < 100000; ++l) {
    const double f = std::sqrt(double(l) * (l + 1));
    if (f > hi + 1e-12)
      break;
    if (f >= lo - 1e-12)
      n += 2 * l + 1;
  }
  return n;
}

/// Integral of exp(i q.x) over a flat disk of radius r, via Boost's J1.
inline double disk_hat(double q, double r) {
  if (q == 0.0)
    return pi * r * r;
  return 2.0 * pi * r * boost::math::cyl_bessel_j(1, q * r) / q;
}

/// Exact ball Gram matrix in the complex exponential basis e^{ik.x}/(2 pi)
/// for a disk of radius r < pi centred at c on the flat torus.
inline Eigen::MatrixXcd torus_complex_gram(const std::vector<std::pair<int, int>>& ks, double c1,
                                           double c2, double r) {
  const auto n = static_cast<Eigen::Index>(ks.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d1 = ks[j].first - ks[i].first;
      const double d2 = ks[j].second - ks[i].second;
      g(i, j) = std::polar(disk_hat(std::hypot(d1, d2), r) / (4.0 * pi * pi), d1 * c1 + d2 * c2);
    }
  return g;
}

struct GramSummary {
  double trace;
  double frobenius_sq;
  double lambda_max;
};

inline GramSummary summarize_hermitian(const Eigen::MatrixXcd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  return {g.trace().real(), g.squaredNorm(), es.eigenvalues().maxCoeff()};
}

inline GramSummary summarize_symmetric(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  return {g.trace(), g.squaredNorm(), es.eigenvalues().maxCoeff()};
}

} // namespace oracle

#endif
