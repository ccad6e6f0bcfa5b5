#include "rwlab/special.hpp"

#include "rwlab/error.hpp"

#include <cmath>
#include <numbers>

namespace rwlab::special {

GaussLegendre gauss_legendre(int n) {
  require(n >= 1, "gauss_legendre: need at least one node");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1)
    rule.nodes[n / 2] = 0.0;
  return rule;
}

double legendre_p(int l, double x) {
  if (l == 0)
    return 1.0;
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= l; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  return p1;
}

void legendre_p_all(int lmax, double x, std::span<double> out) {
  require(out.size() >= static_cast<std::size_t>(lmax) + 1, "legendre_p_all: output too small");
  out[0] = 1.0;
  if (lmax == 0)
    return;
  out[1] = x;
  for (int k = 2; k <= lmax; ++k)
    out[k] = ((2.0 * k - 1.0) * x * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
}

NormalizedLegendreTable::NormalizedLegendreTable(int lmax)
    : lmax_(lmax), a_(index(lmax, lmax) + 1, 0.0), b_(index(lmax, lmax) + 1, 0.0),
      values_(index(lmax, lmax) + 1, 0.0) {
  require(lmax >= 0, "NormalizedLegendreTable: negative degree");
  for (int l = 2; l <= lmax; ++l) {
    for (int m = 0; m <= l - 2; ++m) {
      const double ll = l;
      const double mm = m;
      a_[index(l, m)] = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - mm * mm));
      b_[index(l, m)] =
          std::sqrt(((ll - 1.0) * (ll - 1.0) - mm * mm) / (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
    }
  }
}

void NormalizedLegendreTable::compute(double c, double s) {
  values_[0] = 0.5 / std::sqrt(std::numbers::pi);
  for (int m = 1; m <= lmax_; ++m)
    values_[index(m, m)] = std::sqrt(1.0 + 0.5 / m) * s * values_[index(m - 1, m - 1)];
  for (int m = 0; m < lmax_; ++m)
    values_[index(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * c * values_[index(m, m)];
  for (int l = 2; l <= lmax_; ++l) {
    for (int m = 0; m <= l - 2; ++m) {
      const std::size_t i = index(l, m);
      values_[i] = a_[i] * (c * values_[index(l - 1, m)] - b_[i] * values_[index(l - 2, m)]);
    }
  }
}

double disk_transform(double q, double r) {
  const double x = q * r;
  if (std::abs(x) < 1e-8)
    return std::numbers::pi * r * r * (1.0 - x * x / 8.0);
  return 2.0 * std::numbers::pi * r * std::cyl_bessel_j(1.0, x) / q;
}

} // namespace rwlab::special
