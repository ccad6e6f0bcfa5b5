#include "rwlab/special.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/special_functions/spherical_harmonic.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace rwlab::special;

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 5, 16, 64}) {
    const auto gl = gauss_legendre(n);
    REQUIRE(gl.nodes.size() == static_cast<std::size_t>(n));
    double wsum = 0.0;
    for (double w : gl.weights)
      wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (int deg = 0; deg <= 2 * n - 1; deg += 2) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        s += gl.weights[i] * std::pow(gl.nodes[i], deg);
      CHECK(s == doctest::Approx(2.0 / (deg + 1)).epsilon(1e-12));
    }
    for (int i = 0; i < n; ++i)
      CHECK(gl.nodes[i] == doctest::Approx(-gl.nodes[n - 1 - i]).epsilon(1e-14));
  }
  CHECK_THROWS(gauss_legendre(0));
}

TEST_CASE("legendre_p agrees with Boost") {
  for (int l = 0; l <= 60; l += 3)
    for (double x : {-1.0, -0.73, 0.0, 0.31, 0.999, 1.0})
      CHECK(legendre_p(l, x) == doctest::Approx(boost::math::legendre_p(l, x)).epsilon(1e-11));
  std::vector<double> all(41);
  legendre_p_all(40, 0.42, all);
  for (int l = 0; l <= 40; ++l)
    CHECK(all[l] == doctest::Approx(boost::math::legendre_p(l, 0.42)).epsilon(1e-12));
}

TEST_CASE("normalized associated Legendre table matches Boost without Condon-Shortley phase") {
  NormalizedLegendreTable table(30);
  for (double theta : {0.0, 0.2, 1.1, std::numbers::pi / 2, 2.9, std::numbers::pi}) {
    table.compute(std::cos(theta), std::sin(theta));
    for (int l = 0; l <= 30; ++l)
      for (int m = 0; m <= l; ++m) {
        const double ref = (m % 2 ? -1.0 : 1.0) * boost::math::spherical_harmonic_r(l, m, theta, 0.0);
        CHECK(table(l, m) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
      }
  }
}

TEST_CASE("disk_transform equals the disk integral of cos(q x1)") {
  const double r = 0.7;
  CHECK(disk_transform(0.0, r) == doctest::Approx(std::numbers::pi * r * r));
  const auto gl = gauss_legendre(40);
  for (double q : {0.5, 3.0, 17.0}) {
    double s = 0.0;
    const int na = 256;
    for (int i = 0; i < 40; ++i) {
      const double rho = 0.5 * r * (gl.nodes[i] + 1.0);
      for (int a = 0; a < na; ++a) {
        const double t = 2.0 * std::numbers::pi * a / na;
        s += 0.5 * r * gl.weights[i] * rho * (2.0 * std::numbers::pi / na) * std::cos(q * rho * std::cos(t));
      }
    }
    CHECK(disk_transform(q, r) == doctest::Approx(s).epsilon(1e-10));
  }
}
