#include "rwlab/ensemble.hpp"
#include "rwlab/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

using namespace rwlab;

TEST_CASE("derived seeds are distinct and reproducible") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100000; ++i)
    seen.insert(derive_seed(42, i));
  CHECK(seen.size() == 100000);
  CHECK(derive_seed(42, 7) == derive_seed(42, 7));
  CHECK(derive_seed(42, 7) != derive_seed(43, 7));
}

TEST_CASE("unit sphere samples") {
  std::vector<double> a(37), b(37);
  fill_unit_sphere(9, a);
  fill_unit_sphere(9, b);
  CHECK(a == b);
  CHECK(std::inner_product(a.begin(), a.end(), a.begin(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("coordinate tail oracle") {
  // n = 3: Archimedes, a_1 is uniform on [-1, 1]
  for (double t : {0.0, 0.2, 0.5, 0.9, 1.0})
    CHECK(coordinate_tail(3, t) == doctest::Approx(1.0 - t).epsilon(1e-12).scale(1.0));
  CHECK(coordinate_tail(50, 0.0) == doctest::Approx(1.0));
  CHECK(coordinate_tail(50, 1.0) == doctest::Approx(0.0));
  // n = 2: uniform angle, P(|cos| > t) = 2 acos(t) / pi
  CHECK(coordinate_tail(2, 0.5) == doctest::Approx(2.0 * std::acos(0.5) / std::numbers::pi));
  CHECK(amplitude_tail(2.0, 3, 1.0) == doctest::Approx(0.75));
  CHECK(amplitude_tail(2.0, 3, 2.5) == 0.0);
  CHECK(amplitude_tail(2.0, 3, 0.0) == 1.0);
}

TEST_CASE("summarize matches a two-pass computation") {
  std::vector<double> v(1000);
  fill_gaussian(3, 4.0, v);
  const auto st = summarize(v);
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double m2 = 0.0;
  for (double x : v)
    m2 += (x - mean) * (x - mean);
  CHECK(st.count == 1000);
  CHECK(st.mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(st.m2 == doctest::Approx(m2).epsilon(1e-12));
  CHECK(st.min == *std::min_element(v.begin(), v.end()));
  CHECK(st.max == *std::max_element(v.begin(), v.end()));
  CHECK(st.variance() == doctest::Approx(4.0).epsilon(0.15));
  // For Gaussian data the variance SE is close to sigma^2 sqrt(2/(n-1)).
  CHECK(variance_standard_error(v) == doctest::Approx(st.variance() * std::sqrt(2.0 / 999.0)).epsilon(0.25));
}

TEST_CASE("batches do not depend on the thread count") {
  const auto f = [](const Eigen::MatrixXd& a, std::span<double> out) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out[j] = a(0, j) * a(0, j) + 0.5 * a(1, j);
  };
  set_thread_count(1);
  const auto one = run_sphere_batch(10, 1000, 77, f);
  set_thread_count(4);
  const auto four = run_sphere_batch(10, 1000, 77, f);
  set_thread_count(0);
  CHECK(one.values == four.values);
  CHECK(one.stats.mean == four.stats.mean);
  CHECK(one.stats.m2 == four.stats.m2);
  std::vector<double> a(10);
  fill_unit_sphere(one.seed_of(5), a);
  CHECK(one.values[5] == a[0] * a[0] + 0.5 * a[1]);
}

TEST_CASE("parallel_blocks forwards exceptions") {
  set_thread_count(3);
  CHECK_THROWS_AS(parallel_blocks(10,
                                  [](std::size_t b) {
                                    if (b == 7)
                                      throw std::runtime_error("boom");
                                  }),
                  std::runtime_error);
  set_thread_count(0);
}

TEST_CASE("random wave evaluation") {
  const ManifoldModel t(ManifoldKind::torus2);
  const auto w = SpectralWindow::build(t, 8.0, 2.0);
  const auto u = sample_unit_sphere(w, 4);
  const Point x{0.4, 2.2};
  double ref = 0.0;
  for (std::size_t j = 0; j < w->dimension(); ++j)
    ref += u.coefficients[j] * eval_mode(t, w->modes()[j], x);
  CHECK(eval_wave(u, x) == doctest::Approx(ref).epsilon(1e-12));
  const auto g = sample_gaussian(w, 4);
  CHECK(g.normalization == Normalization::gaussian_raw);
  CHECK(g.coefficients.size() == w->dimension());
  const BallRegion ball(t, x, t.injectivity_radius());
  CHECK(ball_mass(u, ball) <= 1.0 + 1e-12);
}
