#include "oracles.hpp"

#include "rwlab/error.hpp"
#include "rwlab/spectral.hpp"

#include <doctest.h>

#include <random>

using namespace rwlab;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::io;
}

} // namespace

TEST_CASE("window construction") {
  const ManifoldModel t(ManifoldKind::torus2), s(ManifoldKind::sphere2);
  const auto w = SpectralWindow::build(t, 30.0, 1.0);
  CHECK(w->dimension() == oracle::lattice_points(29.0, 30.0).size());
  CHECK(w->lambda() == 30.0);
  CHECK(w->width() == 1.0);
  CHECK(code_of([&] { SpectralWindow::closed_interval(t, 2.84, 2.99); }) == ErrorCode::empty_window);
  CHECK(code_of([&] { SpectralWindow::build(t, 2.99, 0.15); }) == ErrorCode::empty_window);
  CHECK(code_of([&] { SpectralWindow::build(s, 2.44, 1.0); }) == ErrorCode::empty_window);
  CHECK(code_of([&] { SpectralWindow::build(t, 10.0, 0.0); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { SpectralWindow::build(t, 10.0, 11.0); }) == ErrorCode::invalid_argument);
  const auto ws = SpectralWindow::build(s, std::sqrt(30.0 * 31.0), 1.0);
  CHECK(ws->dimension() == 61);
  CHECK(ws->min_degree() == 30);
  CHECK(ws->max_degree() == 30);
}

TEST_CASE("projector kernel closed forms match explicit mode sums") {
  const ManifoldModel t(ManifoldKind::torus2), s(ManifoldKind::sphere2);
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& w : {SpectralWindow::build(t, 20.0, 3.0), SpectralWindow::closed_interval(t, 0.0, 13.0),
                        SpectralWindow::build(s, std::sqrt(12.0 * 13.0), 3.0),
                        SpectralWindow::closed_interval(s, 0.0, 15.0)}) {
    ProjectorKernel k(w);
    for (int i = 0; i < 30; ++i) {
      const Point x{oracle::pi * u(eng), 2 * oracle::pi * u(eng)};
      const Point y{oracle::pi * u(eng), 2 * oracle::pi * u(eng)};
      const double direct = projector_kernel_direct(*w, x, y);
      CHECK(k(x, y) == doctest::Approx(direct).epsilon(1e-10).scale(1.0));
      CHECK(k(x, y) == k(y, x));
    }
    const double diag = double(w->dimension()) / w->manifold().volume();
    CHECK(k({1.3, 0.4}, {1.3, 0.4}) == doctest::Approx(diag).epsilon(1e-11));
  }
}

TEST_CASE("evaluate_basis matches eval_mode") {
  const ManifoldModel t(ManifoldKind::torus2), s(ManifoldKind::sphere2);
  const std::vector<Point> pts{{0.0, 0.0}, {0.3, 5.9}, {oracle::pi, 1.0}, {2.0, 2.0}};
  for (const auto& w : {SpectralWindow::build(t, 15.0, 4.0), SpectralWindow::build(s, 12.0, 4.0)}) {
    const Eigen::MatrixXd b = evaluate_basis(*w, pts);
    for (std::size_t p = 0; p < pts.size(); ++p)
      for (std::size_t j = 0; j < w->dimension(); ++j)
        CHECK(b(p, j) == doctest::Approx(eval_mode(w->manifold(), w->modes()[j], pts[p])).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("Weyl remainders") {
  const ManifoldModel t(ManifoldKind::torus2), s(ManifoldKind::sphere2);
  CHECK(local_weyl_density(10.0, 2) == doctest::Approx(100.0 / (4 * oracle::pi)));
  CHECK(unit_ball_volume(2) == doctest::Approx(oracle::pi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * oracle::pi / 3.0));
  CHECK(weyl_remainder(t, 0.0) == doctest::Approx(1.0));
  CHECK(weyl_remainder(t, 10.0) == doctest::Approx(317.0 - oracle::pi * 100.0));
  for (int l : {1, 5, 20, 80, 150}) {
    const double lam = std::sqrt(double(l) * (l + 1));
    CHECK(weyl_remainder(s, lam) == doctest::Approx(double(l + 1)).epsilon(1e-12));
    CHECK(pointwise_weyl_remainder(s, lam, {0.0, 0.0}) ==
          doctest::Approx((l + 1) / (4 * oracle::pi)).epsilon(1e-10));
  }
}

TEST_CASE("kernel profile") {
  const ManifoldModel t(ManifoldKind::torus2);
  const auto w = SpectralWindow::build(t, 40.0, 5.0);
  const auto prof = kernel_profile(w, {0.5, 0.5}, 0.3, oracle::pi, 400);
  REQUIRE(prof.separations.size() == 400);
  CHECK(prof.separations.front() == 0.0);
  CHECK(prof.values.front() == doctest::Approx(double(w->dimension()) / t.volume()));
  CHECK(prof.near_constant > 0.0);
  CHECK(prof.near_constant < 1.0);
  CHECK(prof.far_constant > 0.0);
  CHECK(prof.peak_count > 3);
  for (std::size_t i = 1; i < prof.separations.size(); ++i)
    CHECK(prof.separations[i] > prof.separations[i - 1]);
}
