#include "oracles.hpp"

#include "rwlab/error.hpp"
#include "rwlab/experiments.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace rwlab;

TEST_CASE("rules") {
  CHECK(WindowRule{WindowRuleKind::constant, 3.0}.width_at(50.0) == 3.0);
  CHECK(WindowRule{WindowRuleKind::power, 0.5}.width_at(100.0) == doctest::Approx(10.0));
  CHECK(WindowRule{WindowRuleKind::full, 0.0}.width_at(40.0) == 40.0);
  CHECK(RadiusRule{2.0, 0.5}.radius_at(16.0) == doctest::Approx(0.5));
  const ManifoldModel t(ManifoldKind::torus2);
  const auto full = window_for(t, 10.0, {WindowRuleKind::full, 0.0});
  CHECK(full->dimension() == 317);
}

TEST_CASE("covers") {
  for (auto kind : {ManifoldKind::torus2, ManifoldKind::sphere2}) {
    const ManifoldModel m(kind);
    for (double r : {0.1, 0.2, 0.4, 1.0, oracle::pi}) {
      const auto cover = build_cover(m, r);
      CHECK(uncovered_points(cover, 10000, 99) == 0);
      if (r <= 0.4) {
        const double ideal = m.volume() / (oracle::pi * r * r);
        const double count = double(cover.centers.size());
        CHECK(count <= 4.0 * ideal);
        CHECK(count >= ideal / 4.0);
      }
    }
  }
  // dense lattice sweep of the sphere cover, poles and band edges included
  const ManifoldModel s(ManifoldKind::sphere2);
  for (double r : {0.5, 1.2}) {
    const auto cover = build_cover(s, r);
    double worst = 0.0;
    for (int i = 0; i <= 300; ++i)
      for (int j = 0; j < 600; ++j) {
        const Point p{oracle::pi * i / 300.0, 2.0 * oracle::pi * j / 600.0};
        double best = 10.0;
        for (const Point& c : cover.centers)
          best = std::min(best, geodesic_distance(s, p, c));
        worst = std::max(worst, best);
      }
    CHECK(worst <= r);
  }
  const ManifoldModel t(ManifoldKind::torus2);
  CHECK(build_cover(t, oracle::pi).centers.size() <= 8);
  CHECK_THROWS_AS(build_cover(t, 4.0), Error);
}

TEST_CASE("uniform experiment: spectral and quadrature routes agree") {
  const ManifoldModel t(ManifoldKind::torus2);
  const auto w = SpectralWindow::build(t, 12.0, 1.0);
  const auto cover = build_cover(t, 0.9);
  const auto a = run_uniform_experiment(w, cover, 0.0, 40, 5, UniformRoute::spectral);
  const auto b = run_uniform_experiment(w, cover, 0.0, 40, 5, UniformRoute::quadrature, 40);
  CHECK(a.route == UniformRoute::spectral);
  CHECK(a.n_balls == cover.centers.size());
  CHECK(a.mean_max_deviation == doctest::Approx(b.mean_max_deviation).epsilon(1e-9));
  CHECK(a.empirical_prob == b.empirical_prob);
  CHECK(a.threshold == doctest::Approx(0.81));
}

TEST_CASE("uniform experiment: unattainable threshold") {
  const ManifoldModel s(ManifoldKind::sphere2);
  const auto w = SpectralWindow::build(s, std::sqrt(10.0 * 11.0), 1.0);
  const auto cover = build_cover(s, 1.5);
  // threshold r^2 lambda^-delta > 1 while 0 <= F <= 1
  const double delta = -std::log(1.0 / 2.25) / std::log(w->lambda()) - 0.05;
  const auto rep = run_uniform_experiment(w, cover, delta, 50, 1);
  CHECK(rep.threshold > 1.0);
  CHECK(rep.empirical_prob == 0.0);
  CHECK(rep.route == UniformRoute::quadrature);
}

TEST_CASE("tail experiment invariants") {
  const ManifoldModel t(ManifoldKind::torus2);
  const auto w = SpectralWindow::build(t, 20.0, 3.0);
  const BallRegion ball(t, {0.0, 0.0}, 0.4);
  const auto rep = run_tail_experiment(w, ball, 2000, {}, 3, 0, 21);
  REQUIRE(rep.t.size() == 21);
  CHECK(rep.t.front() == 0.0);
  CHECK(rep.levy_bound.front() == 1.0);
  CHECK(rep.empirical.front() <= rep.levy_bound.front());
  for (std::size_t i = 0; i < rep.t.size(); ++i) {
    CHECK(rep.empirical[i] >= 0.0);
    CHECK(rep.empirical[i] <= 1.0);
    if (i)
      CHECK(rep.empirical[i] <= rep.empirical[i - 1]);
  }
  CHECK(rep.sphere_dimension == w->dimension() - 1);
  CHECK(empirical_median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(empirical_median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK_THROWS_AS(run_tail_experiment(w, ball, 999, {}, 3), Error);
}

TEST_CASE("moment sweep") {
  SweepSpec spec;
  spec.manifold = ManifoldModel(ManifoldKind::torus2);
  spec.lambdas = {2.99, 15.0, 20.0};
  spec.window = {WindowRuleKind::constant, 0.15};
  spec.radius = {0.5, 0.0};
  spec.samples = 500;
  spec.master_seed = 7;
  set_thread_count(1);
  const auto rows = run_moment_sweep(spec);
  set_thread_count(3);
  const auto again = run_moment_sweep(spec);
  set_thread_count(0);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].error == "empty_window");
  CHECK(std::isnan(rows[0].e_closed));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].error.empty());
    CHECK(rows[i].e_closed == doctest::Approx(rows[i].target).epsilon(1e-10));
    CHECK(rows[i].var_mc == again[i].var_mc);
    CHECK(rows[i].e_mc == again[i].e_mc);
    CHECK(rows[i].admissible);
  }
}

TEST_CASE("Weyl diagnostics") {
  const ManifoldModel t(ManifoldKind::torus2), s(ManifoldKind::sphere2);
  const auto probes = weyl_probe_points(s);
  REQUIRE(probes.size() == 32);
  CHECK(probes[0].x1 == 0.0);
  CHECK(probes[1].x1 == doctest::Approx(oracle::pi));
  CHECK(weyl_probe_points(t).size() == 32);
  const std::vector<double> grid{0.0, 5.0};
  const auto rows = run_weyl_diagnostics(t, grid);
  CHECK(rows[0].n_modes == 1);
  CHECK(rows[0].remainder == 1.0);
  CHECK(std::isnan(rows[0].remainder_scaled));
  CHECK(rows[1].n_modes == 81);
  const double lam = std::sqrt(20.0 * 21.0);
  const auto srow = run_weyl_diagnostics(s, std::vector<double>{lam});
  CHECK(srow[0].pointwise_base == doctest::Approx(21.0 / (4 * oracle::pi)).epsilon(1e-10));
  CHECK(srow[0].sup_pointwise >= srow[0].pointwise_base - 1e-12);
}

TEST_CASE("Sogge sweep") {
  const ManifoldModel s(ManifoldKind::sphere2);
  const auto w = SpectralWindow::build(s, std::sqrt(20.0 * 21.0), 1.0);
  const std::vector<double> radii{0.1, 0.3};
  const auto rep = run_sogge_sweep(w, {0.0, 0.0}, radii);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.spread >= 1.0);
  CHECK(rep.fitted_constant == doctest::Approx(std::sqrt(rep.rows[0].ratio * rep.rows[1].ratio)));
  CHECK(rep.rows[1].lambda_max > rep.rows[0].lambda_max);
}
