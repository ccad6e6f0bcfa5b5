#include "oracles.hpp"

#include "rwlab/analytics.hpp"
#include "rwlab/error.hpp"

#include <doctest.h>

#include <random>

using namespace rwlab;

TEST_CASE("torus ball Gram matrix matches the exact Bessel oracle") {
  const ManifoldModel t(ManifoldKind::torus2);
  const double r = 0.3;
  const Point c{1.1, 2.5};
  const auto w = SpectralWindow::build(t, 20.0, 3.0);
  const auto g = gram_matrix(w, BallRegion(t, c, r), 48);
  const auto ks = oracle::lattice_points(17.0, 20.0);
  REQUIRE(ks.size() == w->dimension());
  const auto ref = oracle::summarize_hermitian(oracle::torus_complex_gram(ks, c.x1, c.x2, r));
  CHECK(g.trace() == doctest::Approx(ref.trace).epsilon(1e-11));
  CHECK(g.frobenius_sq() == doctest::Approx(ref.frobenius_sq).epsilon(1e-10));
  CHECK(worst_case_ball_mass(g) == doctest::Approx(ref.lambda_max).epsilon(1e-8));
  CHECK((g.entries() - g.entries().transpose()).cwiseAbs().maxCoeff() == 0.0);
  // E(F) is exactly the area ratio on the torus
  CHECK(expected_ball_mass(g) == doctest::Approx(oracle::pi * r * r / t.volume()).epsilon(1e-12));
}

TEST_CASE("node-basis Gram shares trace, Frobenius norm and top eigenvalue") {
  const ManifoldModel s(ManifoldKind::sphere2);
  const auto w = SpectralWindow::build(s, std::sqrt(25.0 * 26.0), 4.0);
  const BallRegion ball(s, {0.8, 1.9}, 0.35);
  const auto rule = ball_quadrature(s, ball, 20);
  const auto modes = gram_matrix(*w, rule);
  const auto nodes = node_kernel_gram(w, rule);
  CHECK(nodes.basis() == GramBasis::nodes);
  CHECK(nodes.window_dimension() == w->dimension());
  CHECK(nodes.trace() == doctest::Approx(modes.trace()).epsilon(1e-11));
  CHECK(nodes.frobenius_sq() == doctest::Approx(modes.frobenius_sq()).epsilon(1e-10));
  const auto a = oracle::summarize_symmetric(modes.entries());
  const auto b = oracle::summarize_symmetric(nodes.entries());
  CHECK(b.lambda_max == doctest::Approx(a.lambda_max).epsilon(1e-10));
}

TEST_CASE("power iteration agrees with a dense eigensolver") {
  const ManifoldModel s(ManifoldKind::sphere2);
  const auto w = SpectralWindow::build(s, std::sqrt(50.0 * 51.0), 1.0);
  REQUIRE(w->dimension() == 101);
  for (double r : {0.05, 0.2, 0.4}) {
    const auto g = gram_matrix(w, BallRegion(s, {0.0, 0.0}, r), auto_ball_order(w->lambda(), r));
    const auto ref = oracle::summarize_symmetric(g.entries());
    CHECK(std::abs(worst_case_ball_mass(g) - ref.lambda_max) < 1e-8);
    CHECK(lipschitz_bound(g) == doctest::Approx(2.0 * ref.lambda_max).epsilon(1e-8));
  }
}

TEST_CASE("moment formulas") {
  const ManifoldModel t(ManifoldKind::torus2);
  const auto w = SpectralWindow::build(t, 12.0, 2.0);
  const BallRegion ball(t, {0.0, 0.0}, 0.6);
  const auto g = gram_matrix(w, ball, 32);
  const double n = double(w->dimension());
  const double tr = g.trace(), fr = g.frobenius_sq();
  const double exact = variance_ball_mass_exact(g);
  const double paper = variance_ball_mass_paper(g);
  CHECK(paper == doctest::Approx(2.0 * fr / (n * n)));
  // the two expressions differ by exactly (2 + rho) / (N - rho), rho = tr^2 / |M|_F^2
  const double rho = tr * tr / fr;
  CHECK((paper - exact) / exact == doctest::Approx((2.0 + rho) / (n - rho)).epsilon(1e-10));
  const auto rep = moment_report(g, ball.volume(), t.volume());
  CHECK(rep.expectation == doctest::Approx(tr / n));
  CHECK(rep.variance_exact == exact);
  CHECK(rep.target == doctest::Approx(ball.volume() / t.volume()));

  // Monte Carlo oracle for both moments
  const BallMassFunctional f(w, ball_quadrature(t, ball, 32));
  const auto batch = run_sphere_batch(w->dimension(), 40000, 1234,
                                      [&](const Eigen::MatrixXd& a, std::span<double> out) { f(a, out); });
  CHECK(std::abs(batch.stats.mean - rep.expectation) < 4.0 * batch.stats.standard_error());
  CHECK(std::abs(batch.stats.variance() - exact) < 4.0 * variance_standard_error(batch.values));
}

TEST_CASE("degenerate windows") {
  const ManifoldModel t(ManifoldKind::torus2);
  const auto w = SpectralWindow::closed_interval(t, 0.0, 0.0);
  REQUIRE(w->dimension() == 1);
  const auto g = gram_matrix(w, BallRegion(t, {}, 0.5), 16);
  try {
    (void)variance_ball_mass_exact(g);
    FAIL("expected degenerate_window");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_window);
  }
  CHECK(expected_ball_mass(g) == doctest::Approx(0.25 * 0.25 * oracle::pi / (oracle::pi * oracle::pi)));
}

TEST_CASE("ball mass functional paths agree and respect the Lipschitz bound") {
  const ManifoldModel s(ManifoldKind::sphere2);
  const auto w = SpectralWindow::build(s, 30.0, 3.0);
  const BallRegion ball(s, {1.0, 1.0}, 0.25);
  // fewer nodes than modes, so the constructor picks the node path
  const auto rule = ball_quadrature(s, ball, 6);
  REQUIRE(rule.size() < w->dimension());
  const BallMassFunctional via_nodes(w, rule);
  CHECK_FALSE(via_nodes.uses_gram());
  CHECK_THROWS_AS(BallMassFunctional(w, rule, 10), Error);
  const BallMassFunctional via_gram(gram_matrix(*w, rule));
  CHECK(via_gram.uses_gram());
  const auto g = gram_matrix(*w, rule);
  const double lip = lipschitz_bound(g);
  std::vector<double> a(w->dimension()), b(w->dimension());
  for (std::uint64_t i = 0; i < 50; ++i) {
    fill_unit_sphere(i, a);
    fill_unit_sphere(i + 1000, b);
    const double fa = via_gram(a);
    CHECK(fa == doctest::Approx(via_nodes(a)).epsilon(1e-12));
    double dist = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
      dist += (a[j] - b[j]) * (a[j] - b[j]);
    CHECK(std::abs(fa - via_gram(b)) <= lip * std::sqrt(dist) + 1e-14);
  }
}

TEST_CASE("Lipschitz envelope and quadrature order") {
  CHECK(lipschitz_envelope(100.0, 2.0, 0.1) == doctest::Approx(0.2));
  CHECK(lipschitz_envelope(100.0, 2.0, 0.9) == 1.0);
  CHECK(auto_ball_order(10.0, 0.1) == 17);
  CHECK(auto_ball_order(1000.0, 1.0) == 64);
}
