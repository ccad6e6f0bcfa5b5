#ifndef RWLAB_EXPERIMENTS_HPP
#define RWLAB_EXPERIMENTS_HPP

#include "rwlab/analytics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rwlab {

enum class WindowRuleKind { constant, power, full };

/// W(lambda): a constant, lambda^beta, or lambda itself (window [0, lambda]).
struct WindowRule {
  WindowRuleKind kind = WindowRuleKind::constant;
  double value = 1.0;

  double width_at(double lambda) const;
};

/// r(lambda) = scale * lambda^{-alpha}.
struct RadiusRule {
  double scale = 1.0;
  double alpha = 0.0;

  double radius_at(double lambda) const;
};

WindowPtr window_for(const ManifoldModel& m, double lambda, const WindowRule& rule);

struct SweepSpec {
  ManifoldModel manifold{ManifoldKind::torus2};
  std::vector<double> lambdas;
  WindowRule window;
  RadiusRule radius;
  Point center;
  std::size_t samples = 0; // 0 disables the Monte Carlo columns
  std::uint64_t master_seed = 0;
  int order = 0; // 0 selects auto_ball_order
};

struct SweepRow {
  double lambda = 0.0;
  double width = 0.0;
  double radius = 0.0;
  std::size_t n_modes = 0;
  double e_closed = 0.0;
  double e_mc = 0.0;
  double e_mc_se = 0.0;
  double target = 0.0;
  double var_exact = 0.0;
  double var_mc = 0.0;
  double var_mc_se = 0.0;
  double var_paper = 0.0;
  double var_ratio = 0.0; // var_exact / Vol(B)^2
  bool admissible = false; // r lambda > 1
  std::string error;       // non-empty marks a failed row
};

std::vector<SweepRow> run_moment_sweep(const SweepSpec& spec);

struct TailReport {
  std::vector<double> t;
  std::vector<double> empirical;
  std::vector<double> levy_bound;
  std::size_t n_samples = 0;
  std::size_t sphere_dimension = 0; // d = N - 1
  double lipschitz = 0.0;           // 2 lambda_max(M)
  double median = 0.0;
  double expectation = 0.0; // closed form trace(M)/N
  double mean_mc = 0.0;
};

/// t_grid empty: t_points equally spaced values from 0 to max |F - Me|.
TailReport run_tail_experiment(const WindowPtr& w, const BallRegion& ball, std::size_t samples,
                               std::vector<double> t_grid, std::uint64_t seed, int order = 0,
                               int t_points = 41);

/// Sample median; even counts average the two middle order statistics.
double empirical_median(std::vector<double> values);

struct CoverSpec {
  ManifoldModel manifold{ManifoldKind::torus2};
  double radius = 0.0;
  std::vector<Point> centers;
  int grid_size = 0; // torus: centers form a grid_size x grid_size tensor grid
};

CoverSpec build_cover(const ManifoldModel& m, double radius);

/// Uniformly random points (area measure) that lie farther than r from every
/// centre.
std::size_t uncovered_points(const CoverSpec& cover, std::size_t samples, std::uint64_t seed);

Point random_point(const ManifoldModel& m, Engine& eng);

enum class UniformRoute { automatic, spectral, quadrature };

struct UniformReport {
  double lambda = 0.0;
  double width = 0.0;
  double radius = 0.0;
  double delta = 0.0;
  double threshold = 0.0; // r^n lambda^{-delta}
  double target = 0.0;    // Vol(B) / Vol(M)
  std::size_t n_balls = 0;
  std::size_t n_samples = 0;
  double empirical_prob = 0.0;
  std::vector<double> per_ball_rates;
  double mean_max_deviation = 0.0;
  bool in_theorem_regime = false;
  double epsilon = 0.0;
  UniformRoute route = UniformRoute::automatic;
};

UniformReport run_uniform_experiment(const WindowPtr& w, const CoverSpec& cover, double delta,
                                     std::size_t samples, std::uint64_t seed,
                                     UniformRoute route = UniformRoute::automatic, int order = 0);

struct WeylRow {
  double lambda = 0.0;
  std::size_t n_modes = 0;
  double remainder = 0.0;
  double remainder_scaled = 0.0; // R / lambda^{n-1}
  double pointwise_base = 0.0;   // R(lambda, probe 0); the north pole on the sphere
  double sup_pointwise = 0.0;
  double pointwise_scaled = 0.0; // R(lambda, probe 0) / lambda^{n-1}
};

/// 32 deterministic probe points; the sphere set starts with both poles.
std::vector<Point> weyl_probe_points(const ManifoldModel& m);

std::vector<WeylRow> run_weyl_diagnostics(const ManifoldModel& m, std::span<const double> lambdas);

struct SoggeRow {
  double radius = 0.0;
  double lambda_max = 0.0;
  double ratio = 0.0; // lambda_max / r
  double lipschitz = 0.0;
  double envelope = 0.0; // r W or 1
};

struct SoggeReport {
  std::vector<SoggeRow> rows;
  double fitted_constant = 0.0; // geometric mean of the ratios
  double spread = 0.0;          // max ratio / min ratio
};

SoggeReport run_sogge_sweep(const WindowPtr& w, Point center, std::span<const double> radii,
                            int order = 0);

} // namespace rwlab

#endif
