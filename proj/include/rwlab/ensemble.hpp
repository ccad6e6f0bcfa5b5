#ifndef RWLAB_ENSEMBLE_HPP
#define RWLAB_ENSEMBLE_HPP

#include "rwlab/spectral.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace rwlab {

enum class Normalization { unit_sphere, gaussian_raw };

/// Per-sample seed = splitmix64(master + (index + 1) * golden). Injective in
/// index for a fixed master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// The engine every sampler draws from.
using Engine = std::mt19937_64;

/// Fill `out` with a point uniform on the unit sphere S^{n-1}.
void fill_unit_sphere(std::uint64_t seed, std::span<double> out);
/// Fill `out` with i.i.d. N(0, variance) entries.
void fill_gaussian(std::uint64_t seed, double variance, std::span<double> out);

struct RandomWave {
  WindowPtr window;
  std::vector<double> coefficients;
  std::uint64_t seed = 0;
  Normalization normalization = Normalization::unit_sphere;
};

RandomWave sample_unit_sphere(const WindowPtr& w, std::uint64_t seed);
/// Coefficients i.i.d. normal with variance 1/N, so E||u||^2 = 1.
RandomWave sample_gaussian(const WindowPtr& w, std::uint64_t seed);

double eval_wave(const RandomWave& u, Point x);

/// Quadrature of |u|^2 over the ball.
double ball_mass(const RandomWave& u, const BallRegion& ball, int order = default_ball_order);

/// mu_d(|<a, s>| > t) as stated for a uniform on S^d with d + 1 coefficients:
/// (1 - t^2/|s|^2)^{(d-1)/2} for t < |s|, else 0.
double amplitude_tail(double s_norm, int d, double t);

/// Exact survival P(|a_1| > t) of one coordinate of a uniform point on
/// S^{n-1} (regularised incomplete beta I_{1-t^2}((n-1)/2, 1/2)).
double coordinate_tail(int n, double t);

// Monte Carlo batches -------------------------------------------------------

struct SampleStats {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0; // sum of squared deviations
  double min = 0.0;
  double max = 0.0;

  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double standard_error() const;
};

/// Mean / second moment / extremes through a fixed pairwise reduction tree,
/// so the result depends only on the values and their order.
SampleStats summarize(std::span<const double> values);

/// Standard error of the sample variance, sqrt((m4 - s^4 (n-3)/(n-1)) / n).
double variance_standard_error(std::span<const double> values);

inline constexpr std::size_t sample_block = 64;

/// Number of worker threads used by parallel loops (default: hardware).
void set_thread_count(unsigned n);
unsigned thread_count();

/// Run body(block_index) for every block in [0, blocks). Blocks are handed
/// out dynamically; bodies must write only to block-owned outputs.
void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body);

/// Values of one functional over count unit-sphere samples drawn from
/// derive_seed(master_seed, i).
struct SampleBatch {
  std::uint64_t master_seed = 0;
  std::size_t count = 0;
  std::vector<double> values;
  SampleStats stats;

  std::uint64_t seed_of(std::size_t index) const { return derive_seed(master_seed, index); }
};

/// Evaluator receives a dimension x k column-major block of coefficient
/// vectors and writes k functional values.
using BlockFunctional =
    std::function<void(const Eigen::MatrixXd& coefficients, std::span<double> out)>;

SampleBatch run_sphere_batch(std::size_t dimension, std::size_t count, std::uint64_t master_seed,
                             const BlockFunctional& functional);

} // namespace rwlab

#endif
