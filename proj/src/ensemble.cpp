#include "rwlab/ensemble.hpp"

#include "rwlab/error.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace rwlab {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::atomic<unsigned> g_threads{0};

SampleStats leaf_stats(std::span<const double> v) {
  SampleStats s;
  s.min = v.front();
  s.max = v.front();
  for (double x : v) {
    ++s.count;
    const double delta = x - s.mean;
    s.mean += delta / static_cast<double>(s.count);
    s.m2 += delta * (x - s.mean);
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  return s;
}

SampleStats merge(const SampleStats& a, const SampleStats& b) {
  SampleStats s;
  s.count = a.count + b.count;
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double delta = b.mean - a.mean;
  s.mean = a.mean + delta * nb / (na + nb);
  s.m2 = a.m2 + b.m2 + delta * delta * na * nb / (na + nb);
  s.min = std::min(a.min, b.min);
  s.max = std::max(a.max, b.max);
  return s;
}

SampleStats tree_stats(std::span<const double> v) {
  if (v.size() <= sample_block)
    return leaf_stats(v);
  const std::size_t mid = v.size() / 2;
  return merge(tree_stats(v.first(mid)), tree_stats(v.subspan(mid)));
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

void fill_unit_sphere(std::uint64_t seed, std::span<double> out) {
  if (out.empty())
    return;
  Engine eng(seed);
  std::normal_distribution<double> normal;
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (double& x : out) {
      x = normal(eng);
      norm_sq += x * x;
    }
  } while (norm_sq == 0.0);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : out)
    x *= inv;
}

void fill_gaussian(std::uint64_t seed, double variance, std::span<double> out) {
  Engine eng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(variance));
  for (double& x : out)
    x = normal(eng);
}

RandomWave sample_unit_sphere(const WindowPtr& w, std::uint64_t seed) {
  RandomWave u{w, std::vector<double>(w->dimension()), seed, Normalization::unit_sphere};
  fill_unit_sphere(seed, u.coefficients);
  return u;
}

RandomWave sample_gaussian(const WindowPtr& w, std::uint64_t seed) {
  RandomWave u{w, std::vector<double>(w->dimension()), seed, Normalization::gaussian_raw};
  fill_gaussian(seed, 1.0 / static_cast<double>(w->dimension()), u.coefficients);
  return u;
}

double eval_wave(const RandomWave& u, Point x) {
  const auto modes = u.window->modes();
  const ManifoldModel& m = u.window->manifold();
  double sum = 0.0;
  for (std::size_t j = 0; j < modes.size(); ++j)
    sum += u.coefficients[j] * eval_mode(m, modes[j], x);
  return sum;
}

double ball_mass(const RandomWave& u, const BallRegion& ball, int order) {
  const auto rule = ball_quadrature(u.window->manifold(), ball, order);
  const Eigen::MatrixXd basis = evaluate_basis(*u.window, rule.nodes);
  const Eigen::Map<const Eigen::VectorXd> a(u.coefficients.data(),
                                            static_cast<Eigen::Index>(u.coefficients.size()));
  const Eigen::VectorXd values = basis * a;
  double mass = 0.0;
  for (Eigen::Index p = 0; p < values.size(); ++p)
    mass += rule.weights[static_cast<std::size_t>(p)] * values[p] * values[p];
  return mass;
}

double amplitude_tail(double s_norm, int d, double t) {
  require(d >= 2, "amplitude_tail requires d >= 2");
  require(s_norm > 0.0, "amplitude_tail requires |s| > 0");
  require(t >= 0.0, "amplitude_tail requires t >= 0");
  if (t >= s_norm)
    return 0.0;
  const double ratio = t / s_norm;
  return std::pow(1.0 - ratio * ratio, 0.5 * (d - 1));
}

double coordinate_tail(int n, double t) {
  require(n >= 2, "coordinate_tail requires n >= 2");
  if (t <= 0.0)
    return 1.0;
  if (t >= 1.0)
    return 0.0;
  return boost::math::ibeta(0.5 * (n - 1), 0.5, 1.0 - t * t);
}

double SampleStats::standard_error() const {
  return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
}

SampleStats summarize(std::span<const double> values) {
  if (values.empty())
    return {};
  return tree_stats(values);
}

double variance_standard_error(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 4)
    return 0.0;
  const SampleStats s = summarize(values);
  double m4 = 0.0;
  for (double x : values) {
    const double d = x - s.mean;
    m4 += d * d * d * d;
  }
  const double nn = static_cast<double>(n);
  m4 /= nn;
  const double var = s.variance();
  const double v = (m4 - var * var * (nn - 3.0) / (nn - 1.0)) / nn;
  return std::sqrt(std::max(v, 0.0));
}

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
  const unsigned n = g_threads.load();
  if (n > 0)
    return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b)
      body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= blocks)
        return;
      try {
        body(b);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next.store(blocks);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i)
    pool.emplace_back(worker);
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

SampleBatch run_sphere_batch(std::size_t dimension, std::size_t count, std::uint64_t master_seed,
                             const BlockFunctional& functional) {
  require(dimension >= 1, "sample batch needs a non-empty window");
  SampleBatch batch;
  batch.master_seed = master_seed;
  batch.count = count;
  batch.values.assign(count, 0.0);
  const std::size_t blocks = (count + sample_block - 1) / sample_block;
  parallel_blocks(blocks, [&](std::size_t b) {
    const std::size_t first = b * sample_block;
    const std::size_t k = std::min(sample_block, count - first);
    Eigen::MatrixXd coeffs(static_cast<Eigen::Index>(dimension), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i)
      fill_unit_sphere(derive_seed(master_seed, first + i),
                       std::span<double>(coeffs.col(static_cast<Eigen::Index>(i)).data(),
                                         dimension));
    functional(coeffs, std::span<double>(batch.values).subspan(first, k));
  });
  batch.stats = summarize(batch.values);
  return batch;
}

} // namespace rwlab
