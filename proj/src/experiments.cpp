#include "rwlab/experiments.hpp"

#include "rwlab/error.hpp"
#include "rwlab/special.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace rwlab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr int dim = ManifoldModel::dimension;
// Sphere cover cell size in units of r (below sqrt(2), which would leave no
// room for rounding).
constexpr double sphere_cover_spacing = 1.3;

QuadratureRule rule_for(const ManifoldModel& m, const BallRegion& ball, double lambda, int order) {
  return ball_quadrature(m, ball, order > 0 ? order : auto_ball_order(lambda, ball.radius()));
}

BallMassFunctional functional_for(const WindowPtr& w, const QuadratureRule& rule,
                                  const GramMatrix& gram) {
  if (gram.basis() == GramBasis::modes)
    return BallMassFunctional(gram);
  return BallMassFunctional(w, rule);
}

} // namespace

double WindowRule::width_at(double lambda) const {
  switch (kind) {
  case WindowRuleKind::constant:
    return value;
  case WindowRuleKind::power:
    return std::pow(lambda, value);
  case WindowRuleKind::full:
    return lambda;
  }
  return value;
}

double RadiusRule::radius_at(double lambda) const { return scale * std::pow(lambda, -alpha); }

WindowPtr window_for(const ManifoldModel& m, double lambda, const WindowRule& rule) {
  if (rule.kind == WindowRuleKind::full)
    return SpectralWindow::closed_interval(m, 0.0, lambda);
  return SpectralWindow::build(m, lambda, rule.width_at(lambda));
}

std::vector<SweepRow> run_moment_sweep(const SweepSpec& spec) {
  const ManifoldModel& m = spec.manifold;
  std::vector<SweepRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < spec.lambdas.size(); ++i) {
    SweepRow row;
    row.lambda = spec.lambdas[i];
    row.width = spec.window.width_at(row.lambda);
    row.radius = spec.radius.radius_at(row.lambda);
    row.admissible = row.radius * row.lambda > 1.0;
    const BallRegion ball(m, spec.center, row.radius);
    row.target = ball.volume() / m.volume();

    WindowPtr w;
    try {
      w = window_for(m, row.lambda, spec.window);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::empty_window)
        throw;
      row.error = "empty_window";
      row.e_closed = row.e_mc = row.e_mc_se = row.var_exact = row.var_mc = row.var_mc_se =
          row.var_paper = row.var_ratio = nan;
      rows.push_back(row);
      continue;
    }
    row.n_modes = w->dimension();

    const auto rule = rule_for(m, ball, row.lambda, spec.order);
    const GramMatrix gram = ball_gram(w, rule);
    row.e_closed = expected_ball_mass(gram);
    // a one-mode window has F = M_11 for every sample
    row.var_exact = row.n_modes >= 2 ? variance_ball_mass_exact(gram) : 0.0;
    row.var_paper = variance_ball_mass_paper(gram);
    row.var_ratio = row.var_exact / (ball.volume() * ball.volume());

    if (spec.samples > 0) {
      const auto functional = functional_for(w, rule, gram);
      const SampleBatch batch =
          run_sphere_batch(row.n_modes, spec.samples, derive_seed(spec.master_seed, i),
                           [&](const Eigen::MatrixXd& a, std::span<double> out) {
                             functional(a, out);
                           });
      row.e_mc = batch.stats.mean;
      row.e_mc_se = batch.stats.standard_error();
      row.var_mc = batch.stats.variance();
      row.var_mc_se = variance_standard_error(batch.values);
    } else {
      row.e_mc = row.e_mc_se = row.var_mc = row.var_mc_se = nan;
    }
    rows.push_back(row);
  }
  return rows;
}

double empirical_median(std::vector<double> values) {
  require(!values.empty(), "median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1)
    return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

TailReport run_tail_experiment(const WindowPtr& w, const BallRegion& ball, std::size_t samples,
                               std::vector<double> t_grid, std::uint64_t seed, int order,
                               int t_points) {
  require(samples >= 1000, "tail experiment needs at least 1000 samples");
  require(w->dimension() >= 3, "tail experiment needs a window of dimension >= 3");
  const ManifoldModel& m = w->manifold();
  const auto rule = rule_for(m, ball, w->lambda(), order);
  const GramMatrix gram = ball_gram(w, rule);
  const auto functional = functional_for(w, rule, gram);
  const SampleBatch batch = run_sphere_batch(
      w->dimension(), samples, seed,
      [&](const Eigen::MatrixXd& a, std::span<double> out) { functional(a, out); });

  TailReport rep;
  rep.n_samples = samples;
  rep.sphere_dimension = w->dimension() - 1;
  rep.lipschitz = lipschitz_bound(gram);
  rep.median = empirical_median(batch.values);
  rep.expectation = expected_ball_mass(gram);
  rep.mean_mc = batch.stats.mean;

  std::vector<double> dev(batch.values.size());
  for (std::size_t i = 0; i < dev.size(); ++i)
    dev[i] = std::abs(batch.values[i] - rep.median);
  std::sort(dev.begin(), dev.end());

  if (t_grid.empty()) {
    require(t_points >= 2, "tail experiment needs at least two grid points");
    const double tmax = dev.back();
    for (int k = 0; k < t_points; ++k)
      t_grid.push_back(tmax * k / (t_points - 1));
  }
  const double d = static_cast<double>(rep.sphere_dimension);
  for (double t : t_grid) {
    require(t >= 0.0, "tail thresholds must be nonnegative");
    const auto above = static_cast<double>(dev.end() - std::upper_bound(dev.begin(), dev.end(), t));
    rep.t.push_back(t);
    rep.empirical.push_back(above / static_cast<double>(samples));
    rep.levy_bound.push_back(std::exp(-(d - 1.0) * t * t / (2.0 * rep.lipschitz * rep.lipschitz)));
  }
  return rep;
}

CoverSpec build_cover(const ManifoldModel& m, double radius) {
  require(radius > 0.0 && radius <= m.injectivity_radius(),
          "cover radius must lie in (0, injectivity radius]");
  CoverSpec cover{m, radius, {}, 0};
  if (m.kind() == ManifoldKind::torus2) {
    const int n = static_cast<int>(std::ceil(two_pi / radius - 1e-12));
    cover.grid_size = n;
    const double h = two_pi / n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        cover.centers.push_back({i * h, j * h});
    return cover;
  }
  // Bands of height h and longitudinal spacing at most h along the widest
  // edge; the farthest point of a cell is about h / sqrt(2) < r away.
  const double target = sphere_cover_spacing * radius;
  const int bands = static_cast<int>(std::ceil(std::numbers::pi / target - 1e-12));
  const double h = std::numbers::pi / bands;
  for (int i = 0; i < bands; ++i) {
    const double theta = (i + 0.5) * h;
    const double top = i * h;
    const double bottom = (i + 1) * h;
    const double widest = (top <= 0.5 * std::numbers::pi && bottom >= 0.5 * std::numbers::pi)
                              ? 1.0
                              : std::max(std::sin(top), std::sin(bottom));
    const int n_phi = std::max(1, static_cast<int>(std::ceil(two_pi * widest / target - 1e-12)));
    const double offset = (i % 2 == 0) ? 0.0 : 0.5;
    for (int j = 0; j < n_phi; ++j)
      cover.centers.push_back(m.canonical({theta, two_pi * (j + offset) / n_phi}));
  }
  return cover;
}

Point random_point(const ManifoldModel& m, Engine& eng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (m.kind() == ManifoldKind::torus2)
    return m.canonical({two_pi * u(eng), two_pi * u(eng)});
  const double z = 2.0 * u(eng) - 1.0;
  return m.canonical({std::acos(z), two_pi * u(eng)});
}

std::size_t uncovered_points(const CoverSpec& cover, std::size_t samples, std::uint64_t seed) {
  Engine eng(seed);
  std::size_t missed = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Point p = random_point(cover.manifold, eng);
    bool hit = false;
    for (const Point& c : cover.centers) {
      if (geodesic_distance(cover.manifold, p, c) <= cover.radius) {
        hit = true;
        break;
      }
    }
    if (!hit)
      ++missed;
  }
  return missed;
}

namespace {

// F at every centre of a torus tensor cover through the Fourier series of
// |u|^2 convolved with the disk indicator.
class SpectralCoverEvaluator {
public:
  SpectralCoverEvaluator(const WindowPtr& w, int grid_size, double radius)
      : kmax_(w->max_k()), q_(4 * kmax_ + 1), n_(grid_size) {
    auto point_index = [&](int k1, int k2) {
      const auto key = std::pair{k1, k2};
      const auto it = std::find(keys_.begin(), keys_.end(), key);
      if (it != keys_.end())
        return static_cast<int>(it - keys_.begin());
      keys_.push_back(key);
      return static_cast<int>(keys_.size() - 1);
    };
    for (const EigenMode& mode : w->modes()) {
      const auto& t = std::get<TorusLabel>(mode.label);
      Term term;
      term.parity = t.parity;
      term.plus = point_index(t.k1, t.k2);
      term.minus = t.parity == TorusParity::constant ? term.plus : point_index(-t.k1, -t.k2);
      terms_.push_back(term);
    }
    transform_.resize(static_cast<std::size_t>(q_) * q_);
    for (int a = 0; a < q_; ++a)
      for (int b = 0; b < q_; ++b) {
        const double q1 = a - 2 * kmax_;
        const double q2 = b - 2 * kmax_;
        transform_[static_cast<std::size_t>(a) * q_ + b] =
            special::disk_transform(std::hypot(q1, q2), radius);
      }
    phases_.resize(n_, q_);
    for (int i = 0; i < n_; ++i)
      for (int a = 0; a < q_; ++a)
        phases_(i, a) = std::polar(1.0, (a - 2 * kmax_) * two_pi * i / n_);
  }

  // Ball masses for coefficient vector a, indexed [i * n + j].
  void evaluate(std::span<const double> a, std::vector<double>& out) const {
    const double f = 1.0 / (two_pi * std::numbers::sqrt2);
    std::vector<std::complex<double>> b(keys_.size());
    for (std::size_t j = 0; j < terms_.size(); ++j) {
      const Term& t = terms_[j];
      switch (t.parity) {
      case TorusParity::constant:
        b[t.plus] += a[j] / two_pi;
        break;
      case TorusParity::cosine:
        b[t.plus] += a[j] * f;
        b[t.minus] += a[j] * f;
        break;
      case TorusParity::sine:
        b[t.plus] += std::complex<double>(0.0, -a[j] * f);
        b[t.minus] += std::complex<double>(0.0, a[j] * f);
        break;
      }
    }
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(q_, q_);
    const int off = 2 * kmax_;
    for (std::size_t p = 0; p < keys_.size(); ++p) {
      c(keys_[p].first * 2 + off, keys_[p].second * 2 + off) += b[p] * b[p];
      for (std::size_t r = p + 1; r < keys_.size(); ++r)
        c(keys_[p].first + keys_[r].first + off, keys_[p].second + keys_[r].second + off) +=
            2.0 * b[p] * b[r];
    }
    for (int x = 0; x < q_; ++x)
      for (int y = 0; y < q_; ++y)
        c(x, y) *= transform_[static_cast<std::size_t>(x) * q_ + y];
    const Eigen::MatrixXcd grid = phases_ * c * phases_.transpose();
    out.resize(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        out[static_cast<std::size_t>(i) * n_ + j] = grid(i, j).real();
  }

private:
  struct Term {
    TorusParity parity;
    int plus;
    int minus;
  };
  int kmax_;
  int q_;
  int n_;
  std::vector<std::pair<int, int>> keys_;
  std::vector<Term> terms_;
  std::vector<double> transform_;
  Eigen::MatrixXcd phases_;
};

void theorem_regime(UniformReport& rep) {
  const double n = dim;
  const double loglam = std::log(rep.lambda);
  if (loglam <= 0.0)
    return;
  if (rep.radius <= 1.0 / rep.width) {
    rep.epsilon =
        2.0 * (std::log(rep.radius) - std::log(rep.width) / (2.0 * (n - 1.0))) / loglam + 1.0;
    rep.in_theorem_regime =
        rep.radius >= 1.0 / rep.lambda && rep.epsilon > 2.0 * rep.delta / (n - 1.0);
  } else {
    rep.epsilon = 2.0 * (std::log(rep.radius) + std::log(rep.width) / (2.0 * n)) / loglam +
                  (n - 1.0) / n;
    rep.in_theorem_regime = rep.epsilon > 2.0 * rep.delta / n;
  }
}

} // namespace

UniformReport run_uniform_experiment(const WindowPtr& w, const CoverSpec& cover, double delta,
                                     std::size_t samples, std::uint64_t seed, UniformRoute route,
                                     int order) {
  const ManifoldModel& m = w->manifold();
  require(m.kind() == cover.manifold.kind(), "cover and window live on different manifolds");
  require(!cover.centers.empty(), "empty cover");
  require(samples >= 1, "uniform experiment needs samples");
  require(delta >= 0.0, "deviation exponent delta must be nonnegative");
  if (route == UniformRoute::automatic)
    route = (m.kind() == ManifoldKind::torus2 && cover.grid_size > 0) ? UniformRoute::spectral
                                                                     : UniformRoute::quadrature;
  require(route != UniformRoute::spectral ||
              (m.kind() == ManifoldKind::torus2 && cover.grid_size > 0),
          "spectral route needs a torus tensor-grid cover");

  UniformReport rep;
  rep.lambda = w->lambda();
  rep.width = w->width();
  rep.radius = cover.radius;
  rep.delta = delta;
  rep.threshold = std::pow(cover.radius, dim) * std::pow(w->lambda(), -delta);
  rep.target = ball_volume(m, cover.radius) / m.volume();
  rep.n_balls = cover.centers.size();
  rep.n_samples = samples;
  rep.route = route;
  theorem_regime(rep);

  const std::size_t balls = cover.centers.size();
  const std::size_t n = w->dimension();
  std::vector<unsigned char> deviates(samples * balls, 0);
  std::vector<double> max_dev(samples, 0.0);

  if (route == UniformRoute::spectral) {
    const SpectralCoverEvaluator eval(w, cover.grid_size, cover.radius);
    const std::size_t blocks = (samples + sample_block - 1) / sample_block;
    parallel_blocks(blocks, [&](std::size_t blk) {
      std::vector<double> a(n);
      std::vector<double> masses;
      const std::size_t end = std::min(samples, (blk + 1) * sample_block);
      for (std::size_t s = blk * sample_block; s < end; ++s) {
        fill_unit_sphere(derive_seed(seed, s), a);
        eval.evaluate(a, masses);
        for (std::size_t k = 0; k < balls; ++k) {
          const double dev = std::abs(masses[k] - rep.target);
          max_dev[s] = std::max(max_dev[s], dev);
          deviates[s * balls + k] = dev >= rep.threshold ? 1 : 0;
        }
      }
    });
  } else {
    Eigen::MatrixXd coeffs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(samples));
    for (std::size_t s = 0; s < samples; ++s)
      fill_unit_sphere(derive_seed(seed, s),
                       std::span<double>(coeffs.col(static_cast<Eigen::Index>(s)).data(), n));
    std::vector<std::vector<double>> masses(balls);
    parallel_blocks(balls, [&](std::size_t k) {
      const BallRegion ball(m, cover.centers[k], cover.radius);
      const auto rule = rule_for(m, ball, w->lambda(), order);
      const BallMassFunctional functional(w, rule);
      masses[k].resize(samples);
      functional(coeffs, masses[k]);
    });
    for (std::size_t k = 0; k < balls; ++k)
      for (std::size_t s = 0; s < samples; ++s) {
        const double dev = std::abs(masses[k][s] - rep.target);
        max_dev[s] = std::max(max_dev[s], dev);
        deviates[s * balls + k] = dev >= rep.threshold ? 1 : 0;
      }
  }

  std::size_t failing = 0;
  rep.per_ball_rates.assign(balls, 0.0);
  for (std::size_t s = 0; s < samples; ++s) {
    bool any = false;
    for (std::size_t k = 0; k < balls; ++k) {
      if (deviates[s * balls + k]) {
        any = true;
        rep.per_ball_rates[k] += 1.0;
      }
    }
    failing += any ? 1 : 0;
  }
  for (double& r : rep.per_ball_rates)
    r /= static_cast<double>(samples);
  rep.empirical_prob = static_cast<double>(failing) / static_cast<double>(samples);
  rep.mean_max_deviation = summarize(max_dev).mean;
  return rep;
}

std::vector<Point> weyl_probe_points(const ManifoldModel& m) {
  std::vector<Point> probes;
  constexpr int count = 32;
  if (m.kind() == ManifoldKind::torus2) {
    probes.push_back({0.0, 0.0});
    // Kronecker sequence with the plastic-number increments
    const double g = 1.32471795724474602596;
    const double a1 = 1.0 / g;
    const double a2 = 1.0 / (g * g);
    for (int i = 1; i < count; ++i)
      probes.push_back(m.canonical({two_pi * std::fmod(0.5 + a1 * i, 1.0),
                                    two_pi * std::fmod(0.5 + a2 * i, 1.0)}));
    return probes;
  }
  probes.push_back({0.0, 0.0});
  probes.push_back({std::numbers::pi, 0.0});
  const int rest = count - 2;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < rest; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / rest;
    probes.push_back(m.canonical({std::acos(z), golden * i}));
  }
  return probes;
}

std::vector<WeylRow> run_weyl_diagnostics(const ManifoldModel& m, std::span<const double> lambdas) {
  const auto probes = weyl_probe_points(m);
  std::vector<WeylRow> rows;
  for (double lambda : lambdas) {
    require(lambda >= 0.0, "Weyl diagnostics need lambda >= 0");
    WeylRow row;
    row.lambda = lambda;
    row.n_modes = count_modes(m, 0.0, lambda);
    row.remainder = weyl_remainder(m, lambda);
    const double scale = std::pow(lambda, dim - 1);
    const auto w = SpectralWindow::closed_interval(m, 0.0, lambda);
    ProjectorKernel kernel(w);
    const double lead = local_weyl_density(lambda, dim);
    row.sup_pointwise = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const double r = kernel(probes[i], probes[i]) - lead;
      if (i == 0)
        row.pointwise_base = r;
      row.sup_pointwise = std::max(row.sup_pointwise, r);
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.remainder_scaled = lambda > 0.0 ? row.remainder / scale : nan;
    row.pointwise_scaled = lambda > 0.0 ? row.pointwise_base / scale : nan;
    rows.push_back(row);
  }
  return rows;
}

SoggeReport run_sogge_sweep(const WindowPtr& w, Point center, std::span<const double> radii,
                            int order) {
  require(!radii.empty(), "Sogge sweep needs at least one radius");
  const ManifoldModel& m = w->manifold();
  SoggeReport rep;
  double log_sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double r : radii) {
    const BallRegion ball(m, center, r);
    const auto rule = rule_for(m, ball, w->lambda(), order);
    const GramMatrix gram = ball_gram(w, rule);
    SoggeRow row;
    row.radius = r;
    row.lambda_max = worst_case_ball_mass(gram);
    row.ratio = row.lambda_max / r;
    row.lipschitz = 2.0 * row.lambda_max;
    row.envelope = lipschitz_envelope(w->lambda(), w->width(), r);
    log_sum += std::log(row.ratio);
    lo = std::min(lo, row.ratio);
    hi = std::max(hi, row.ratio);
    rep.rows.push_back(row);
  }
  rep.fitted_constant = std::exp(log_sum / static_cast<double>(radii.size()));
  rep.spread = hi / lo;
  return rep;
}

} // namespace rwlab
