#include "rwlab/spectral.hpp"

#include "rwlab/error.hpp"
#include "rwlab/special.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace rwlab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

int isqrt_int(std::int64_t n) {
  if (n < 0)
    return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n)
    --r;
  while ((r + 1) * (r + 1) <= n)
    ++r;
  return static_cast<int>(r);
}

double periodic_abs(double d) {
  double r = std::fmod(std::abs(d), two_pi);
  return std::min(r, two_pi - r);
}

} // namespace

SpectralWindow::SpectralWindow(const ManifoldModel& m, double lo, double hi)
    : manifold_(m), lower_(lo), upper_(hi), bounds_(squared_bounds(lo, hi)),
      modes_(enumerate_modes(m, lo, hi)) {
  if (modes_.empty())
    fail(ErrorCode::empty_window, "spectral window [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "] contains no eigenfrequency");
  if (m.kind() == ManifoldKind::torus2) {
    max_k_ = isqrt_int(bounds_.hi_sq);
    row_hi_.resize(max_k_ + 1);
    row_lo_.resize(max_k_ + 1);
    for (int k1 = 0; k1 <= max_k_; ++k1) {
      const std::int64_t k1sq = std::int64_t{k1} * k1;
      row_hi_[k1] = isqrt_int(bounds_.hi_sq - k1sq);
      const std::int64_t below = bounds_.lo_sq - k1sq;
      row_lo_[k1] = below <= 0 ? -1 : std::min(isqrt_int(below - 1), row_hi_[k1]);
    }
  } else {
    const auto& first = std::get<SphereLabel>(modes_.front().label);
    const auto& last = std::get<SphereLabel>(modes_.back().label);
    min_degree_ = first.l;
    max_degree_ = last.l;
  }
}

std::shared_ptr<const SpectralWindow> SpectralWindow::build(const ManifoldModel& m, double lambda,
                                                            double width) {
  require(std::isfinite(lambda) && std::isfinite(width), "window parameters must be finite");
  require(width > 0.0, "window width must be positive");
  require(width <= lambda, "window width W must satisfy W <= lambda");
  return std::shared_ptr<const SpectralWindow>(new SpectralWindow(m, lambda - width, lambda));
}

std::shared_ptr<const SpectralWindow> SpectralWindow::closed_interval(const ManifoldModel& m,
                                                                      double lo, double hi) {
  require(lo >= 0.0 && lo <= hi, "closed interval requires 0 <= lo <= hi");
  return std::shared_ptr<const SpectralWindow>(new SpectralWindow(m, lo, hi));
}

ProjectorKernel::ProjectorKernel(WindowPtr window) : window_(std::move(window)) {
  if (window_->manifold().kind() == ManifoldKind::torus2)
    prefix_.resize(static_cast<std::size_t>(window_->max_k()) + 2);
  else
    legendre_.resize(static_cast<std::size_t>(window_->max_degree()) + 1);
}

double ProjectorKernel::torus(double z1, double z2) {
  const int kmax = window_->max_k();
  const auto hi = window_->row_hi();
  const auto lo = window_->row_lo();

  // prefix_[m + 1] = sum_{|j| <= m} cos(j z2)
  prefix_[0] = 0.0;
  prefix_[1] = 1.0;
  std::complex<double> step = std::polar(1.0, z2);
  std::complex<double> rot = 1.0;
  for (int j = 1; j <= kmax; ++j) {
    rot = (j % 32 == 0) ? std::polar(1.0, j * z2) : rot * step;
    prefix_[j + 1] = prefix_[j] + 2.0 * rot.real();
  }

  double sum = 0.0;
  step = std::polar(1.0, z1);
  rot = 1.0;
  for (int k1 = 0; k1 <= kmax; ++k1) {
    if (k1 > 0)
      rot = (k1 % 32 == 0) ? std::polar(1.0, k1 * z1) : rot * step;
    if (lo[k1] >= hi[k1])
      continue;
    const double row = prefix_[hi[k1] + 1] - prefix_[lo[k1] + 1];
    sum += (k1 == 0 ? 1.0 : 2.0) * rot.real() * row;
  }
  return sum / (two_pi * two_pi);
}

double ProjectorKernel::sphere(double cos_d) {
  const int lmax = window_->max_degree();
  special::legendre_p_all(lmax, cos_d, legendre_);
  double sum = 0.0;
  for (int l = window_->min_degree(); l <= lmax; ++l)
    sum += (2.0 * l + 1.0) * legendre_[l];
  return sum / (4.0 * std::numbers::pi);
}

double ProjectorKernel::operator()(Point x, Point y) {
  if (window_->manifold().kind() == ManifoldKind::torus2)
    return torus(periodic_abs(x.x1 - y.x1), periodic_abs(x.x2 - y.x2));
  const auto a = sphere_to_vector(x);
  const auto b = sphere_to_vector(y);
  double c = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  c = std::clamp(c, -1.0, 1.0);
  return sphere(c);
}

double projector_kernel(const WindowPtr& w, Point x, Point y) {
  ProjectorKernel k(w);
  return k(x, y);
}

double projector_kernel_direct(const SpectralWindow& w, Point x, Point y) {
  const ManifoldModel& m = w.manifold();
  double sum = 0.0;
  for (const EigenMode& mode : w.modes())
    sum += eval_mode(m, mode, x) * eval_mode(m, mode, y);
  return sum;
}

Eigen::MatrixXd evaluate_basis(const SpectralWindow& w, std::span<const Point> nodes) {
  const auto modes = w.modes();
  Eigen::MatrixXd basis(static_cast<Eigen::Index>(nodes.size()),
                        static_cast<Eigen::Index>(modes.size()));
  if (w.manifold().kind() == ManifoldKind::torus2) {
    const int kmax = w.max_k();
    std::vector<std::complex<double>> e1(kmax + 1);
    std::vector<std::complex<double>> e2(2 * kmax + 1);
    const double scale = 1.0 / (std::numbers::pi * std::numbers::sqrt2);
    for (std::size_t p = 0; p < nodes.size(); ++p) {
      for (int k = 0; k <= kmax; ++k) {
        e1[k] = std::polar(1.0, k * nodes[p].x1);
        e2[kmax + k] = std::polar(1.0, k * nodes[p].x2);
        e2[kmax - k] = std::conj(e2[kmax + k]);
      }
      for (std::size_t j = 0; j < modes.size(); ++j) {
        const auto& t = std::get<TorusLabel>(modes[j].label);
        double v;
        if (t.parity == TorusParity::constant) {
          v = 1.0 / two_pi;
        } else {
          const std::complex<double> z = e1[t.k1] * e2[kmax + t.k2];
          v = scale * (t.parity == TorusParity::cosine ? z.real() : z.imag());
        }
        basis(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j)) = v;
      }
    }
    return basis;
  }

  const int lmax = w.max_degree();
  special::NormalizedLegendreTable table(lmax);
  std::vector<double> cm(lmax + 1);
  std::vector<double> sm(lmax + 1);
  for (std::size_t p = 0; p < nodes.size(); ++p) {
    table.compute(std::cos(nodes[p].x1), std::sin(nodes[p].x1));
    for (int k = 0; k <= lmax; ++k) {
      cm[k] = std::cos(k * nodes[p].x2);
      sm[k] = std::sin(k * nodes[p].x2);
    }
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const auto& s = std::get<SphereLabel>(modes[j].label);
      const int am = std::abs(s.m);
      double v = table(s.l, am);
      if (s.m > 0)
        v *= std::numbers::sqrt2 * cm[am];
      else if (s.m < 0)
        v *= std::numbers::sqrt2 * sm[am];
      basis(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return basis;
}

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double local_weyl_density(double lambda, int n) {
  return unit_ball_volume(n) * std::pow(lambda, n) / std::pow(two_pi, n);
}

double pointwise_weyl_remainder(const ManifoldModel& m, double lambda, Point x) {
  require(lambda >= 0.0, "pointwise_weyl_remainder requires lambda >= 0");
  const auto w = SpectralWindow::closed_interval(m, 0.0, lambda);
  return projector_kernel(w, x, x) - local_weyl_density(lambda, ManifoldModel::dimension);
}

double weyl_remainder(const ManifoldModel& m, double lambda) {
  require(lambda >= 0.0, "weyl_remainder requires lambda >= 0");
  const auto n = static_cast<double>(count_modes(m, 0.0, lambda));
  return n - m.volume() * local_weyl_density(lambda, ManifoldModel::dimension);
}

KernelProfile kernel_profile(const WindowPtr& w, Point x, double direction, double max_separation,
                             int samples) {
  const ManifoldModel& m = w->manifold();
  require(samples >= 2, "kernel_profile needs at least two samples");
  require(max_separation > 0.0 && max_separation <= m.injectivity_radius(),
          "kernel_profile: max_separation must lie in (0, injectivity radius]");
  const int n = ManifoldModel::dimension;
  const double lambda = w->lambda();
  const double width = w->width();

  KernelProfile prof;
  ProjectorKernel kernel(w);
  prof.separations.resize(samples);
  prof.values.resize(samples);
  for (int s = 0; s < samples; ++s) {
    const double d = max_separation * s / (samples - 1);
    prof.separations[s] = d;
    prof.values[s] = s == 0 ? kernel(x, x) : kernel(x, geodesic_point(m, x, direction, d));
  }

  const double near_scale = width * std::pow(lambda, n - 1);
  const double half = 0.5 * (n - 1);
  auto far_scale = [&](double d) { return width * std::pow(lambda, half) * std::pow(d, -half); };

  for (int s = 0; s < samples; ++s)
    if (prof.separations[s] <= 1.0 / lambda)
      prof.near_constant = std::max(prof.near_constant, std::abs(prof.values[s]) / near_scale);

  double sum_log_c = 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int s = 1; s + 1 < samples; ++s) {
    const double d = prof.separations[s];
    const double v = std::abs(prof.values[s]);
    if (d < 1.0 / lambda || v <= 0.0)
      continue;
    if (v < std::abs(prof.values[s - 1]) || v < std::abs(prof.values[s + 1]))
      continue;
    ++prof.peak_count;
    sum_log_c += std::log(v / far_scale(d));
    const double lx = std::log(d);
    const double ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  if (prof.peak_count > 0) {
    const double k = static_cast<double>(prof.peak_count);
    prof.far_constant = std::exp(sum_log_c / k);
    const double denom = k * sxx - sx * sx;
    prof.fitted_exponent = denom > 0.0 ? (k * sxy - sx * sy) / denom : 0.0;
  }

  prof.bound_values.resize(samples);
  for (int s = 0; s < samples; ++s) {
    const double d = prof.separations[s];
    prof.bound_values[s] =
        d <= 1.0 / lambda ? prof.near_constant * near_scale : prof.far_constant * far_scale(d);
  }
  return prof;
}

} // namespace rwlab
