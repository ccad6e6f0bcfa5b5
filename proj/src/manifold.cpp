#include "rwlab/manifold.hpp"

#include "rwlab/error.hpp"
#include "rwlab/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rwlab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  double r = std::fmod(a, two_pi);
  if (r < 0.0)
    r += two_pi;
  if (r >= two_pi)
    r = 0.0;
  return r;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0)
    return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n)
    --r;
  while ((r + 1) * (r + 1) <= n)
    ++r;
  return r;
}

double snap_square(double x) {
  const double s = x * x;
  const double r = std::round(s);
  if (std::abs(s - r) <= 1e-9 * std::max(1.0, s))
    return r;
  return s;
}

// lattice points with |k|^2 <= n
std::int64_t lattice_count_upto(std::int64_t n) {
  if (n < 0)
    return 0;
  const std::int64_t k = isqrt(n);
  std::int64_t total = 0;
  for (std::int64_t k1 = -k; k1 <= k; ++k1)
    total += 2 * isqrt(n - k1 * k1) + 1;
  return total;
}

std::int64_t sphere_count_upto(std::int64_t n) {
  if (n < 0)
    return 0;
  // largest l with l(l+1) <= n
  std::int64_t l = isqrt(n);
  while (l * (l + 1) > n)
    --l;
  return (l + 1) * (l + 1);
}

std::int64_t frequency_cap_sq(const ManifoldModel& m) {
  return static_cast<std::int64_t>(std::floor(snap_square(m.frequency_cap())));
}

double normalized_legendre(int l, int m, double c, double s) {
  double pmm = 0.5 / std::sqrt(std::numbers::pi);
  for (int k = 1; k <= m; ++k)
    pmm *= std::sqrt(1.0 + 0.5 / k) * s;
  if (l == m)
    return pmm;
  double p_prev = pmm;
  double p = std::sqrt(2.0 * m + 3.0) * c * pmm;
  for (int ll = m + 2; ll <= l; ++ll) {
    const double dl = ll;
    const double dm = m;
    const double a = std::sqrt((4.0 * dl * dl - 1.0) / (dl * dl - dm * dm));
    const double b =
        std::sqrt(((dl - 1.0) * (dl - 1.0) - dm * dm) / (4.0 * (dl - 1.0) * (dl - 1.0) - 1.0));
    const double next = a * (c * p - b * p_prev);
    p_prev = p;
    p = next;
  }
  return p;
}

// Rotation taking the north pole to `center`.
struct PoleRotation {
  double ct, st, cp, sp;
  explicit PoleRotation(Point center)
      : ct(std::cos(center.x1)), st(std::sin(center.x1)), cp(std::cos(center.x2)),
        sp(std::sin(center.x2)) {}

  std::array<double, 3> apply(const std::array<double, 3>& v) const {
    // R_z(phi) R_y(theta) v
    const double x = ct * v[0] + st * v[2];
    const double y = v[1];
    const double z = -st * v[0] + ct * v[2];
    return {cp * x - sp * y, sp * x + cp * y, z};
  }
};

} // namespace

std::string_view to_string(ManifoldKind kind) {
  return kind == ManifoldKind::torus2 ? "torus2" : "sphere2";
}

ManifoldKind parse_manifold_kind(std::string_view name) {
  if (name == "torus2")
    return ManifoldKind::torus2;
  if (name == "sphere2")
    return ManifoldKind::sphere2;
  fail(ErrorCode::invalid_argument,
       "unknown manifold '" + std::string(name) + "' (expected torus2 or sphere2)");
}

ManifoldModel::ManifoldModel(ManifoldKind kind)
    : ManifoldModel(kind, kind == ManifoldKind::torus2
                              ? default_torus_frequency_cap
                              : std::sqrt(static_cast<double>(default_sphere_degree_cap) *
                                          (default_sphere_degree_cap + 1))) {}

ManifoldModel::ManifoldModel(ManifoldKind kind, double frequency_cap)
    : kind_(kind), frequency_cap_(frequency_cap) {
  require(frequency_cap > 0.0, "frequency cap must be positive");
}

double ManifoldModel::volume() const {
  return kind_ == ManifoldKind::torus2 ? 4.0 * std::numbers::pi * std::numbers::pi
                                       : 4.0 * std::numbers::pi;
}

double ManifoldModel::injectivity_radius() const { return std::numbers::pi; }

double ManifoldModel::diameter() const {
  return kind_ == ManifoldKind::torus2 ? std::numbers::pi * std::numbers::sqrt2 : std::numbers::pi;
}

double ManifoldModel::weyl_constant() const { return std::numbers::pi; }

Point ManifoldModel::canonical(Point p) const {
  if (kind_ == ManifoldKind::torus2)
    return {wrap_angle(p.x1), wrap_angle(p.x2)};
  double theta = wrap_angle(p.x1);
  double phi = p.x2;
  if (theta > std::numbers::pi) {
    theta = two_pi - theta;
    phi += std::numbers::pi;
  }
  phi = wrap_angle(phi);
  if (theta == 0.0 || theta == std::numbers::pi)
    phi = 0.0;
  return {theta, phi};
}

std::array<double, 3> sphere_to_vector(Point p) {
  const double s = std::sin(p.x1);
  return {s * std::cos(p.x2), s * std::sin(p.x2), std::cos(p.x1)};
}

Point sphere_from_vector(const std::array<double, 3>& v) {
  const double rho = std::hypot(v[0], v[1]);
  const double theta = std::atan2(rho, v[2]);
  double phi = (rho == 0.0) ? 0.0 : std::atan2(v[1], v[0]);
  phi = wrap_angle(phi);
  if (theta == 0.0 || theta == std::numbers::pi)
    phi = 0.0;
  return {theta, phi};
}

double geodesic_distance(const ManifoldModel& m, Point x, Point y) {
  if (m.kind() == ManifoldKind::torus2) {
    double d1 = std::abs(wrap_angle(x.x1) - wrap_angle(y.x1));
    double d2 = std::abs(wrap_angle(x.x2) - wrap_angle(y.x2));
    d1 = std::min(d1, two_pi - d1);
    d2 = std::min(d2, two_pi - d2);
    return std::hypot(d1, d2);
  }
  const auto a = sphere_to_vector(x);
  const auto b = sphere_to_vector(y);
  const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  const double c0 = a[1] * b[2] - a[2] * b[1];
  const double c1 = a[2] * b[0] - a[0] * b[2];
  const double c2 = a[0] * b[1] - a[1] * b[0];
  return std::atan2(std::sqrt(c0 * c0 + c1 * c1 + c2 * c2), dot);
}

Point geodesic_point(const ManifoldModel& m, Point x, double direction, double d) {
  if (m.kind() == ManifoldKind::torus2)
    return m.canonical({x.x1 + d * std::cos(direction), x.x2 + d * std::sin(direction)});
  const double s = std::sin(d);
  const std::array<double, 3> local{s * std::cos(direction), s * std::sin(direction), std::cos(d)};
  return sphere_from_vector(PoleRotation(m.canonical(x)).apply(local));
}

SquaredBounds squared_bounds(double lo, double hi) {
  require(std::isfinite(lo) && std::isfinite(hi), "frequency bounds must be finite");
  require(lo <= hi, "frequency interval requires lo <= hi");
  SquaredBounds b;
  b.lo_sq = lo <= 0.0 ? 0 : static_cast<std::int64_t>(std::ceil(snap_square(lo)));
  b.hi_sq = hi < 0.0 ? -1 : static_cast<std::int64_t>(std::floor(snap_square(hi)));
  return b;
}

std::size_t count_modes(const ManifoldModel& m, double lo, double hi) {
  require(lo >= 0.0, "enumerate_modes requires lo >= 0");
  const SquaredBounds b = squared_bounds(lo, hi);
  if (b.hi_sq > frequency_cap_sq(m))
    fail(ErrorCode::resource_limit, "frequency " + std::to_string(hi) + " exceeds the cap " +
                                        std::to_string(m.frequency_cap()));
  if (m.kind() == ManifoldKind::torus2)
    return static_cast<std::size_t>(lattice_count_upto(b.hi_sq) - lattice_count_upto(b.lo_sq - 1));
  return static_cast<std::size_t>(sphere_count_upto(b.hi_sq) - sphere_count_upto(b.lo_sq - 1));
}

std::vector<EigenMode> enumerate_modes(const ManifoldModel& m, double lo, double hi) {
  require(lo >= 0.0, "enumerate_modes requires lo >= 0");
  const SquaredBounds b = squared_bounds(lo, hi);
  if (b.hi_sq > frequency_cap_sq(m))
    fail(ErrorCode::resource_limit, "frequency " + std::to_string(hi) + " exceeds the cap " +
                                        std::to_string(m.frequency_cap()));
  std::vector<EigenMode> modes;
  if (b.hi_sq < b.lo_sq)
    return modes;

  if (m.kind() == ManifoldKind::torus2) {
    struct Rep {
      std::int64_t n;
      int k1, k2;
    };
    std::vector<Rep> reps;
    const auto kmax = static_cast<int>(isqrt(b.hi_sq));
    for (int k1 = 0; k1 <= kmax; ++k1) {
      for (int k2 = -kmax; k2 <= kmax; ++k2) {
        if (k1 == 0 && k2 < 0)
          continue;
        const std::int64_t n = std::int64_t{k1} * k1 + std::int64_t{k2} * k2;
        if (n < b.lo_sq || n > b.hi_sq)
          continue;
        reps.push_back({n, k1, k2});
      }
    }
    std::sort(reps.begin(), reps.end(), [](const Rep& a, const Rep& c) {
      if (a.n != c.n)
        return a.n < c.n;
      if (a.k1 != c.k1)
        return a.k1 < c.k1;
      return a.k2 < c.k2;
    });
    std::size_t id = static_cast<std::size_t>(lattice_count_upto(b.lo_sq - 1));
    modes.reserve(2 * reps.size());
    for (const Rep& r : reps) {
      const double f = std::sqrt(static_cast<double>(r.n));
      if (r.n == 0) {
        modes.push_back({id++, 0.0, 0, TorusLabel{0, 0, TorusParity::constant}});
        continue;
      }
      modes.push_back({id++, f, r.n, TorusLabel{r.k1, r.k2, TorusParity::cosine}});
      modes.push_back({id++, f, r.n, TorusLabel{r.k1, r.k2, TorusParity::sine}});
    }
    return modes;
  }

  for (std::int64_t l = 0; l * (l + 1) <= b.hi_sq; ++l) {
    const std::int64_t n = l * (l + 1);
    if (n < b.lo_sq)
      continue;
    const double f = std::sqrt(static_cast<double>(n));
    for (std::int64_t mm = -l; mm <= l; ++mm) {
      const auto id = static_cast<std::size_t>(l * l + (mm + l));
      modes.push_back({id, f, n, SphereLabel{static_cast<int>(l), static_cast<int>(mm)}});
    }
  }
  return modes;
}

double eval_mode(const ManifoldModel& m, const EigenMode& mode, Point x) {
  if (m.kind() == ManifoldKind::torus2) {
    const auto& t = std::get<TorusLabel>(mode.label);
    if (t.parity == TorusParity::constant)
      return 1.0 / two_pi;
    const double phase = t.k1 * x.x1 + t.k2 * x.x2;
    const double scale = 1.0 / (std::numbers::pi * std::numbers::sqrt2);
    return scale * (t.parity == TorusParity::cosine ? std::cos(phase) : std::sin(phase));
  }
  const auto& s = std::get<SphereLabel>(mode.label);
  const int am = std::abs(s.m);
  const double p = normalized_legendre(s.l, am, std::cos(x.x1), std::sin(x.x1));
  if (s.m == 0)
    return p;
  const double trig = s.m > 0 ? std::cos(am * x.x2) : std::sin(am * x.x2);
  return std::numbers::sqrt2 * p * trig;
}

double ball_volume(const ManifoldModel& m, double radius) {
  if (m.kind() == ManifoldKind::torus2)
    return std::numbers::pi * radius * radius;
  return two_pi * (1.0 - std::cos(radius));
}

BallRegion::BallRegion(const ManifoldModel& m, Point center, double radius)
    : center_(m.canonical(center)), radius_(radius), volume_(0.0) {
  require(std::isfinite(radius) && radius > 0.0, "ball radius must be positive");
  require(radius <= m.injectivity_radius(),
          "ball radius " + std::to_string(radius) + " exceeds the injectivity radius");
  volume_ = ball_volume(m, radius);
}

double QuadratureRule::total_weight() const {
  double s = 0.0;
  double c = 0.0;
  for (double w : weights) {
    const double y = w - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

QuadratureRule ball_quadrature(const ManifoldModel& m, const BallRegion& ball, int order) {
  require(order >= min_quadrature_order,
          "quadrature order " + std::to_string(order) + " below minimum " +
              std::to_string(min_quadrature_order));
  const int n_rad = order;
  const int n_ang = 2 * order;
  const auto gl = special::gauss_legendre(n_rad);
  const double r = ball.radius();
  const double dang = two_pi / n_ang;

  QuadratureRule rule;
  rule.target = QuadratureTarget::ball;
  rule.order = order;
  rule.nodes.reserve(static_cast<std::size_t>(n_rad) * n_ang);
  rule.weights.reserve(static_cast<std::size_t>(n_rad) * n_ang);

  if (m.kind() == ManifoldKind::torus2) {
    const Point c = ball.center();
    for (int i = 0; i < n_rad; ++i) {
      const double rho = 0.5 * r * (gl.nodes[i] + 1.0);
      const double w = 0.5 * r * gl.weights[i] * rho * dang;
      for (int j = 0; j < n_ang; ++j) {
        const double a = j * dang;
        rule.nodes.push_back(m.canonical({c.x1 + rho * std::cos(a), c.x2 + rho * std::sin(a)}));
        rule.weights.push_back(w);
      }
    }
    return rule;
  }

  const PoleRotation rot(ball.center());
  const double cr = std::cos(r);
  const double half = 0.5 * (1.0 - cr);
  for (int i = 0; i < n_rad; ++i) {
    const double t = cr + half * (gl.nodes[i] + 1.0);
    const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
    const double w = half * gl.weights[i] * dang;
    for (int j = 0; j < n_ang; ++j) {
      const double a = j * dang;
      rule.nodes.push_back(sphere_from_vector(rot.apply({st * std::cos(a), st * std::sin(a), t})));
      rule.weights.push_back(w);
    }
  }
  return rule;
}

QuadratureRule manifold_quadrature(const ManifoldModel& m, int order) {
  require(order >= min_quadrature_order,
          "quadrature order " + std::to_string(order) + " below minimum " +
              std::to_string(min_quadrature_order));
  QuadratureRule rule;
  rule.target = QuadratureTarget::whole_manifold;
  rule.order = order;
  if (m.kind() == ManifoldKind::torus2) {
    const double h = two_pi / order;
    rule.nodes.reserve(static_cast<std::size_t>(order) * order);
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j)
        rule.nodes.push_back({i * h, j * h});
    rule.weights.assign(rule.nodes.size(), h * h);
    return rule;
  }
  const auto gl = special::gauss_legendre(order);
  const int n_phi = 2 * order;
  const double dphi = two_pi / n_phi;
  for (int i = 0; i < order; ++i) {
    const double theta = std::acos(gl.nodes[i]);
    for (int j = 0; j < n_phi; ++j) {
      rule.nodes.push_back({theta, j * dphi});
      rule.weights.push_back(gl.weights[i] * dphi);
    }
  }
  return rule;
}

} // namespace rwlab
