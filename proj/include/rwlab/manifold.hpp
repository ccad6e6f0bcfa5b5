#ifndef RWLAB_MANIFOLD_HPP
#define RWLAB_MANIFOLD_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rwlab {

enum class ManifoldKind { torus2, sphere2 };

std::string_view to_string(ManifoldKind kind);
ManifoldKind parse_manifold_kind(std::string_view name);

/// Chart coordinates. Torus: (x1, x2) in [0, 2 pi)^2. Sphere: x1 = colatitude
/// theta in [0, pi], x2 = longitude phi in [0, 2 pi), with phi = 0 at the poles.
struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

enum class TorusParity { constant, cosine, sine };

struct TorusLabel {
  int k1 = 0;
  int k2 = 0;
  TorusParity parity = TorusParity::constant;
};

struct SphereLabel {
  int l = 0;
  int m = 0;
};

/// One real orthonormal Laplace eigenfunction. freq_sq is the exact integer
/// lambda_j^2 (|k|^2 on the torus, l(l+1) on the sphere).
struct EigenMode {
  std::size_t mode_id = 0;
  double frequency = 0.0;
  std::int64_t freq_sq = 0;
  std::variant<TorusLabel, SphereLabel> label;
};

class ManifoldModel {
public:
  static constexpr int dimension = 2;
  static constexpr int default_sphere_degree_cap = 200;
  static constexpr double default_torus_frequency_cap = 512.0;

  explicit ManifoldModel(ManifoldKind kind);
  ManifoldModel(ManifoldKind kind, double frequency_cap);

  ManifoldKind kind() const { return kind_; }
  double volume() const;
  double injectivity_radius() const;
  double diameter() const;
  /// Volume of the unit ball in R^n (pi for n = 2).
  double weyl_constant() const;
  double frequency_cap() const { return frequency_cap_; }

  Point canonical(Point p) const;

private:
  ManifoldKind kind_;
  double frequency_cap_;
};

double geodesic_distance(const ManifoldModel& m, Point x, Point y);

/// Unit vector in R^3 for a sphere chart point.
std::array<double, 3> sphere_to_vector(Point p);
Point sphere_from_vector(const std::array<double, 3>& v);

/// Point reached by following the geodesic from x with initial direction
/// angle `direction` (torus: angle to the x1 axis; sphere: azimuth in the
/// frame that rotates x to the north pole) for arc length d.
Point geodesic_point(const ManifoldModel& m, Point x, double direction, double d);

/// Squared-frequency bounds used for exact window membership: the closed
/// interval [lo, hi] becomes integer bounds [lo_sq, hi_sq] on lambda_j^2.
struct SquaredBounds {
  std::int64_t lo_sq = 0;
  std::int64_t hi_sq = 0;
};
SquaredBounds squared_bounds(double lo, double hi);

/// All modes with lambda_j in the closed interval [lo, hi], ordered
/// deterministically (torus: |k|^2, then k lexicographically, then parity;
/// sphere: l, then m).
std::vector<EigenMode> enumerate_modes(const ManifoldModel& m, double lo, double hi);

/// Number of modes in [lo, hi] without materialising them.
std::size_t count_modes(const ManifoldModel& m, double lo, double hi);

double eval_mode(const ManifoldModel& m, const EigenMode& mode, Point x);

class BallRegion {
public:
  BallRegion(const ManifoldModel& m, Point center, double radius);

  Point center() const { return center_; }
  double radius() const { return radius_; }
  double volume() const { return volume_; }

private:
  Point center_;
  double radius_;
  double volume_;
};

double ball_volume(const ManifoldModel& m, double radius);

enum class QuadratureTarget { ball, whole_manifold };

struct QuadratureRule {
  std::vector<Point> nodes;
  std::vector<double> weights;
  QuadratureTarget target = QuadratureTarget::ball;
  int order = 0;

  std::size_t size() const { return nodes.size(); }
  double total_weight() const;
};

inline constexpr int min_quadrature_order = 4;
inline constexpr int default_ball_order = 64;
inline constexpr int default_manifold_order = 256;

/// order radial (Gauss-Legendre) nodes x 2*order angular nodes. The sphere
/// rule is built around the north pole and rotated onto the ball centre.
QuadratureRule ball_quadrature(const ManifoldModel& m, const BallRegion& ball,
                               int order = default_ball_order);

/// Torus: order x order uniform grid. Sphere: order Gauss-Legendre nodes in
/// cos(theta) x 2*order uniform nodes in phi.
QuadratureRule manifold_quadrature(const ManifoldModel& m, int order = default_manifold_order);

} // namespace rwlab

#endif
