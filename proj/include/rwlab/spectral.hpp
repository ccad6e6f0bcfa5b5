#ifndef RWLAB_SPECTRAL_HPP
#define RWLAB_SPECTRAL_HPP

#include "rwlab/manifold.hpp"

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <vector>

namespace rwlab {

/// The span of all eigenmodes with lambda_j in [lower, upper]. Immutable.
class SpectralWindow {
public:
  /// Window [lambda - width, lambda]. Throws empty_window when no eigenvalue
  /// lies in the interval.
  static std::shared_ptr<const SpectralWindow> build(const ManifoldModel& m, double lambda,
                                                     double width);
  /// Arbitrary closed interval [lo, hi], 0 <= lo <= hi (lambda = hi).
  static std::shared_ptr<const SpectralWindow> closed_interval(const ManifoldModel& m, double lo,
                                                               double hi);

  const ManifoldModel& manifold() const { return manifold_; }
  double lambda() const { return upper_; }
  double width() const { return upper_ - lower_; }
  double lower() const { return lower_; }
  SquaredBounds bounds() const { return bounds_; }
  std::span<const EigenMode> modes() const { return modes_; }
  std::size_t dimension() const { return modes_.size(); }

  /// Torus: for row k1 (0 <= k1 <= max_k) the window holds the k2 with
  /// row_lo[k1] < |k2| <= row_hi[k1] (row_lo = -1 means k2 = 0 included).
  int max_k() const { return max_k_; }
  std::span<const int> row_hi() const { return row_hi_; }
  std::span<const int> row_lo() const { return row_lo_; }
  /// Sphere: the degrees in the window form [min_degree, max_degree].
  int min_degree() const { return min_degree_; }
  int max_degree() const { return max_degree_; }

private:
  SpectralWindow(const ManifoldModel& m, double lo, double hi);

  ManifoldModel manifold_;
  double lower_;
  double upper_;
  SquaredBounds bounds_;
  std::vector<EigenMode> modes_;
  int max_k_ = -1;
  std::vector<int> row_hi_;
  std::vector<int> row_lo_;
  int min_degree_ = 0;
  int max_degree_ = -1;
};

using WindowPtr = std::shared_ptr<const SpectralWindow>;

/// E_[lo,hi](x, y) = sum_j e_j(x) e_j(y) evaluated by the closed forms
/// (addition theorem per degree on the sphere; lattice rows of Dirichlet
/// sums on the torus). Holds scratch buffers, so use one per thread.
class ProjectorKernel {
public:
  explicit ProjectorKernel(WindowPtr window);
  double operator()(Point x, Point y);
  const SpectralWindow& window() const { return *window_; }

private:
  double torus(double z1, double z2);
  double sphere(double cos_d);

  WindowPtr window_;
  std::vector<double> prefix_;
  std::vector<double> legendre_;
};

double projector_kernel(const WindowPtr& w, Point x, Point y);

/// Same kernel by explicit summation over the modes in window order.
double projector_kernel_direct(const SpectralWindow& w, Point x, Point y);

/// Node x mode matrix B(p, j) = e_j(x_p).
Eigen::MatrixXd evaluate_basis(const SpectralWindow& w, std::span<const Point> nodes);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);
/// Leading pointwise Weyl term c_n lambda^n / (2 pi)^n.
double local_weyl_density(double lambda, int n);

/// R(lambda, x) = E_[0,lambda](x, x) - c_n lambda^n / (2 pi)^n.
double pointwise_weyl_remainder(const ManifoldModel& m, double lambda, Point x);
/// R(lambda) = N(lambda) - c_n Vol(M) lambda^n / (2 pi)^n.
double weyl_remainder(const ManifoldModel& m, double lambda);

struct KernelProfile {
  std::vector<double> separations;
  std::vector<double> values;
  std::vector<double> bound_values;
  double near_constant = 0.0;   // max |K| / (W lambda^{n-1}) for d <= 1/lambda
  double far_constant = 0.0;    // least-squares fit on log |K| peaks, slope fixed at -(n-1)/2
  double fitted_exponent = 0.0; // free-slope fit of log peak |K| against log d
  std::size_t peak_count = 0;
};

KernelProfile kernel_profile(const WindowPtr& w, Point x, double direction, double max_separation,
                             int samples);

} // namespace rwlab

#endif
