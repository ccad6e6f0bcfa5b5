#ifndef RWLAB_ANALYTICS_HPP
#define RWLAB_ANALYTICS_HPP

#include "rwlab/ensemble.hpp"
#include "rwlab/spectral.hpp"

#include <Eigen/Dense>

#include <optional>

namespace rwlab {

inline constexpr std::size_t default_gram_cap = 4000;
/// Largest node x mode evaluation matrix kept in memory (entries).
inline constexpr std::size_t default_node_cache_cap = 100'000'000;

/// Which space the stored symmetric matrix acts on. In the mode basis it is
/// M_ij = int_B e_i e_j. In the node basis it is
/// S_pq = sqrt(w_p w_q) E(x_p, x_q), which shares every nonzero eigenvalue
/// (hence trace, Frobenius norm and top eigenvalue) with M.
enum class GramBasis { modes, nodes };

class GramMatrix {
public:
  GramMatrix(Eigen::MatrixXd entries, std::size_t window_dimension, GramBasis basis);

  const Eigen::MatrixXd& entries() const { return entries_; }
  std::size_t window_dimension() const { return window_dimension_; }
  GramBasis basis() const { return basis_; }
  double trace() const { return trace_; }
  double frobenius_sq() const { return frobenius_sq_; }

private:
  Eigen::MatrixXd entries_;
  std::size_t window_dimension_;
  GramBasis basis_;
  double trace_;
  double frobenius_sq_;
};

/// Mode-basis Gram matrix from a quadrature rule: M = B^T diag(w) B.
GramMatrix gram_matrix(const SpectralWindow& w, const QuadratureRule& rule,
                       std::size_t cap = default_gram_cap);
GramMatrix gram_matrix(const WindowPtr& w, const BallRegion& ball, int order = default_ball_order,
                       std::size_t cap = default_gram_cap);

/// Node-basis matrix from the projector kernel at the quadrature nodes.
GramMatrix node_kernel_gram(const WindowPtr& w, const QuadratureRule& rule,
                            std::size_t cap = default_gram_cap * 4);

/// Mode basis when N <= nodes, node basis otherwise.
GramMatrix ball_gram(const WindowPtr& w, const QuadratureRule& rule);

/// Radial Gauss-Legendre count used by the experiments: enough nodes for
/// integrands oscillating at frequency 2 lambda across a ball of radius r.
int auto_ball_order(double lambda, double radius);

/// E(F) = trace(M) / N, exact under the uniform unit-sphere measure.
double expected_ball_mass(const GramMatrix& g);

/// Var(F) = 2/(N(N+2)) ||M||_F^2 - 2/(N^2(N+2)) trace(M)^2, exact for the
/// uniform measure on S^{N-1} (uses E a_i^4 = 3/(N(N+2)),
/// E a_i^2 a_j^2 = 1/(N(N+2))).
double variance_ball_mass_exact(const GramMatrix& g);

/// The large-N expression (2/N^2) ||M||_F^2.
double variance_ball_mass_paper(const GramMatrix& g);

/// Top eigenvalue of the Gram matrix (sup of F over the unit sphere) by
/// power iteration from the normalised all-ones vector.
double worst_case_ball_mass(const GramMatrix& g, double tol = 1e-10,
                            std::size_t max_iterations = 200'000);

/// 2 lambda_max(M): |a^T M a - b^T M b| <= 2 lambda_max |a - b| on the sphere,
/// and chord length <= geodesic distance.
double lipschitz_bound(const GramMatrix& g, double tol = 1e-10);

/// Regime envelope of the Lipschitz estimate without its constant:
/// r W for 1/lambda <= r <= 1/W, and 1 for r >= 1/W.
double lipschitz_envelope(double lambda, double width, double radius);

struct MomentReport {
  double expectation = 0.0;
  double variance_exact = 0.0;
  double variance_paper = 0.0;
  double relative_gap = 0.0;
  double target = 0.0; // Vol(B) / Vol(M)
};

MomentReport moment_report(const GramMatrix& g, double ball_volume, double manifold_volume);

/// The two explicit terms of the variance budget, lambda^{-n} Vol(B) and
/// lambda^{-(n-1)} r Vol(B), without constants.
struct VarianceBudget {
  double planck_term = 0.0;
  double annulus_term = 0.0;
};
VarianceBudget variance_budget(double lambda, double radius, double ball_volume, int n);

/// Evaluates F(a) = int_B |u_a|^2 for blocks of coefficient vectors, through
/// a^T M a when N <= nodes and |G a|^2 (G = diag(sqrt w) B) otherwise.
class BallMassFunctional {
public:
  BallMassFunctional(const WindowPtr& w, const QuadratureRule& rule,
                     std::size_t node_cache_cap = default_node_cache_cap);
  /// Reuse an existing mode-basis Gram matrix.
  explicit BallMassFunctional(GramMatrix mode_gram);

  void operator()(const Eigen::MatrixXd& coefficients, std::span<double> out) const;
  double operator()(std::span<const double> a) const;
  std::size_t dimension() const { return dimension_; }
  bool uses_gram() const { return gram_.has_value(); }
  const std::optional<GramMatrix>& gram() const { return gram_; }

private:
  std::size_t dimension_;
  std::optional<GramMatrix> gram_;
  Eigen::MatrixXd weighted_basis_;
};

} // namespace rwlab

#endif
