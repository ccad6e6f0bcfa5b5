#include "rwlab/analytics.hpp"

#include "rwlab/error.hpp"

#include <cmath>

namespace rwlab {

namespace {

Eigen::MatrixXd weighted_basis(const SpectralWindow& w, const QuadratureRule& rule) {
  Eigen::MatrixXd g = evaluate_basis(w, rule.nodes);
  for (Eigen::Index p = 0; p < g.rows(); ++p)
    g.row(p) *= std::sqrt(rule.weights[static_cast<std::size_t>(p)]);
  return g;
}

} // namespace

GramMatrix::GramMatrix(Eigen::MatrixXd entries, std::size_t window_dimension, GramBasis basis)
    : entries_(std::move(entries)), window_dimension_(window_dimension), basis_(basis) {
  require(entries_.rows() == entries_.cols(), "Gram matrix must be square");
  require(window_dimension_ >= 1, "Gram matrix needs a non-empty window");
  trace_ = entries_.trace();
  frobenius_sq_ = entries_.squaredNorm();
}

GramMatrix gram_matrix(const SpectralWindow& w, const QuadratureRule& rule, std::size_t cap) {
  const std::size_t n = w.dimension();
  if (n > cap)
    fail(ErrorCode::resource_limit, "Gram matrix dimension " + std::to_string(n) +
                                        " exceeds the cap " + std::to_string(cap));
  const Eigen::MatrixXd g = weighted_basis(w, rule);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.cols(), g.cols());
  m.selfadjointView<Eigen::Lower>().rankUpdate(g.transpose());
  // mirror the lower triangle so the stored matrix is exactly symmetric
  m = m.selfadjointView<Eigen::Lower>();
  return GramMatrix(std::move(m), n, GramBasis::modes);
}

GramMatrix gram_matrix(const WindowPtr& w, const BallRegion& ball, int order, std::size_t cap) {
  return gram_matrix(*w, ball_quadrature(w->manifold(), ball, order), cap);
}

GramMatrix node_kernel_gram(const WindowPtr& w, const QuadratureRule& rule, std::size_t cap) {
  const std::size_t p = rule.size();
  if (p > cap)
    fail(ErrorCode::resource_limit, "node kernel matrix size " + std::to_string(p) +
                                        " exceeds the cap " + std::to_string(cap));
  const auto np = static_cast<Eigen::Index>(p);
  Eigen::MatrixXd s(np, np);
  std::vector<double> sqrt_w(p);
  for (std::size_t i = 0; i < p; ++i)
    sqrt_w[i] = std::sqrt(rule.weights[i]);
  constexpr std::size_t rows_per_block = 16;
  const std::size_t blocks = (p + rows_per_block - 1) / rows_per_block;
  parallel_blocks(blocks, [&](std::size_t b) {
    ProjectorKernel kernel(w);
    const std::size_t end = std::min(p, (b + 1) * rows_per_block);
    for (std::size_t i = b * rows_per_block; i < end; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            sqrt_w[i] * sqrt_w[j] * kernel(rule.nodes[i], rule.nodes[j]);
  });
  for (Eigen::Index i = 0; i < np; ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      s(j, i) = s(i, j);
  return GramMatrix(std::move(s), w->dimension(), GramBasis::nodes);
}

GramMatrix ball_gram(const WindowPtr& w, const QuadratureRule& rule) {
  if (w->dimension() <= rule.size() && w->dimension() <= default_gram_cap)
    return gram_matrix(*w, rule);
  return node_kernel_gram(w, rule);
}

int auto_ball_order(double lambda, double radius) {
  const double need = 16.0 + std::ceil(lambda * radius);
  return static_cast<int>(std::clamp(need, 16.0, static_cast<double>(default_ball_order)));
}

double expected_ball_mass(const GramMatrix& g) {
  return g.trace() / static_cast<double>(g.window_dimension());
}

double variance_ball_mass_exact(const GramMatrix& g) {
  const double n = static_cast<double>(g.window_dimension());
  if (g.window_dimension() < 2)
    fail(ErrorCode::degenerate_window, "exact variance needs a window of dimension >= 2");
  const double tr = g.trace();
  return 2.0 / (n * (n + 2.0)) * g.frobenius_sq() - 2.0 / (n * n * (n + 2.0)) * tr * tr;
}

double variance_ball_mass_paper(const GramMatrix& g) {
  const double n = static_cast<double>(g.window_dimension());
  return 2.0 / (n * n) * g.frobenius_sq();
}

double worst_case_ball_mass(const GramMatrix& g, double tol, std::size_t max_iterations) {
  const Eigen::MatrixXd& m = g.entries();
  const Eigen::Index n = m.rows();
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double rho = 0.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    Eigen::VectorXd w = m * v;
    const double next = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0)
      return 0.0;
    v = w / norm;
    if (it > 0 && std::abs(next - rho) <= tol * std::abs(next))
      return next;
    rho = next;
  }
  fail(ErrorCode::numeric_failure,
       "power iteration did not converge in " + std::to_string(max_iterations) + " iterations");
}

double lipschitz_bound(const GramMatrix& g, double tol) {
  return 2.0 * worst_case_ball_mass(g, tol);
}

double lipschitz_envelope(double lambda, double width, double radius) {
  (void)lambda;
  return radius >= 1.0 / width ? 1.0 : radius * width;
}

MomentReport moment_report(const GramMatrix& g, double ball_volume, double manifold_volume) {
  MomentReport r;
  r.expectation = expected_ball_mass(g);
  r.variance_exact = variance_ball_mass_exact(g);
  r.variance_paper = variance_ball_mass_paper(g);
  r.relative_gap = r.variance_exact != 0.0
                       ? std::abs(r.variance_paper - r.variance_exact) / r.variance_exact
                       : std::numeric_limits<double>::infinity();
  r.target = ball_volume / manifold_volume;
  return r;
}

VarianceBudget variance_budget(double lambda, double radius, double ball_volume, int n) {
  return {std::pow(lambda, -n) * ball_volume, std::pow(lambda, -(n - 1)) * radius * ball_volume};
}

BallMassFunctional::BallMassFunctional(const WindowPtr& w, const QuadratureRule& rule,
                                       std::size_t node_cache_cap)
    : dimension_(w->dimension()) {
  const std::size_t p = rule.size();
  if (dimension_ <= p && dimension_ <= default_gram_cap) {
    gram_.emplace(gram_matrix(*w, rule));
    return;
  }
  if (p * dimension_ > node_cache_cap)
    fail(ErrorCode::resource_limit,
         "node evaluation matrix " + std::to_string(p) + " x " + std::to_string(dimension_) +
             " exceeds the cache cap");
  weighted_basis_ = weighted_basis(*w, rule);
}

BallMassFunctional::BallMassFunctional(GramMatrix mode_gram)
    : dimension_(mode_gram.window_dimension()) {
  require(mode_gram.basis() == GramBasis::modes,
          "BallMassFunctional needs a Gram matrix in the mode basis");
  gram_.emplace(std::move(mode_gram));
}

void BallMassFunctional::operator()(const Eigen::MatrixXd& coefficients,
                                    std::span<double> out) const {
  if (gram_) {
    const Eigen::MatrixXd y = gram_->entries() * coefficients;
    for (Eigen::Index i = 0; i < coefficients.cols(); ++i)
      out[static_cast<std::size_t>(i)] = coefficients.col(i).dot(y.col(i));
    return;
  }
  const Eigen::MatrixXd y = weighted_basis_ * coefficients;
  for (Eigen::Index i = 0; i < coefficients.cols(); ++i)
    out[static_cast<std::size_t>(i)] = y.col(i).squaredNorm();
}

double BallMassFunctional::operator()(std::span<const double> a) const {
  Eigen::MatrixXd col =
      Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size()));
  double out = 0.0;
  (*this)(col, std::span<double>(&out, 1));
  return out;
}

} // namespace rwlab
