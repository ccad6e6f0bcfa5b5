#include "rwlab/runner.hpp"

#include "rwlab/error.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#ifndef RWLAB_VERSION_STRING
#define RWLAB_VERSION_STRING "0.0.0"
#endif

namespace rwlab {

namespace {

using I = std::int64_t;

Column real(std::string name) { return {std::move(name), ColumnType::real}; }
Column integer(std::string name) { return {std::move(name), ColumnType::integer}; }
Column boolean(std::string name) { return {std::move(name), ColumnType::boolean}; }
Column text(std::string name) { return {std::move(name), ColumnType::text}; }

SweepSpec sweep_spec(const RunConfig& c) {
  SweepSpec s;
  s.manifold = ManifoldModel(c.manifold);
  s.lambdas = c.lambdas;
  s.window = c.window;
  s.radius = c.radius;
  s.center = c.center;
  s.samples = c.samples;
  s.master_seed = c.seed;
  s.order = c.order;
  return s;
}

void weyl(const RunConfig& c, ReportRecord& r) {
  const ManifoldModel m(c.manifold);
  r.table.columns = {real("lambda"),         integer("n_modes"),      real("remainder"),
                     real("remainder_scaled"), real("pointwise_base"), real("sup_pointwise"),
                     real("pointwise_scaled")};
  for (const auto& row : run_weyl_diagnostics(m, c.lambdas))
    r.table.add_row({row.lambda, I(row.n_modes), row.remainder, row.remainder_scaled, row.pointwise_base,
                     row.sup_pointwise, row.pointwise_scaled});
}

void sweep_like(const RunConfig& c, ReportRecord& r) {
  const auto rows = run_moment_sweep(sweep_spec(c));
  std::vector<Column> head{real("lambda"), real("width"), real("radius"), integer("n_modes")};
  switch (c.experiment) {
  case ExperimentKind::expectation:
    for (auto name : {"e_closed", "e_mc", "e_mc_se", "target"})
      head.push_back(real(name));
    break;
  case ExperimentKind::variance:
    for (auto name : {"var_exact", "var_paper", "relative_gap", "var_mc", "var_mc_se", "var_ratio"})
      head.push_back(real(name));
    break;
  default:
    for (auto name : {"e_closed", "e_mc", "e_mc_se", "target", "var_exact", "var_mc", "var_mc_se", "var_paper",
                      "var_ratio"})
      head.push_back(real(name));
    head.push_back(boolean("admissible"));
  }
  head.push_back(text("error"));
  r.table.columns = head;
  for (const auto& s : rows) {
    std::vector<Cell> row{s.lambda, s.width, s.radius, I(s.n_modes)};
    switch (c.experiment) {
    case ExperimentKind::expectation:
      row.insert(row.end(), {s.e_closed, s.e_mc, s.e_mc_se, s.target});
      break;
    case ExperimentKind::variance:
      row.insert(row.end(), {s.var_exact, s.var_paper, (s.var_paper - s.var_exact) / s.var_exact, s.var_mc,
                             s.var_mc_se, s.var_ratio});
      break;
    default:
      row.insert(row.end(), {s.e_closed, s.e_mc, s.e_mc_se, s.target, s.var_exact, s.var_mc, s.var_mc_se,
                             s.var_paper, s.var_ratio, s.admissible});
    }
    row.emplace_back(s.error);
    r.table.add_row(std::move(row));
  }
}

void tail(const RunConfig& c, ReportRecord& r) {
  const ManifoldModel m(c.manifold);
  const double lambda = c.lambdas.front();
  const auto w = window_for(m, lambda, c.window);
  const BallRegion ball(m, c.center, c.radius.radius_at(lambda));
  const auto rep = run_tail_experiment(w, ball, c.samples, {}, c.seed, c.order, c.t_points);
  r.table.columns = {real("t"), real("empirical"), real("levy_bound"), integer("n_samples")};
  for (std::size_t i = 0; i < rep.t.size(); ++i)
    r.table.add_row({rep.t[i], rep.empirical[i], rep.levy_bound[i], I(rep.n_samples)});
  r.summary = {{"lambda", lambda},
               {"n_modes", I(w->dimension())},
               {"sphere_dimension", I(rep.sphere_dimension)},
               {"lipschitz", rep.lipschitz},
               {"median", rep.median},
               {"expectation", rep.expectation},
               {"mean_mc", rep.mean_mc}};
}

void uniform(const RunConfig& c, ReportRecord& r) {
  const ManifoldModel m(c.manifold);
  r.table.columns = {real("lambda"),     real("width"),         real("radius"),         real("delta"),
                     real("threshold"),  real("target"),        integer("n_balls"),     integer("n_samples"),
                     real("empirical_prob"), real("mean_max_deviation"), real("max_ball_rate"),
                     boolean("in_theorem_regime"), real("epsilon")};
  for (std::size_t i = 0; i < c.lambdas.size(); ++i) {
    const double lambda = c.lambdas[i];
    const auto w = window_for(m, lambda, c.window);
    const auto cover = build_cover(m, c.radius.radius_at(lambda));
    const auto rep = run_uniform_experiment(w, cover, c.delta, c.samples, derive_seed(c.seed, i),
                                            UniformRoute::automatic, c.order);
    double max_rate = 0.0;
    for (double x : rep.per_ball_rates)
      max_rate = std::max(max_rate, x);
    r.table.add_row({rep.lambda, rep.width, rep.radius, rep.delta, rep.threshold, rep.target, I(rep.n_balls),
                     I(rep.n_samples), rep.empirical_prob, rep.mean_max_deviation, max_rate,
                     rep.in_theorem_regime, rep.epsilon});
  }
}

void kernel(const RunConfig& c, ReportRecord& r) {
  const ManifoldModel m(c.manifold);
  const double lambda = c.lambdas.front();
  const auto w = window_for(m, lambda, c.window);
  const double max_sep = c.max_separation > 0.0 ? c.max_separation : m.injectivity_radius();
  const auto prof = kernel_profile(w, c.center, c.direction, max_sep, c.points);
  r.table.columns = {real("separation"), real("kernel"), real("bound")};
  for (std::size_t i = 0; i < prof.separations.size(); ++i)
    r.table.add_row({prof.separations[i], prof.values[i], prof.bound_values[i]});
  r.summary = {{"lambda", lambda},
               {"width", w->width()},
               {"n_modes", I(w->dimension())},
               {"near_constant", prof.near_constant},
               {"far_constant", prof.far_constant},
               {"fitted_exponent", prof.fitted_exponent},
               {"peak_count", I(prof.peak_count)}};
}

void sogge(const RunConfig& c, ReportRecord& r) {
  const ManifoldModel m(c.manifold);
  const double lambda = c.lambdas.front();
  const auto w = window_for(m, lambda, c.window);
  const auto rep = run_sogge_sweep(w, c.center, c.radii, c.order);
  r.table.columns = {real("radius"), real("lambda_max"), real("ratio"), real("lipschitz"), real("envelope")};
  for (const auto& row : rep.rows)
    r.table.add_row({row.radius, row.lambda_max, row.ratio, row.lipschitz, row.envelope});
  r.summary = {{"lambda", lambda},
               {"n_modes", I(w->dimension())},
               {"fitted_constant", rep.fitted_constant},
               {"spread", rep.spread}};
}

void write_file(const std::filesystem::path& p, const std::string& content, std::vector<std::string>& written) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out)
    fail(ErrorCode::io, "cannot open '" + p.string() + "' for writing");
  written.push_back(p.string());
  out << content;
  out.flush();
  if (!out)
    fail(ErrorCode::io, "failed writing '" + p.string() + "'");
}

PlotSeries series(const Table& t, const std::string& label, const std::string& x, const std::string& y) {
  return {label, t.numeric_column(x), t.numeric_column(y)};
}

} // namespace

std::string_view code_version() { return RWLAB_VERSION_STRING; }

ReportRecord execute(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const unsigned saved = thread_count();
  set_thread_count(config.threads);
  ReportRecord r;
  r.experiment = std::string(to_string(config.experiment));
  r.config = config.entries;
  r.provenance.seed = config.seed;
  r.provenance.code_version = std::string(code_version());
  r.provenance.threads = thread_count();
  try {
    switch (config.experiment) {
    case ExperimentKind::weyl:
      weyl(config, r);
      break;
    case ExperimentKind::expectation:
    case ExperimentKind::variance:
    case ExperimentKind::sweep:
      sweep_like(config, r);
      break;
    case ExperimentKind::tail:
      tail(config, r);
      break;
    case ExperimentKind::uniform:
      uniform(config, r);
      break;
    case ExperimentKind::kernel_profile:
      kernel(config, r);
      break;
    case ExperimentKind::sogge:
      sogge(config, r);
      break;
    }
  } catch (...) {
    set_thread_count(saved);
    throw;
  }
  set_thread_count(saved);
  r.provenance.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

PlotSpec plot_for(const ReportRecord& r) {
  const Table& t = r.table;
  PlotSpec p;
  p.title = r.experiment;
  if (r.experiment == "weyl") {
    p.x_label = "lambda";
    p.y_label = "remainder / lambda";
    p.series = {series(t, "R / lambda", "lambda", "remainder_scaled"),
                series(t, "R(lambda, x0) / lambda", "lambda", "pointwise_scaled")};
  } else if (r.experiment == "expectation") {
    p.x_label = "lambda";
    p.y_label = "ball mass";
    p.series = {series(t, "closed form", "lambda", "e_closed"), series(t, "Monte Carlo", "lambda", "e_mc"),
                series(t, "Vol(B)/Vol(M)", "lambda", "target")};
  } else if (r.experiment == "variance" || r.experiment == "sweep") {
    p.x_label = "lambda";
    p.y_label = "Var / Vol(B)^2";
    p.log_x = p.log_y = true;
    p.series = {series(t, "Var / Vol(B)^2", "lambda", "var_ratio")};
    if (r.experiment == "sweep") {
      std::vector<double> x = t.numeric_column("lambda"), e = t.numeric_column("e_closed"),
                          g = t.numeric_column("target");
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = std::abs(e[i] / g[i] - 1.0);
      p.series.push_back({"|E/target - 1|", x, e});
    }
  } else if (r.experiment == "tail") {
    p.x_label = "t";
    p.y_label = "P(|F - Me| > t)";
    p.log_y = true;
    p.series = {series(t, "empirical", "t", "empirical"), series(t, "Levy bound", "t", "levy_bound")};
  } else if (r.experiment == "uniform") {
    p.x_label = "lambda";
    p.y_label = "probability";
    p.series = {series(t, "P(some ball deviates)", "lambda", "empirical_prob")};
  } else if (r.experiment == "kernel-profile") {
    p.x_label = "separation";
    p.y_label = "kernel";
    p.series = {series(t, "E(x, y)", "separation", "kernel"), series(t, "envelope", "separation", "bound")};
  } else if (r.experiment == "sogge") {
    p.x_label = "radius";
    p.y_label = "lambda_max";
    p.log_x = p.log_y = true;
    p.series = {series(t, "lambda_max(M)", "radius", "lambda_max")};
  }
  return p;
}

RunOutput run(const RunConfig& config) {
  RunOutput out;
  out.record = execute(config);
  namespace fs = std::filesystem;
  const fs::path dir(config.out_dir);
  try {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
      fail(ErrorCode::io, "cannot create output directory '" + dir.string() + "': " + ec.message());
    const std::string stem = out.record.experiment;
    write_file(dir / (stem + ".csv"), to_csv(out.record.table), out.files);
    write_file(dir / (stem + ".json"), to_json(out.record), out.files);
    if (config.plot)
      write_file(dir / (stem + ".svg"), to_svg(plot_for(out.record)), out.files);
  } catch (...) {
    for (const auto& f : out.files) {
      std::error_code ignore;
      fs::remove(f, ignore);
    }
    throw;
  }
  return out;
}

} // namespace rwlab
