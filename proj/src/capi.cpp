#include "rwlab/rwlab.h"

#include "rwlab/error.hpp"
#include "rwlab/runner.hpp"

#include <algorithm>

#include <new>
#include <string>

struct rwlab_manifold {
  rwlab::ManifoldModel model;
};

struct rwlab_window {
  rwlab::WindowPtr window;
};

struct rwlab_config {
  rwlab::RunConfig config;
};

namespace {

thread_local std::string last_error;

rwlab_status status_of(rwlab::ErrorCode code) {
  using rwlab::ErrorCode;
  switch (code) {
  case ErrorCode::invalid_argument:
    return RWLAB_INVALID_ARGUMENT;
  case ErrorCode::empty_window:
    return RWLAB_EMPTY_WINDOW;
  case ErrorCode::degenerate_window:
    return RWLAB_DEGENERATE_WINDOW;
  case ErrorCode::resource_limit:
    return RWLAB_RESOURCE_LIMIT;
  case ErrorCode::numeric_failure:
    return RWLAB_NUMERIC_FAILURE;
  case ErrorCode::config:
    return RWLAB_CONFIG;
  case ErrorCode::io:
    return RWLAB_IO;
  }
  return RWLAB_INTERNAL;
}

template <class F>
rwlab_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return RWLAB_OK;
  } catch (const rwlab::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RWLAB_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RWLAB_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return RWLAB_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  rwlab::require(p != nullptr, std::string(what) + " must not be NULL");
}

} // namespace

extern "C" {

const char* rwlab_version(void) { return RWLAB_VERSION_STRING; }

const char* rwlab_last_error(void) { return last_error.c_str(); }

const char* rwlab_status_name(rwlab_status status) {
  switch (status) {
  case RWLAB_OK:
    return "ok";
  case RWLAB_INVALID_ARGUMENT:
    return "invalid_argument";
  case RWLAB_EMPTY_WINDOW:
    return "empty_window";
  case RWLAB_DEGENERATE_WINDOW:
    return "degenerate_window";
  case RWLAB_RESOURCE_LIMIT:
    return "resource_limit";
  case RWLAB_NUMERIC_FAILURE:
    return "numeric_failure";
  case RWLAB_CONFIG:
    return "config";
  case RWLAB_IO:
    return "io";
  case RWLAB_INTERNAL:
    return "internal";
  }
  return "unknown";
}

rwlab_status rwlab_manifold_create(const char* name, rwlab_manifold** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = new rwlab_manifold{rwlab::ManifoldModel(rwlab::parse_manifold_kind(name))};
  });
}

void rwlab_manifold_destroy(rwlab_manifold* m) { delete m; }

rwlab_status rwlab_manifold_volume(const rwlab_manifold* m, double* out) {
  return guarded([&] {
    need(m, "manifold");
    need(out, "out");
    *out = m->model.volume();
  });
}

rwlab_status rwlab_count_modes(const rwlab_manifold* m, double lo, double hi, size_t* out) {
  return guarded([&] {
    need(m, "manifold");
    need(out, "out");
    *out = rwlab::count_modes(m->model, lo, hi);
  });
}

rwlab_status rwlab_weyl_remainder(const rwlab_manifold* m, double lambda, double* out) {
  return guarded([&] {
    need(m, "manifold");
    need(out, "out");
    *out = rwlab::weyl_remainder(m->model, lambda);
  });
}

rwlab_status rwlab_window_create(const rwlab_manifold* m, double lambda, double width, rwlab_window** out) {
  return guarded([&] {
    need(m, "manifold");
    need(out, "out");
    *out = new rwlab_window{rwlab::SpectralWindow::build(m->model, lambda, width)};
  });
}

void rwlab_window_destroy(rwlab_window* w) { delete w; }

rwlab_status rwlab_window_dimension(const rwlab_window* w, size_t* out) {
  return guarded([&] {
    need(w, "window");
    need(out, "out");
    *out = w->window->dimension();
  });
}

rwlab_status rwlab_projector_kernel(const rwlab_window* w, double x1, double x2, double y1, double y2,
                                    double* out) {
  return guarded([&] {
    need(w, "window");
    need(out, "out");
    *out = rwlab::projector_kernel(w->window, {x1, x2}, {y1, y2});
  });
}

rwlab_status rwlab_ball_moments(const rwlab_window* w, double c1, double c2, double radius, int order,
                                rwlab_moments* out) {
  return guarded([&] {
    need(w, "window");
    need(out, "out");
    const auto& m = w->window->manifold();
    const rwlab::BallRegion ball(m, m.canonical({c1, c2}), radius);
    const int ord = order > 0 ? order : rwlab::auto_ball_order(w->window->lambda(), radius);
    const auto gram = rwlab::ball_gram(w->window, rwlab::ball_quadrature(m, ball, ord));
    const auto rep = rwlab::moment_report(gram, ball.volume(), m.volume());
    rwlab_moments res{};
    res.expectation = rep.expectation;
    res.variance_exact = rep.variance_exact;
    res.variance_paper = rep.variance_paper;
    res.lambda_max = rwlab::worst_case_ball_mass(gram);
    res.target = rep.target;
    res.n_modes = w->window->dimension();
    *out = res;
  });
}

rwlab_status rwlab_sample_ball_mass(const rwlab_window* w, double c1, double c2, double radius, int order,
                                    uint64_t seed, size_t count, double* out) {
  return guarded([&] {
    need(w, "window");
    need(out, "out");
    const auto& m = w->window->manifold();
    const rwlab::BallRegion ball(m, m.canonical({c1, c2}), radius);
    const int ord = order > 0 ? order : rwlab::auto_ball_order(w->window->lambda(), radius);
    const rwlab::BallMassFunctional f(w->window, rwlab::ball_quadrature(m, ball, ord));
    const auto batch = rwlab::run_sphere_batch(
        w->window->dimension(), count, seed,
        [&](const Eigen::MatrixXd& a, std::span<double> o) { f(a, o); });
    std::copy(batch.values.begin(), batch.values.end(), out);
  });
}

rwlab_status rwlab_config_parse(const char* experiment, const char* text, rwlab_config** out) {
  return guarded([&] {
    need(experiment, "experiment");
    need(text, "text");
    need(out, "out");
    *out = new rwlab_config{rwlab::parse_config(text, rwlab::parse_experiment_kind(experiment))};
  });
}

rwlab_status rwlab_config_load(const char* experiment, const char* path, rwlab_config** out) {
  return guarded([&] {
    need(experiment, "experiment");
    need(path, "path");
    need(out, "out");
    *out = new rwlab_config{rwlab::load_config(path, rwlab::parse_experiment_kind(experiment))};
  });
}

void rwlab_config_destroy(rwlab_config* c) { delete c; }

rwlab_status rwlab_config_set_seed(rwlab_config* c, uint64_t seed) {
  return guarded([&] {
    need(c, "config");
    c->config.seed = seed;
  });
}

rwlab_status rwlab_config_set_threads(rwlab_config* c, unsigned threads) {
  return guarded([&] {
    need(c, "config");
    c->config.threads = threads;
  });
}

rwlab_status rwlab_config_set_out_dir(rwlab_config* c, const char* dir) {
  return guarded([&] {
    need(c, "config");
    need(dir, "dir");
    rwlab::require(*dir != '\0', "output directory must not be empty");
    c->config.out_dir = dir;
  });
}

rwlab_status rwlab_config_set_plot(rwlab_config* c, int enabled) {
  return guarded([&] {
    need(c, "config");
    c->config.plot = enabled != 0;
  });
}

rwlab_status rwlab_run(const rwlab_config* c) {
  return guarded([&] {
    need(c, "config");
    rwlab::run(c->config);
  });
}

} // extern "C"
