// rwlab command-line front end. Talks to the library only through rwlab.h.
#include "rwlab/rwlab.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

namespace {

constexpr int exit_validation = 2;
constexpr int exit_failure = 3;

int exit_code(rwlab_status s) {
  switch (s) {
  case RWLAB_OK:
    return 0;
  case RWLAB_INVALID_ARGUMENT:
  case RWLAB_EMPTY_WINDOW:
  case RWLAB_DEGENERATE_WINDOW:
  case RWLAB_CONFIG:
    return exit_validation;
  default:
    return exit_failure;
  }
}

int report(rwlab_status s) {
  std::fprintf(stderr, "rwlab: %s: %s\n", rwlab_status_name(s), rwlab_last_error());
  return exit_code(s);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random waves on the flat torus and the round sphere"};
  app.set_version_flag("--version", rwlab_version());

  std::string experiment;
  std::string config_path;
  std::optional<std::string> out_dir;
  bool plot = false;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;

  app.add_option("experiment", experiment,
                 "weyl | expectation | variance | tail | uniform | sweep | kernel-profile | sogge")
      ->required();
  app.add_option("--config", config_path, "flat key = value configuration file")->required();
  app.add_option("--out-dir", out_dir, "directory for CSV/JSON/SVG outputs");
  app.add_flag("--plot", plot, "also write an SVG plot");
  app.add_option("--seed", seed, "override the configured master seed");
  app.add_option("--threads", threads, "worker threads (0 = all cores); results do not depend on it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_validation;
  }

  rwlab_config* cfg = nullptr;
  if (const auto s = rwlab_config_load(experiment.c_str(), config_path.c_str(), &cfg); s != RWLAB_OK) {
    report(s);
    return exit_validation;
  }
  rwlab_status s = RWLAB_OK;
  if (out_dir)
    s = rwlab_config_set_out_dir(cfg, out_dir->c_str());
  if (s == RWLAB_OK && plot)
    s = rwlab_config_set_plot(cfg, 1);
  if (s == RWLAB_OK && seed)
    s = rwlab_config_set_seed(cfg, *seed);
  if (s == RWLAB_OK && threads)
    s = rwlab_config_set_threads(cfg, *threads);
  if (s != RWLAB_OK) {
    rwlab_config_destroy(cfg);
    report(s);
    return exit_validation;
  }
  s = rwlab_run(cfg);
  rwlab_config_destroy(cfg);
  return s == RWLAB_OK ? 0 : report(s);
}
