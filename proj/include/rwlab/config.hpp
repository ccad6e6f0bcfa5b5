#ifndef RWLAB_CONFIG_HPP
#define RWLAB_CONFIG_HPP

#include "rwlab/experiments.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rwlab {

enum class ExperimentKind { weyl, expectation, variance, tail, uniform, sweep, kernel_profile, sogge };

std::string_view to_string(ExperimentKind kind);
/// Throws Error(config) for an unknown name.
ExperimentKind parse_experiment_kind(std::string_view name);

struct RunConfig {
  ExperimentKind experiment = ExperimentKind::weyl;
  ManifoldKind manifold = ManifoldKind::torus2;
  std::vector<double> lambdas;
  WindowRule window;
  RadiusRule radius;
  std::vector<double> radii; // sogge
  Point center;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double delta = 0.1;
  int t_points = 41;
  double max_separation = 0.0; // 0 selects the injectivity radius
  int points = 512;
  double direction = 0.0;
  int order = 0;
  unsigned threads = 0;
  bool plot = false;
  std::string out_dir = ".";
  /// Keys exactly as they appeared in the file, in file order.
  std::vector<std::pair<std::string, std::string>> entries;
};

/// Flat `key = value` lines, `#` comments, comma-separated lists. Every
/// field is validated here so that a bad file never reaches the numerics.
RunConfig parse_config(std::string_view text, ExperimentKind experiment);
RunConfig load_config(const std::string& path, ExperimentKind experiment);

/// Keys the experiment cannot run without (alternatives joined by '|').
std::vector<std::string> required_keys(ExperimentKind experiment);

} // namespace rwlab

#endif
