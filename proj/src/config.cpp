#include "rwlab/config.hpp"

#include "rwlab/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace rwlab {

namespace {

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 8> experiment_names{{
    {ExperimentKind::weyl, "weyl"},
    {ExperimentKind::expectation, "expectation"},
    {ExperimentKind::variance, "variance"},
    {ExperimentKind::tail, "tail"},
    {ExperimentKind::uniform, "uniform"},
    {ExperimentKind::sweep, "sweep"},
    {ExperimentKind::kernel_profile, "kernel-profile"},
    {ExperimentKind::sogge, "sogge"},
}};

constexpr std::array<std::string_view, 22> known_keys{
    "manifold", "lambda",  "degree", "W",      "W_rule",         "W_beta", "r",         "r_scale",
    "r_alpha",  "radii",   "center", "samples", "seed",          "delta",  "t_points",  "max_separation",
    "points",   "direction", "order", "threads", "plot",          "out_dir"};

[[noreturn]] void config_error(std::string_view key, const std::string& what) {
  fail(ErrorCode::config, "config key '" + std::string(key) + "': " + what);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos)
      break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double to_double(std::string_view key, std::string_view v) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty())
    config_error(key, "expected a number, got '" + std::string(v) + "'");
  if (!std::isfinite(x))
    config_error(key, "must be finite");
  return x;
}

template <class Int>
Int to_integer(std::string_view key, std::string_view v) {
  Int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty())
    config_error(key, "expected a nonnegative integer, got '" + std::string(v) + "'");
  return x;
}

std::vector<double> to_doubles(std::string_view key, std::string_view v) {
  std::vector<double> out;
  for (auto item : split_list(v))
    out.push_back(to_double(key, item));
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on")
    return true;
  if (v == "false" || v == "0" || v == "no" || v == "off")
    return false;
  config_error(key, "expected true or false, got '" + std::string(v) + "'");
}

bool needs_radius_rule(ExperimentKind e) {
  return e == ExperimentKind::expectation || e == ExperimentKind::variance ||
         e == ExperimentKind::tail || e == ExperimentKind::uniform || e == ExperimentKind::sweep;
}

bool needs_window(ExperimentKind e) { return e != ExperimentKind::weyl; }

} // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : experiment_names)
    if (k == kind)
      return name;
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (const auto& [k, n] : experiment_names)
    if (n == name)
      return k;
  std::string list;
  for (const auto& [k, n] : experiment_names)
    list += (list.empty() ? "" : ", ") + std::string(n);
  fail(ErrorCode::config, "unknown experiment '" + std::string(name) + "' (expected one of " + list + ")");
}

std::vector<std::string> required_keys(ExperimentKind e) {
  std::vector<std::string> keys{"manifold", "lambda|degree"};
  if (needs_window(e))
    keys.emplace_back("W|W_rule");
  if (needs_radius_rule(e))
    keys.emplace_back("r|r_scale");
  if (e == ExperimentKind::sogge)
    keys.emplace_back("radii");
  if (e == ExperimentKind::tail || e == ExperimentKind::uniform)
    keys.emplace_back("samples");
  return keys;
}

RunConfig parse_config(std::string_view text, ExperimentKind experiment) {
  RunConfig cfg;
  cfg.experiment = experiment;
  std::map<std::string, std::string, std::less<>> kv;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorCode::config, "line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end())
      config_error(key, "unknown key");
    if (value.empty())
      config_error(key, "missing value");
    if (!kv.emplace(key, value).second)
      config_error(key, "given more than once");
    cfg.entries.emplace_back(key, value);
  }

  if (kv.empty()) {
    std::string list;
    for (const auto& k : required_keys(experiment))
      list += (list.empty() ? "" : ", ") + k;
    fail(ErrorCode::config, "empty config; required keys: " + list);
  }
  for (const auto& k : required_keys(experiment)) {
    bool present = false;
    for (auto alt : split_list(k))
      for (auto part = alt; !part.empty();) {
        const auto bar = part.find('|');
        present = present || kv.contains(part.substr(0, bar));
        part.remove_prefix(bar == std::string_view::npos ? part.size() : bar + 1);
      }
    if (!present)
      config_error(k, "required for the " + std::string(to_string(experiment)) + " experiment");
  }

  const auto get = [&](std::string_view key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  try {
    cfg.manifold = parse_manifold_kind(*get("manifold"));
  } catch (const Error& e) {
    config_error("manifold", e.what());
  }
  const ManifoldModel model(cfg.manifold);

  if (get("lambda") && get("degree"))
    config_error("degree", "give either lambda or degree, not both");
  if (const auto* v = get("lambda")) {
    cfg.lambdas = to_doubles("lambda", *v);
  } else {
    if (cfg.manifold != ManifoldKind::sphere2)
      config_error("degree", "only meaningful on sphere2");
    for (auto item : split_list(*get("degree"))) {
      const auto l = to_integer<unsigned>("degree", item);
      cfg.lambdas.push_back(std::sqrt(double(l) * (double(l) + 1.0)));
    }
  }
  for (double lam : cfg.lambdas) {
    if (lam < 0.0)
      config_error("lambda", "must be >= 0");
    if (experiment != ExperimentKind::weyl && lam <= 0.0)
      config_error("lambda", "must be > 0");
  }
  if (experiment != ExperimentKind::weyl && experiment != ExperimentKind::sweep &&
      experiment != ExperimentKind::expectation && experiment != ExperimentKind::variance &&
      experiment != ExperimentKind::uniform && cfg.lambdas.size() != 1)
    config_error("lambda", "this experiment takes a single value");

  if (const auto* v = get("W_rule")) {
    if (*v == "constant")
      cfg.window.kind = WindowRuleKind::constant;
    else if (*v == "power")
      cfg.window.kind = WindowRuleKind::power;
    else if (*v == "full")
      cfg.window.kind = WindowRuleKind::full;
    else
      config_error("W_rule", "expected constant, power or full");
  }
  switch (cfg.window.kind) {
  case WindowRuleKind::constant:
    if (needs_window(experiment) && !get("W"))
      config_error("W", "required by W_rule = constant");
    if (const auto* v = get("W"))
      cfg.window.value = to_double("W", *v);
    if (get("W_beta"))
      config_error("W_beta", "only used with W_rule = power");
    break;
  case WindowRuleKind::power:
    if (!get("W_beta"))
      config_error("W_beta", "required by W_rule = power");
    cfg.window.value = to_double("W_beta", *get("W_beta"));
    if (get("W"))
      config_error("W", "not used with W_rule = power");
    break;
  case WindowRuleKind::full:
    if (get("W") || get("W_beta"))
      config_error("W", "not used with W_rule = full");
    break;
  }
  if (needs_window(experiment)) {
    for (double lam : cfg.lambdas) {
      const double w = cfg.window.width_at(lam);
      if (!(w >= 1.0 && w <= lam))
        config_error(cfg.window.kind == WindowRuleKind::power ? "W_beta" : "W",
                     "window width " + std::to_string(w) + " at lambda " + std::to_string(lam) +
                         " violates 1 <= W <= lambda");
    }
  }

  if (get("r") && (get("r_scale") || get("r_alpha")))
    config_error("r", "give either r or r_scale/r_alpha, not both");
  if (const auto* v = get("r")) {
    cfg.radius = {to_double("r", *v), 0.0};
  } else if (const auto* s = get("r_scale")) {
    cfg.radius.scale = to_double("r_scale", *s);
    if (const auto* a = get("r_alpha"))
      cfg.radius.alpha = to_double("r_alpha", *a);
  } else if (get("r_alpha")) {
    config_error("r_alpha", "needs r_scale");
  }
  if (needs_radius_rule(experiment)) {
    for (double lam : cfg.lambdas) {
      const double r = cfg.radius.radius_at(lam);
      if (!(r > 0.0 && r <= model.injectivity_radius()))
        config_error(get("r") ? "r" : "r_scale",
                     "radius " + std::to_string(r) + " at lambda " + std::to_string(lam) +
                         " must lie in (0, pi]");
    }
  }

  if (const auto* v = get("radii")) {
    cfg.radii = to_doubles("radii", *v);
    for (double r : cfg.radii)
      if (!(r > 0.0 && r <= model.injectivity_radius()))
        config_error("radii", "every radius must lie in (0, pi]");
  }
  if (const auto* v = get("center")) {
    const auto c = to_doubles("center", *v);
    if (c.size() != 2)
      config_error("center", "expected two coordinates");
    cfg.center = model.canonical({c[0], c[1]});
  }
  if (const auto* v = get("samples"))
    cfg.samples = to_integer<std::size_t>("samples", *v);
  if (experiment == ExperimentKind::tail && cfg.samples < 1000)
    config_error("samples", "tail experiment needs at least 1000 samples");
  if (experiment == ExperimentKind::uniform && cfg.samples < 1)
    config_error("samples", "must be >= 1");
  if (const auto* v = get("seed"))
    cfg.seed = to_integer<std::uint64_t>("seed", *v);
  if (const auto* v = get("delta")) {
    cfg.delta = to_double("delta", *v);
    if (cfg.delta < 0.0)
      config_error("delta", "must be >= 0");
  }
  if (const auto* v = get("t_points")) {
    cfg.t_points = to_integer<int>("t_points", *v);
    if (cfg.t_points < 2)
      config_error("t_points", "must be >= 2");
  }
  if (const auto* v = get("max_separation")) {
    cfg.max_separation = to_double("max_separation", *v);
    if (!(cfg.max_separation > 0.0 && cfg.max_separation <= model.diameter()))
      config_error("max_separation", "must lie in (0, diameter]");
  }
  if (const auto* v = get("points")) {
    cfg.points = to_integer<int>("points", *v);
    if (cfg.points < 2)
      config_error("points", "must be >= 2");
  }
  if (const auto* v = get("direction"))
    cfg.direction = to_double("direction", *v);
  if (const auto* v = get("order")) {
    cfg.order = to_integer<int>("order", *v);
    if (cfg.order != 0 && cfg.order < min_quadrature_order)
      config_error("order", "must be 0 (automatic) or >= " + std::to_string(min_quadrature_order));
  }
  if (const auto* v = get("threads"))
    cfg.threads = to_integer<unsigned>("threads", *v);
  if (const auto* v = get("plot"))
    cfg.plot = to_bool("plot", *v);
  if (const auto* v = get("out_dir"))
    cfg.out_dir = *v;
  return cfg;
}

RunConfig load_config(const std::string& path, ExperimentKind experiment) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(ErrorCode::io, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), experiment);
}

} // namespace rwlab
