#include "rwlab/config.hpp"
#include "rwlab/error.hpp"
#include "rwlab/report.hpp"
#include "rwlab/runner.hpp"

#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace rwlab;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(10000.0) == "10000");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, 1.7976931348623157e308}) {
    const auto text = format_double(v);
    double back = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), back);
    CHECK(back == v);
  }
}

TEST_CASE("CSV layout") {
  Table t;
  t.columns = {{"x", ColumnType::real}, {"n", ColumnType::integer}, {"ok", ColumnType::boolean},
               {"note", ColumnType::text}};
  t.add_row({0.5, std::int64_t(3), true, std::string("a,b")});
  t.add_row({std::numeric_limits<double>::quiet_NaN(), std::int64_t(-1), false, std::string()});
  CHECK(to_csv(t) == "x,n,ok,note\n0.5,3,true,\"a,b\"\nnan,-1,false,\n");
  CHECK_THROWS_AS(t.add_row({1.0}), Error);
  CHECK_THROWS_AS(t.add_row({std::int64_t(1), std::int64_t(3), true, std::string()}), Error);
  CHECK(t.numeric_column("ok") == std::vector<double>{1.0, 0.0});
}

TEST_CASE("JSON round trip is lossless") {
  ReportRecord r;
  r.experiment = "sweep";
  r.config = {{"manifold", "torus2"}, {"lambda", "40, 80"}};
  r.table.columns = {{"lambda", ColumnType::real}, {"n_modes", ColumnType::integer},
                     {"admissible", ColumnType::boolean}, {"error", ColumnType::text}};
  r.table.add_row({0.1 + 0.2, std::int64_t(5025), true, std::string()});
  r.table.add_row({std::numeric_limits<double>::quiet_NaN(), std::int64_t(0), false, std::string("empty_window")});
  r.summary = {{"spread", 1.0 / 3.0}, {"inf", std::numeric_limits<double>::infinity()}};
  r.provenance = {18446744073709551615ull, "0.1.0", 1.25, 4};
  const auto back = from_json(to_json(r));
  CHECK(same_record(r, back));
  CHECK(to_json(back) == to_json(r));
  CHECK_THROWS_AS(from_json("{\"schema_version\": 99}"), Error);
  CHECK_THROWS_AS(from_json("not json"), Error);
}

TEST_CASE("SVG output") {
  PlotSpec p;
  p.title = "a < b";
  p.log_x = p.log_y = true;
  p.series = {{"s", {1.0, 10.0, -1.0}, {1.0, 100.0, 5.0}}};
  const auto svg = to_svg(p);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("a &lt; b") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("runner writes the documented files") {
  const auto dir = std::filesystem::temp_directory_path() / "rwlab_report_test";
  std::filesystem::remove_all(dir);
  auto cfg = parse_config("manifold = torus2\nlambda = 40\nW = 5\nr = 0.3\nsamples = 1000\nseed = 7\nt_points = 5\n",
                          ExperimentKind::tail);
  cfg.out_dir = dir.string();
  cfg.plot = true;
  const auto out = run(cfg);
  CHECK(out.files.size() == 3);
  const auto csv = slurp(dir / "tail.csv");
  CHECK(csv.substr(0, csv.find('\n')) == "t,empirical,levy_bound,n_samples");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  const auto rec = from_json(slurp(dir / "tail.json"));
  CHECK(rec.schema_version == 1);
  CHECK(rec.provenance.seed == 7);
  CHECK(rec.config == cfg.entries);
  CHECK(to_csv(rec.table) == csv);
  std::filesystem::remove_all(dir);
}

TEST_CASE("failed runs leave no files") {
  const auto dir = std::filesystem::temp_directory_path() / "rwlab_report_fail";
  std::filesystem::remove_all(dir);
  // the window [2.84, 2.99] holds no eigenvalue
  auto cfg = parse_config("manifold = torus2\nlambda = 2.99\nW = 1\nr = 0.3\nsamples = 1000\n", ExperimentKind::tail);
  cfg.window.value = 0.15;
  cfg.out_dir = dir.string();
  CHECK_THROWS_AS(run(cfg), Error);
  CHECK((!std::filesystem::exists(dir) || std::filesystem::is_empty(dir)));
  std::filesystem::remove_all(dir);
}
