#ifndef RWLAB_REPORT_HPP
#define RWLAB_REPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rwlab {

inline constexpr int schema_version = 1;

enum class ColumnType { real, integer, boolean, text };

struct Column {
  std::string name;
  ColumnType type = ColumnType::real;
  bool operator==(const Column&) const = default;
};

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t column_index(const std::string& name) const;
  /// Numeric view of one column (booleans as 0/1; text is rejected).
  std::vector<double> numeric_column(const std::string& name) const;
};

struct Provenance {
  std::uint64_t seed = 0;
  std::string code_version;
  double wall_time_seconds = 0.0;
  unsigned threads = 0;
};

/// Scalar summary values (fitted constants, medians, flags) keyed by name.
using Summary = std::vector<std::pair<std::string, Cell>>;

struct ReportRecord {
  int schema_version = rwlab::schema_version;
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> config;
  Table table;
  Summary summary;
  Provenance provenance;
};

/// Shortest-safe text for a double: 17 significant digits, "nan", "inf", "-inf".
std::string format_double(double v);

/// Header row plus one line per row, LF endings, no locale dependence.
std::string to_csv(const Table& table);
std::string to_json(const ReportRecord& record);
/// Inverse of to_json; throws Error(io) on schema mismatch.
ReportRecord from_json(const std::string& text);
bool same_record(const ReportRecord& a, const ReportRecord& b);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<PlotSeries> series;
};

/// Polyline plot with axes and tick labels; points that cannot be drawn
/// (non-finite, or nonpositive on a log axis) are skipped.
std::string to_svg(const PlotSpec& plot);

} // namespace rwlab

#endif
