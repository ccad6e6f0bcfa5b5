#include "rwlab/report.hpp"

#include "rwlab/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <locale>
#include <sstream>

namespace rwlab {

using nlohmann::json;

namespace {

std::string_view type_name(ColumnType t) {
  switch (t) {
  case ColumnType::real:
    return "real";
  case ColumnType::integer:
    return "integer";
  case ColumnType::boolean:
    return "boolean";
  case ColumnType::text:
    return "text";
  }
  return "real";
}

ColumnType parse_type(const std::string& s) {
  if (s == "real")
    return ColumnType::real;
  if (s == "integer")
    return ColumnType::integer;
  if (s == "boolean")
    return ColumnType::boolean;
  if (s == "text")
    return ColumnType::text;
  fail(ErrorCode::io, "report: unknown column type '" + s + "'");
}

bool matches(ColumnType t, const Cell& c) {
  switch (t) {
  case ColumnType::real:
    return std::holds_alternative<double>(c);
  case ColumnType::integer:
    return std::holds_alternative<std::int64_t>(c);
  case ColumnType::boolean:
    return std::holds_alternative<bool>(c);
  case ColumnType::text:
    return std::holds_alternative<std::string>(c);
  }
  return false;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char ch : s)
    out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>)
          return format_double(v);
        else if constexpr (std::is_same_v<T, std::int64_t>)
          return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "true" : "false";
        else
          return csv_escape(v);
      },
      c);
}

// JSON has no non-finite numbers, so those travel as strings.
json real_json(double v) {
  if (std::isfinite(v))
    return v;
  return format_double(v);
}

double real_from_json(const json& j) {
  if (j.is_number())
    return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan")
    return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf")
    return std::numeric_limits<double>::infinity();
  if (s == "-inf")
    return -std::numeric_limits<double>::infinity();
  fail(ErrorCode::io, "report: bad real value '" + s + "'");
}

json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>)
          return real_json(v);
        else
          return v;
      },
      c);
}

Cell cell_from_json(ColumnType t, const json& j) {
  switch (t) {
  case ColumnType::real:
    return real_from_json(j);
  case ColumnType::integer:
    return j.get<std::int64_t>();
  case ColumnType::boolean:
    return j.get<bool>();
  case ColumnType::text:
    return j.get<std::string>();
  }
  return 0.0;
}

ColumnType type_of(const Cell& c) {
  return static_cast<ColumnType>(c.index());
}

bool same_cell(const Cell& a, const Cell& b) {
  if (a.index() != b.index())
    return false;
  if (const auto* x = std::get_if<double>(&a)) {
    const double y = std::get<double>(b);
    return (std::isnan(*x) && std::isnan(y)) || *x == y;
  }
  return a == b;
}

} // namespace

void Table::add_row(std::vector<Cell> row) {
  require(row.size() == columns.size(), "table row width does not match the header");
  for (std::size_t i = 0; i < row.size(); ++i)
    require(matches(columns[i].type, row[i]), "table cell type mismatch in column " + columns[i].name);
  rows.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == name)
      return i;
  fail(ErrorCode::invalid_argument, "no column named '" + name + "'");
}

std::vector<double> Table::numeric_column(const std::string& name) const {
  const std::size_t k = column_index(name);
  require(columns[k].type != ColumnType::text, "column '" + name + "' is not numeric");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const Cell& c = row[k];
    if (const auto* d = std::get_if<double>(&c))
      out.push_back(*d);
    else if (const auto* i = std::get_if<std::int64_t>(&c))
      out.push_back(static_cast<double>(*i));
    else
      out.push_back(std::get<bool>(c) ? 1.0 : 0.0);
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out += (i ? "," : "") + csv_escape(table.columns[i].name);
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out += (i ? "," : "") + cell_text(row[i]);
    out += '\n';
  }
  return out;
}

std::string to_json(const ReportRecord& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["experiment"] = r.experiment;
  json cfg = json::array();
  for (const auto& [k, v] : r.config)
    cfg.push_back({{"key", k}, {"value", v}});
  j["config"] = cfg;
  json cols = json::array();
  for (const auto& c : r.table.columns)
    cols.push_back({{"name", c.name}, {"type", type_name(c.type)}});
  j["columns"] = cols;
  json rows = json::array();
  for (const auto& row : r.table.rows) {
    json jr = json::array();
    for (const auto& c : row)
      jr.push_back(cell_json(c));
    rows.push_back(jr);
  }
  j["rows"] = rows;
  json summary = json::array();
  for (const auto& [k, c] : r.summary)
    summary.push_back({{"name", k}, {"type", type_name(type_of(c))}, {"value", cell_json(c)}});
  j["summary"] = summary;
  j["provenance"] = {{"seed", r.provenance.seed},
                     {"code_version", r.provenance.code_version},
                     {"wall_time_seconds", r.provenance.wall_time_seconds},
                     {"threads", r.provenance.threads}};
  return j.dump(2) + "\n";
}

ReportRecord from_json(const std::string& text) {
  ReportRecord r;
  try {
    const json j = json::parse(text);
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != schema_version)
      fail(ErrorCode::io, "report: unsupported schema_version " + std::to_string(r.schema_version));
    r.experiment = j.at("experiment").get<std::string>();
    for (const auto& e : j.at("config"))
      r.config.emplace_back(e.at("key").get<std::string>(), e.at("value").get<std::string>());
    for (const auto& c : j.at("columns"))
      r.table.columns.push_back({c.at("name").get<std::string>(), parse_type(c.at("type").get<std::string>())});
    for (const auto& jr : j.at("rows")) {
      if (jr.size() != r.table.columns.size())
        fail(ErrorCode::io, "report: row width does not match the header");
      std::vector<Cell> row;
      for (std::size_t i = 0; i < jr.size(); ++i)
        row.push_back(cell_from_json(r.table.columns[i].type, jr[i]));
      r.table.rows.push_back(std::move(row));
    }
    for (const auto& s : j.at("summary"))
      r.summary.emplace_back(s.at("name").get<std::string>(),
                             cell_from_json(parse_type(s.at("type").get<std::string>()), s.at("value")));
    const auto& p = j.at("provenance");
    r.provenance.seed = p.at("seed").get<std::uint64_t>();
    r.provenance.code_version = p.at("code_version").get<std::string>();
    r.provenance.wall_time_seconds = p.at("wall_time_seconds").get<double>();
    r.provenance.threads = p.at("threads").get<unsigned>();
  } catch (const json::exception& e) {
    fail(ErrorCode::io, std::string("report: malformed JSON: ") + e.what());
  }
  return r;
}

bool same_record(const ReportRecord& a, const ReportRecord& b) {
  if (a.schema_version != b.schema_version || a.experiment != b.experiment || a.config != b.config ||
      a.table.columns != b.table.columns || a.table.rows.size() != b.table.rows.size() ||
      a.summary.size() != b.summary.size())
    return false;
  for (std::size_t i = 0; i < a.table.rows.size(); ++i)
    for (std::size_t k = 0; k < a.table.columns.size(); ++k)
      if (!same_cell(a.table.rows[i][k], b.table.rows[i][k]))
        return false;
  for (std::size_t i = 0; i < a.summary.size(); ++i)
    if (a.summary[i].first != b.summary[i].first || !same_cell(a.summary[i].second, b.summary[i].second))
      return false;
  return a.provenance.seed == b.provenance.seed && a.provenance.code_version == b.provenance.code_version &&
         a.provenance.wall_time_seconds == b.provenance.wall_time_seconds &&
         a.provenance.threads == b.provenance.threads;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '&':
      out += "&amp;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += ch;
    }
  }
  return out;
}

std::string short_number(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 4);
  return std::string(buf.data(), res.ptr);
}

constexpr std::array<const char*, 6> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

} // namespace

std::string to_svg(const PlotSpec& plot) {
  constexpr double width = 640.0, height = 420.0;
  constexpr double left = 70.0, right = 20.0, top = 40.0, bottom = 50.0;
  const auto tx = [&](double v) { return plot.log_x ? std::log10(v) : v; };
  const auto ty = [&](double v) { return plot.log_y ? std::log10(v) : v; };
  const auto drawable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!plot.log_x || x > 0) && (!plot.log_y || y > 0);
  };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : plot.series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      if (drawable(s.x[i], s.y[i])) {
        x0 = std::min(x0, tx(s.x[i]));
        x1 = std::max(x1, tx(s.x[i]));
        y0 = std::min(y0, ty(s.y[i]));
        y1 = std::max(y1, ty(s.y[i]));
      }
  if (!std::isfinite(x0)) {
    x0 = y0 = 0.0;
    x1 = y1 = 1.0;
  }
  if (x1 - x0 <= 0.0) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 - y0 <= 0.0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pw = width - left - right, ph = height - top - bottom;
  const auto px = [&](double v) { return left + (v - x0) / (x1 - x0) * pw; };
  const auto py = [&](double v) { return top + ph - (v - y0) / (y1 - y0) * ph; };

  std::ostringstream o;
  o.imbue(std::locale::classic());
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
    << xml_escape(plot.title) << "</text>\n";
  o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double vx = x0 + (x1 - x0) * k / 4.0;
    const double vy = y0 + (y1 - y0) * k / 4.0;
    const double lx = plot.log_x ? std::pow(10.0, vx) : vx;
    const double ly = plot.log_y ? std::pow(10.0, vy) : vy;
    o << "<text x=\"" << px(vx) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">"
      << short_number(lx) << "</text>\n";
    o << "<text x=\"" << left - 6 << "\" y=\"" << py(vy) + 4 << "\" text-anchor=\"end\">" << short_number(ly)
      << "</text>\n";
  }
  o << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">"
    << xml_escape(plot.x_label) << (plot.log_x ? " (log)" : "") << "</text>\n";
  o << "<text x=\"14\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
    << top + ph / 2 << ")\">" << xml_escape(plot.y_label) << (plot.log_y ? " (log)" : "") << "</text>\n";
  for (std::size_t si = 0; si < plot.series.size(); ++si) {
    const auto& s = plot.series[si];
    const char* colour = palette[si % palette.size()];
    o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      if (drawable(s.x[i], s.y[i]))
        o << px(tx(s.x[i])) << ',' << py(ty(s.y[i])) << ' ';
    o << "\"/>\n";
    o << "<text x=\"" << left + 8 << "\" y=\"" << top + 14 + 14 * si << "\" fill=\"" << colour << "\">"
      << xml_escape(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

} // namespace rwlab
