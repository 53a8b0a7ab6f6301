#include "wsnloc/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wsnloc {

std::string format_double(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    const auto pos = text.find('\n');
    std::string_view line = text.substr(0, pos);
    if (!trim(line).empty()) {
      out.push_back(trim(line));
    }
    if (pos == std::string_view::npos) {
      break;
    }
    text.remove_prefix(pos + 1);
  }
  return out;
}

} // namespace

double parse_double(std::string_view text) {
  text = trim(text);
  if (text == "nan" || text == "NaN") {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (text == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (text == "-inf") {
    return -std::numeric_limits<double>::infinity();
  }
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::size_t parse_size(std::string_view text) {
  text = trim(text);
  std::size_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a non-negative integer: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << contents;
  out.flush();
  if (!out) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string positions_csv(const NodePositions& positions) {
  std::string out = "id,x,y,is_anchor\n";
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Point2& p = positions.coords[i];
    out += std::to_string(i) + ',' + format_double(p.x) + ',' + format_double(p.y) + ',' +
           (positions.is_anchor(i) ? '1' : '0') + '\n';
  }
  return out;
}

NodePositions parse_positions_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front().substr(0, 2) != "id") {
    throw std::invalid_argument("positions CSV must start with header id,x,y,is_anchor");
  }
  NodePositions out;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto f = split_fields(lines[k]);
    if (f.size() != 4) {
      throw std::invalid_argument("positions CSV row " + std::to_string(k) + " needs 4 fields");
    }
    const std::size_t id = parse_size(f[0]);
    if (id != out.coords.size()) {
      throw std::invalid_argument("positions CSV ids must be 0..n-1 in order");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.coords.push_back({f[1].empty() ? nan : parse_double(f[1]),
                          f[2].empty() ? nan : parse_double(f[2])});
    if (parse_size(f[3]) != 0) {
      out.anchor_ids.push_back(id);
    }
  }
  return out;
}

std::string edges_csv(const NetworkGraph& graph) {
  std::string out = "i,j,distance\n";
  for (const auto& e : graph.edges()) {
    out += std::to_string(e.i) + ',' + std::to_string(e.j) + ',' + format_double(e.distance) + '\n';
  }
  return out;
}

NetworkGraph parse_edges_csv(std::string_view text, double radio_range, std::size_t node_count) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front().substr(0, 1) != "i") {
    throw std::invalid_argument("edge CSV must start with header i,j,distance");
  }
  struct Row {
    std::size_t i, j;
    double d;
  };
  std::vector<Row> rows;
  std::size_t n = node_count;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto f = split_fields(lines[k]);
    if (f.size() != 3) {
      throw std::invalid_argument("edge CSV row " + std::to_string(k) + " needs 3 fields");
    }
    Row r{parse_size(f[0]), parse_size(f[1]), parse_double(f[2])};
    if (node_count == 0) {
      n = std::max(n, std::max(r.i, r.j) + 1);
    }
    rows.push_back(r);
  }
  NetworkGraph g(n, radio_range);
  for (const Row& r : rows) {
    g.set_edge(r.i, r.j, r.d);
  }
  return g;
}

std::string distance_matrix_csv(const DistanceMatrix& d) {
  std::string out = std::to_string(d.rows()) + '\n';
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (j) {
        out += ',';
      }
      out += format_double(d(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string relative_map_csv(const RelativeMap& map) {
  std::string out = "id,x,y\n";
  for (std::size_t i = 0; i < map.coords.size(); ++i) {
    out += std::to_string(i) + ',' + format_double(map.coords[i].x) + ',' +
           format_double(map.coords[i].y) + '\n';
  }
  return out;
}

std::string spectrum_csv(const RelativeMap& map) {
  std::string out = "index,eigenvalue\n";
  std::size_t k = 0;
  for (double v : map.eigenvalues_used) {
    out += std::to_string(k++) + ',' + format_double(v) + '\n';
  }
  for (double v : map.residual_spectrum) {
    out += std::to_string(k++) + ',' + format_double(v) + '\n';
  }
  return out;
}

std::string error_report_header() { return "algorithm,error_percent,n,anchors,R\n"; }

std::string error_report_row(std::string_view algorithm, const ErrorReport& report) {
  return std::string(algorithm) + ',' + format_double(report.error_percent) + ',' +
         std::to_string(report.n) + ',' + std::to_string(report.anchors) + ',' +
         format_double(report.radio_range) + '\n';
}

std::string per_node_errors_csv(const ErrorReport& report) {
  std::string out = "node,error\n";
  for (const NodeError& e : report.per_node_errors) {
    out += std::to_string(e.node) + ',' + format_double(e.distance) + '\n';
  }
  return out;
}

} // namespace wsnloc
