#include "wsnloc/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "wsnloc/csv_io.hpp"

namespace wsnloc {

std::string_view to_string(FigureKind kind) {
  switch (kind) {
  case FigureKind::error_vs_connectivity:
    return "error-vs-connectivity";
  case FigureKind::error_vs_anchors:
    return "error-vs-anchors";
  case FigureKind::error_vs_range_error:
    return "error-vs-range-error";
  }
  return "unknown";
}

FigureKind parse_figure_kind(std::string_view text) {
  for (FigureKind k : {FigureKind::error_vs_connectivity, FigureKind::error_vs_anchors,
                       FigureKind::error_vs_range_error}) {
    if (text == to_string(k)) {
      return k;
    }
  }
  throw std::invalid_argument("unknown figure kind '" + std::string(text) + "'");
}

namespace {

std::string topology_title(TopologyKind t) {
  switch (t) {
  case TopologyKind::random:
    return "random topology";
  case TopologyKind::grid:
    return "grid topology";
  case TopologyKind::hex_grid:
    return "hexagonal grid topology";
  }
  return "";
}

std::string percent_label(double fraction) { return format_double(fraction * 100.0) + "% of R"; }

void sort_series(Series& s) {
  std::vector<std::size_t> idx(s.x.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    idx[i] = i;
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.x[a] < s.x[b]; });
  Series out{s.label, {}, {}};
  for (std::size_t i : idx) {
    out.x.push_back(s.x[i]);
    out.y.push_back(s.y[i]);
  }
  s = std::move(out);
}

} // namespace

Figure build_figure(const SuiteResult& result, FigureKind kind, const PlotFilter& filter) {
  std::vector<const CellResult*> cells;
  for (const CellResult& c : result.cells) {
    if (!c.failure && c.key.topology == filter.topology) {
      cells.push_back(&c);
    }
  }

  Figure fig;
  fig.y_label = "Average error (% of R)";
  if (kind == FigureKind::error_vs_connectivity) {
    const std::size_t anchors = filter.anchors.value_or(10);
    const double noise = filter.range_error.value_or(0.0);
    Series classic{"MDS-MAP", {}, {}};
    Series refined{"IMDS", {}, {}};
    for (const CellResult* c : cells) {
      if (c->key.anchors == anchors && c->key.range_error == noise) {
        classic.x.push_back(c->connectivity.mean);
        classic.y.push_back(c->error_mdsmap.mean);
        refined.x.push_back(c->connectivity.mean);
        refined.y.push_back(c->error_imds.mean);
      }
    }
    if (classic.x.empty()) {
      throw std::invalid_argument("no cells for " + std::string(to_string(kind)) + " with " +
                                  std::to_string(anchors) + " anchors");
    }
    sort_series(classic);
    sort_series(refined);
    fig.series = {classic, refined};
    fig.title = "MDS-MAP vs IMDS, " + topology_title(filter.topology) + ", " +
                std::to_string(anchors) + " anchors, range error " + percent_label(noise);
    fig.x_label = "Connectivity (average neighbors)";
    return fig;
  }

  if (kind == FigureKind::error_vs_anchors) {
    const double noise = filter.range_error.value_or(0.0);
    std::map<std::size_t, Series> by_anchor;
    for (const CellResult* c : cells) {
      if (c->key.range_error != noise) {
        continue;
      }
      Series& s = by_anchor[c->key.anchors];
      s.label = std::to_string(c->key.anchors) + " anchors";
      s.x.push_back(c->connectivity.mean);
      s.y.push_back(c->error_imds.mean);
    }
    if (by_anchor.empty()) {
      throw std::invalid_argument("no cells for error-vs-anchors");
    }
    for (auto& [a, s] : by_anchor) {
      sort_series(s);
      fig.series.push_back(s);
    }
    fig.title = "IMDS by anchor count, " + topology_title(filter.topology) + ", range error " +
                percent_label(noise);
    fig.x_label = "Connectivity (average neighbors)";
    return fig;
  }

  std::set<double> ranges;
  for (const CellResult* c : cells) {
    ranges.insert(c->key.radio_range);
  }
  if (ranges.empty()) {
    throw std::invalid_argument("no cells for error-vs-range-error");
  }
  double radius = 0.0;
  if (filter.radio_range) {
    radius = *filter.radio_range;
  } else {
    auto it = ranges.begin();
    std::advance(it, static_cast<std::ptrdiff_t>((ranges.size() - 1) / 2));
    radius = *it;
  }
  std::map<std::size_t, Series> by_anchor;
  for (const CellResult* c : cells) {
    if (c->key.radio_range != radius) {
      continue;
    }
    Series& s = by_anchor[c->key.anchors];
    s.label = std::to_string(c->key.anchors) + " anchors";
    s.x.push_back(c->key.range_error * 100.0);
    s.y.push_back(c->error_imds.mean);
  }
  if (by_anchor.empty()) {
    throw std::invalid_argument("no cells for error-vs-range-error at R = " + format_double(radius));
  }
  for (auto& [a, s] : by_anchor) {
    sort_series(s);
    fig.series.push_back(s);
  }
  fig.title = "IMDS vs range error, " + topology_title(filter.topology) + ", R = " +
              format_double(radius);
  fig.x_label = "Range error (% of R)";
  return fig;
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;
constexpr double kTop = 45.0;
constexpr double kBottom = 55.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f"};

std::string fixed(double v, int digits = 2) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  std::string s(buf, res.ptr);
  return s == "-0.00" ? "0.00" : s;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

double nice_step(double span) {
  if (!(span > 0.0)) {
    return 1.0;
  }
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  const double nice = f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0;
  return nice * mag;
}

struct Axis {
  double lo;
  double hi;
  double step;
};

Axis make_axis(double lo, double hi, bool from_zero) {
  if (from_zero) {
    lo = std::min(lo, 0.0);
  }
  if (hi - lo <= 0.0) {
    const double pad = std::max(std::abs(hi) * 0.1, 1.0);
    lo -= pad;
    hi += pad;
  }
  const double step = nice_step(hi - lo);
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

} // namespace

std::string render_svg(const Figure& figure) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const Series& s : figure.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  }
  if (!std::isfinite(xmin)) {
    throw std::invalid_argument("figure has no finite data");
  }
  const Axis ax = make_axis(xmin, xmax, false);
  const Axis ay = make_axis(ymin, ymax, true);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - ay.lo) / (ay.hi - ay.lo) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" +
         fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + ' ' + fixed(kHeight, 0) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
         xml_escape(figure.title) + "</text>\n";

  // Grid and ticks.
  out += "<g class=\"axes\" stroke=\"#000\" fill=\"none\">\n";
  out += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(pw) +
         "\" height=\"" + fixed(ph) + "\"/>\n";
  out += "</g>\n<g class=\"ticks\">\n";
  const int xticks = static_cast<int>(std::llround((ax.hi - ax.lo) / ax.step));
  for (int i = 0; i <= xticks; ++i) {
    const double v = ax.lo + i * ax.step;
    const std::string x = fixed(px(v));
    out += "<line x1=\"" + x + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + x + "\" y2=\"" +
           fixed(kTop + ph) + "\" stroke=\"#ddd\"/>\n";
    out += "<text x=\"" + x + "\" y=\"" + fixed(kTop + ph + 16) + "\" text-anchor=\"middle\">" +
           format_double(std::round(v / ax.step) * ax.step) + "</text>\n";
  }
  const int yticks = static_cast<int>(std::llround((ay.hi - ay.lo) / ay.step));
  for (int i = 0; i <= yticks; ++i) {
    const double v = ay.lo + i * ay.step;
    const std::string y = fixed(py(v));
    out += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + y + "\" x2=\"" + fixed(kLeft + pw) +
           "\" y2=\"" + y + "\" stroke=\"#ddd\"/>\n";
    out += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(py(v) + 4) +
           "\" text-anchor=\"end\">" + format_double(std::round(v / ay.step) * ay.step) +
           "</text>\n";
  }
  out += "</g>\n";
  out += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"" + fixed(kHeight - 14) +
         "\" text-anchor=\"middle\">" + xml_escape(figure.x_label) + "</text>\n";
  out += "<text transform=\"translate(20," + fixed(kTop + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + xml_escape(figure.y_label) + "</text>\n";

  for (std::size_t k = 0; k < figure.series.size(); ++k) {
    const Series& s = figure.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    out += "<g class=\"series\" data-label=\"" + xml_escape(s.label) + "\">\n";
    if (s.x.size() > 1) {
      out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (i) {
          out += ' ';
        }
        out += fixed(px(s.x[i])) + ',' + fixed(py(s.y[i]));
      }
      out += "\"/>\n";
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out += "<circle cx=\"" + fixed(px(s.x[i])) + "\" cy=\"" + fixed(py(s.y[i])) +
             "\" r=\"3.5\" fill=\"" + color + "\" data-x=\"" + format_double(s.x[i]) +
             "\" data-y=\"" + format_double(s.y[i]) + "\"/>\n";
    }
    out += "</g>\n";
    const double ly = kTop + 14 + 20.0 * static_cast<double>(k);
    const double lx = kLeft + pw + 14;
    out += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(lx + 22) +
           "\" y2=\"" + fixed(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fixed(lx + 28) + "\" y=\"" + fixed(ly + 4) + "\">" +
           xml_escape(s.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

void emit_plot(const SuiteResult& result, FigureKind kind, const std::string& path,
               const PlotFilter& filter) {
  write_text_file(path, render_svg(build_figure(result, kind, filter)));
}

} // namespace wsnloc
