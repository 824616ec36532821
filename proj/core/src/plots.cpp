#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "minkprobe/errors.hpp"
#include "minkprobe/experiments.hpp"
#include "minkprobe/io.hpp"

namespace minkprobe {

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorCode::MalformedCSV, "missing column '" + name + "'");
    return static_cast<int>(it - header.begin());
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size())
      throw Error(ErrorCode::MalformedCSV, fmt::format("row has {} cells, header has {}", cells.size(), t.header.size()));
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) throw Error(ErrorCode::MalformedCSV, "empty CSV");
  if (t.rows.empty()) throw Error(ErrorCode::MalformedCSV, "CSV has no data rows");
  return t;
}

double to_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error(ErrorCode::MalformedCSV, "not a number: '" + s + "'");
  return v;
}

constexpr double kW = 640, kH = 480, kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kW - kLeft - kRight); }
  double py(double y) const { return kH - kBottom - (y - y0) / (y1 - y0) * (kH - kTop - kBottom); }
};

void pad(double& lo, double& hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double m = 0.05 * (hi - lo);
  lo -= m;
  hi += m;
}

std::string header_svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const Frame& f) {
  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
      kW, kH);
  s += fmt::format("<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
                   kW / 2, title);
  s += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft, kTop,
      kW - kLeft - kRight, kH - kTop - kBottom);
  for (int i = 0; i <= 4; ++i) {
    const double x = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
    s += fmt::format("<text x=\"{:.1f}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{:.3g}</text>\n",
                     f.px(x), kH - kBottom + 16, x);
    s += fmt::format("<text x=\"{}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{:.3g}</text>\n",
                     kLeft - 6, f.py(y) + 4, y);
  }
  s += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
                   kW / 2, kH - 16, xlabel);
  s += fmt::format(
      "<text x=\"16\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
      kH / 2, kH / 2, ylabel);
  return s;
}

std::string polyline(const Frame& f, const std::vector<std::pair<double, double>>& pts, const char* color,
                     const char* dash = nullptr) {
  std::string s = "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"";
  s += color;
  s += "\"";
  if (dash) s += fmt::format(" stroke-dasharray=\"{}\"", dash);
  s += " points=\"";
  for (const auto& [x, y] : pts) s += fmt::format("{:.2f},{:.2f} ", f.px(x), f.py(y));
  s += "\"/>\n";
  return s;
}

std::string render_scaling(const Table& t) {
  const int cn = t.column("N"), ce = t.column("eta");
  std::map<double, std::vector<double>> by_n;
  for (const auto& row : t.rows) {
    const double n = to_double(row[cn]);
    const double e = to_double(row[ce]);
    if (n > 0 && e > 0 && std::isfinite(e)) by_n[std::log10(n)].push_back(std::log10(e));
  }
  if (by_n.empty()) throw Error(ErrorCode::MalformedCSV, "no positive errors to plot");
  Frame f{by_n.begin()->first, by_n.rbegin()->first, 1e300, -1e300};
  for (const auto& [x, ys] : by_n)
    for (double y : ys) {
      f.y0 = std::min(f.y0, y);
      f.y1 = std::max(f.y1, y);
    }
  pad(f.x0, f.x1);
  pad(f.y0, f.y1);
  std::string s = header_svg("Reconstruction error vs sample size", "log10 N", "log10 eta", f);
  std::vector<std::pair<double, double>> med;
  for (auto& [x, ys] : by_n) {
    for (double y : ys)
      s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"1.5\" fill=\"#9ab\"/>\n", f.px(x), f.py(y));
    std::sort(ys.begin(), ys.end());
    const std::size_t m = ys.size();
    // median of log = log of median for odd counts; close enough for display otherwise
    med.emplace_back(x, m % 2 ? ys[m / 2] : 0.5 * (ys[m / 2 - 1] + ys[m / 2]));
  }
  s += polyline(f, med, "#c33");
  for (const auto& [x, y] : med)
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3.5\" fill=\"#c33\"/>\n", f.px(x), f.py(y));
  if (med.size() >= 2) {
    double mx = 0, my = 0;
    for (const auto& [x, y] : med) {
      mx += x;
      my += y;
    }
    mx /= med.size();
    my /= med.size();
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : med) {
      sxx += (x - mx) * (x - mx);
      sxy += (x - mx) * (y - my);
    }
    if (sxx > 0) {
      const double b = sxy / sxx;
      s += polyline(f, {{med.front().first, my + b * (med.front().first - mx)}, {med.back().first, my + b * (med.back().first - mx)}},
                    "#333", "6 4");
      s += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">slope {:.3f}</text>\n",
                       kW - kRight - 8, kTop + 18, b);
    }
  }
  s += "</svg>\n";
  return s;
}

std::string render_tail(const Table& t) {
  const int cn = t.column("N"), ceps = t.column("epsilon"), ctv = t.column("freq_tv"), cdc = t.column("freq_dc");
  std::vector<std::pair<double, double>> tv, dc;
  double xmax = 0.0;
  for (const auto& row : t.rows) {
    const double x = to_double(row[cn]) * std::pow(to_double(row[ceps]), 2);
    tv.emplace_back(x, to_double(row[ctv]));
    dc.emplace_back(x, to_double(row[cdc]));
    xmax = std::max(xmax, x);
  }
  std::sort(tv.begin(), tv.end());
  std::sort(dc.begin(), dc.end());
  Frame f{0.0, xmax > 0 ? xmax : 1.0, 0.0, 1.0};
  pad(f.x0, f.x1);
  pad(f.y0, f.y1);
  std::string s = header_svg("Deviation frequency vs bound", "N eps^2", "frequency", f);
  std::vector<std::pair<double, double>> bound;
  for (int i = 0; i <= 200; ++i) {
    const double x = f.x1 * i / 200.0;
    bound.emplace_back(x, std::min(1.0, 3.0 * std::exp(-x / 25.0)));
  }
  s += polyline(f, bound, "#333", "6 4");
  for (const auto& [x, y] : tv)
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"#c33\"/>\n", f.px(x), f.py(y));
  for (const auto& [x, y] : dc)
    s += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"5\" height=\"5\" fill=\"#36c\"/>\n", f.px(x) - 2.5,
                     f.py(y) - 2.5);
  s += fmt::format(
      "<text x=\"{0}\" y=\"{1}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\" fill=\"#c33\">d_tv</text>\n"
      "<text x=\"{0}\" y=\"{2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\" fill=\"#36c\">d_c lower</text>\n"
      "<text x=\"{0}\" y=\"{3}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">3 exp(-N eps^2/25)</text>\n",
      kW - kRight - 8, kTop + 18, kTop + 34, kTop + 50);
  s += "</svg>\n";
  return s;
}

}  // namespace

std::string render_plot(const std::string& csv_text, PlotKind kind) {
  const Table t = parse_csv(csv_text);
  return kind == PlotKind::Scaling ? render_scaling(t) : render_tail(t);
}

void emit_plot(const std::filesystem::path& csv_path, PlotKind kind, const std::filesystem::path& svg_path) {
  write_text_file(svg_path, render_plot(read_text_file(csv_path), kind));
}

}  // namespace minkprobe
