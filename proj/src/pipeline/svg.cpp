// SPDX-License-Identifier: Apache-2.0
#include "corpuslens/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace corpuslens::svg {

namespace {

const char* const kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string header(int w, int h, const std::string& title, const std::string& comment) {
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
    << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  if (!comment.empty()) o << "<!-- " << comment << " -->\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << w / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << escape(title) << "</text>\n";
  return o.str();
}

}  // namespace

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string bar_chart(const std::string& title, const std::vector<std::string>& categories,
                      const std::vector<Series>& series, const std::string& comment) {
  const int left = 60, right = 140, top = 30, bottom = 60, plot_h = 260;
  const int group_w = std::max(40, 18 * static_cast<int>(std::max<std::size_t>(1, series.size())) + 16);
  const int w = left + right + group_w * static_cast<int>(std::max<std::size_t>(1, categories.size()));
  const int h = top + plot_h + bottom;
  double lo = 0, hi = 0;
  for (const auto& s : series)
    for (double v : s.values)
      if (!std::isnan(v)) lo = std::min(lo, v), hi = std::max(hi, v);
  if (hi == lo) hi = lo + 1;
  auto y = [&](double v) { return top + plot_h * (hi - v) / (hi - lo); };

  std::ostringstream o;
  o << header(w, h, title, comment);
  o << "<line x1=\"" << left << "\" y1=\"" << num(y(0)) << "\" x2=\"" << w - right << "\" y2=\"" << num(y(0))
    << "\" stroke=\"black\"/>\n";
  o << "<text x=\"" << left - 4 << "\" y=\"" << num(y(hi) + 4) << "\" text-anchor=\"end\">" << num(hi) << "</text>\n";
  o << "<text x=\"" << left - 4 << "\" y=\"" << num(y(lo) + 4) << "\" text-anchor=\"end\">" << num(lo) << "</text>\n";
  const double bar_w = (group_w - 16.0) / static_cast<double>(std::max<std::size_t>(1, series.size()));
  for (std::size_t c = 0; c < categories.size(); ++c) {
    const double gx = left + static_cast<double>(c) * group_w + 8;
    for (std::size_t s = 0; s < series.size(); ++s) {
      if (c >= series[s].values.size() || std::isnan(series[s].values[c])) continue;
      const double v = series[s].values[c];
      const double y0 = y(std::max(0.0, v)), y1 = y(std::min(0.0, v));
      o << "<rect x=\"" << num(gx + static_cast<double>(s) * bar_w) << "\" y=\"" << num(y0) << "\" width=\""
        << num(bar_w - 1) << "\" height=\"" << num(y1 - y0) << "\" fill=\"" << kPalette[s % 10] << "\"/>\n";
    }
    o << "<text x=\"" << num(gx + (group_w - 16) / 2.0) << "\" y=\"" << top + plot_h + 16
      << "\" text-anchor=\"middle\">" << escape(categories[c]) << "</text>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const int ly = top + 10 + 16 * static_cast<int>(s);
    o << "<rect x=\"" << w - right + 10 << "\" y=\"" << ly - 9 << "\" width=\"10\" height=\"10\" fill=\""
      << kPalette[s % 10] << "\"/>\n";
    o << "<text x=\"" << w - right + 24 << "\" y=\"" << ly << "\">" << escape(series[s].name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string scatter(const std::string& title, const std::vector<PointGroup>& groups, const std::string& comment) {
  const int left = 50, right = 150, top = 30, bottom = 40, size = 360;
  const int w = left + size + right, h = top + size + bottom;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& g : groups)
    for (const auto& [px, py] : g.points) x0 = std::min(x0, px), x1 = std::max(x1, px), y0 = std::min(y0, py), y1 = std::max(y1, py);
  if (!(x1 > x0)) x0 -= 1, x1 += 1;
  if (!(y1 > y0)) y0 -= 1, y1 += 1;
  auto sx = [&](double v) { return left + size * (v - x0) / (x1 - x0); };
  auto sy = [&](double v) { return top + size * (y1 - v) / (y1 - y0); };
  std::ostringstream o;
  o << header(w, h, title, comment);
  o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << size << "\" height=\"" << size
    << "\" fill=\"none\" stroke=\"#999\"/>\n";
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t i = 0; i < groups[g].points.size(); ++i) {
      const auto& [px, py] = groups[g].points[i];
      o << "<circle cx=\"" << num(sx(px)) << "\" cy=\"" << num(sy(py)) << "\" r=\"3\" fill=\"" << kPalette[g % 10]
        << "\" fill-opacity=\"0.7\"/>\n";
      if (i < groups[g].labels.size() && !groups[g].labels[i].empty())
        o << "<text x=\"" << num(sx(px) + 5) << "\" y=\"" << num(sy(py) - 5) << "\">" << escape(groups[g].labels[i])
          << "</text>\n";
    }
    const int ly = top + 10 + 16 * static_cast<int>(g);
    o << "<circle cx=\"" << left + size + 15 << "\" cy=\"" << ly - 4 << "\" r=\"4\" fill=\"" << kPalette[g % 10] << "\"/>\n";
    o << "<text x=\"" << left + size + 24 << "\" y=\"" << ly << "\">" << escape(groups[g].name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string heatmap(const std::string& title, const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                    const std::vector<std::vector<double>>& values, const std::string& comment) {
  const int cell = 48, left = 110, top = 90;
  const int w = left + cell * static_cast<int>(cols.size()) + 20;
  const int h = top + cell * static_cast<int>(rows.size()) + 20;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& r : values)
    for (double v : r)
      if (!std::isnan(v)) lo = std::min(lo, v), hi = std::max(hi, v);
  if (!(hi > lo)) hi = lo + 1;
  std::ostringstream o;
  o << header(w, h, title, comment);
  for (std::size_t c = 0; c < cols.size(); ++c)
    o << "<text transform=\"translate(" << left + cell * static_cast<int>(c) + cell / 2 << ',' << top - 6
      << ") rotate(-45)\">" << escape(cols[c]) << "</text>\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    o << "<text x=\"" << left - 6 << "\" y=\"" << top + cell * static_cast<int>(r) + cell / 2 + 4
      << "\" text-anchor=\"end\">" << escape(rows[r]) << "</text>\n";
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const double v = r < values.size() && c < values[r].size() ? values[r][c] : std::nan("");
      std::string fill = "#dddddd";
      if (!std::isnan(v)) {
        const double t = (v - lo) / (hi - lo);
        char buf[16];
        const int shade = static_cast<int>(std::lround(255 - 200 * t));
        std::snprintf(buf, sizeof buf, "#%02x%02xff", shade, shade);
        fill = buf;
      }
      const int x = left + cell * static_cast<int>(c), y = top + cell * static_cast<int>(r);
      o << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"" << fill
        << "\" stroke=\"white\"/>\n";
      if (!std::isnan(v))
        o << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4 << "\" text-anchor=\"middle\">" << num(v)
          << "</text>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace corpuslens::svg
