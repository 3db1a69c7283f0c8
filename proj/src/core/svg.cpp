/* Copyright 2026 The SSG Embedding Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "core/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "core/error.hpp"

namespace ssg::svg {

namespace {

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double left = 60, right = 0, top = 40, bottom = 0;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;

  double px(double x) const { return left + (x - xmin) / (xmax - xmin) * (right - left); }
  double py(double y) const { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); }
};

Frame make_frame(const Eigen::MatrixXd& points, const ScatterOptions& o, double legend_width) {
  require(points.cols() >= 2, ErrorKind::ShapeMismatch, "scatter plot needs two columns");
  Frame f;
  f.right = o.width - legend_width - 20;
  f.bottom = o.height - 50;
  if (points.rows() > 0) {
    f.xmin = points.col(0).minCoeff();
    f.xmax = points.col(0).maxCoeff();
    f.ymin = points.col(1).minCoeff();
    f.ymax = points.col(1).maxCoeff();
  }
  auto pad = [](double& lo, double& hi) {
    double span = hi - lo;
    if (span <= 0) span = 1.0;
    lo -= 0.05 * span;
    hi += 0.05 * span;
  };
  pad(f.xmin, f.xmax);
  pad(f.ymin, f.ymax);
  return f;
}

void open_document(std::ostringstream& out, const ScatterOptions& o, const Frame& f) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << o.width << "\" height=\"" << o.height
      << "\" viewBox=\"0 0 " << o.width << ' ' << o.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!o.title.empty())
    out << "<text x=\"" << o.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(o.title)
        << "</text>\n";
  out << "<rect x=\"" << num(f.left) << "\" y=\"" << num(f.top) << "\" width=\"" << num(f.right - f.left)
      << "\" height=\"" << num(f.bottom - f.top) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.xmin + (f.xmax - f.xmin) * i / 4.0;
    const double yv = f.ymin + (f.ymax - f.ymin) * i / 4.0;
    out << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << num(f.bottom + 16) << "\" text-anchor=\"middle\">"
        << num(xv) << "</text>\n";
    out << "<text x=\"" << num(f.left - 6) << "\" y=\"" << num(f.py(yv) + 4) << "\" text-anchor=\"end\">" << num(yv)
        << "</text>\n";
  }
  out << "<text x=\"" << num((f.left + f.right) / 2) << "\" y=\"" << num(f.bottom + 36)
      << "\" text-anchor=\"middle\">" << escape(o.x_label) << "</text>\n";
  out << "<text transform=\"translate(16," << num((f.top + f.bottom) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(o.y_label) << "</text>\n";
}

}  // namespace

std::string ramp_color(double t) {
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
  // blue -> red -> yellow
  const std::array<std::array<double, 3>, 3> stops = {{{0.13, 0.27, 0.80}, {0.86, 0.13, 0.15}, {0.99, 0.91, 0.15}}};
  const double x = t * 2.0;
  const int i = std::min(1, static_cast<int>(x));
  const double u = x - i;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(255 * (stops[i][0] + u * (stops[i + 1][0] - stops[i][0])))),
                static_cast<int>(std::lround(255 * (stops[i][1] + u * (stops[i + 1][1] - stops[i][1])))),
                static_cast<int>(std::lround(255 * (stops[i][2] + u * (stops[i + 1][2] - stops[i][2])))));
  return buf;
}

std::string scatter_continuous(const Eigen::MatrixXd& points, const std::vector<double>& values,
                               const ScatterOptions& o) {
  require(values.size() == static_cast<std::size_t>(points.rows()), ErrorKind::ShapeMismatch,
          "one colour value per point required");
  const Frame f = make_frame(points, o, 70);
  std::ostringstream out;
  open_document(out, o, f);
  double lo = 0, hi = 1;
  if (!values.empty()) {
    lo = *std::min_element(values.begin(), values.end());
    hi = *std::max_element(values.begin(), values.end());
  }
  const double span = hi > lo ? hi - lo : 1.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    out << "<circle cx=\"" << num(f.px(points(i, 0))) << "\" cy=\"" << num(f.py(points(i, 1))) << "\" r=\""
        << num(o.point_radius) << "\" fill=\"" << ramp_color((values[i] - lo) / span)
        << "\" fill-opacity=\"0.85\"/>\n";
  const double bx = f.right + 25, bw = 16;
  const int steps = 40;
  for (int s = 0; s < steps; ++s) {
    const double t = 1.0 - (s + 0.5) / steps;
    const double y0 = f.top + (f.bottom - f.top) * s / steps;
    out << "<rect x=\"" << num(bx) << "\" y=\"" << num(y0) << "\" width=\"" << num(bw) << "\" height=\""
        << num((f.bottom - f.top) / steps + 0.5) << "\" fill=\"" << ramp_color(t) << "\"/>\n";
  }
  out << "<text x=\"" << num(bx + bw + 4) << "\" y=\"" << num(f.top + 10) << "\">" << num(hi) << "</text>\n";
  out << "<text x=\"" << num(bx + bw + 4) << "\" y=\"" << num(f.bottom) << "\">" << num(lo) << "</text>\n";
  if (!o.color_label.empty())
    out << "<text x=\"" << num(bx) << "\" y=\"" << num(f.top - 8) << "\">" << escape(o.color_label) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string scatter_categorical(const Eigen::MatrixXd& points, const std::vector<int>& labels,
                                const ScatterOptions& o) {
  require(labels.size() == static_cast<std::size_t>(points.rows()), ErrorKind::ShapeMismatch,
          "one label per point required");
  const Frame f = make_frame(points, o, 90);
  std::ostringstream out;
  open_document(out, o, f);
  std::map<int, std::size_t> counts;
  for (int l : labels) ++counts[l];
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    out << "<circle cx=\"" << num(f.px(points(i, 0))) << "\" cy=\"" << num(f.py(points(i, 1))) << "\" r=\""
        << num(o.point_radius) << "\" fill=\"" << kPalette[static_cast<std::size_t>(std::abs(l)) % kPalette.size()]
        << "\" fill-opacity=\"0.85\"/>\n";
  }
  double y = f.top + 10;
  for (const auto& [label, count] : counts) {
    out << "<circle cx=\"" << num(f.right + 28) << "\" cy=\"" << num(y - 4) << "\" r=\"5\" fill=\""
        << kPalette[static_cast<std::size_t>(std::abs(label)) % kPalette.size()] << "\"/>\n";
    out << "<text x=\"" << num(f.right + 38) << "\" y=\"" << num(y) << "\">" << escape(o.color_label) << ' ' << label
        << " (" << count << ")</text>\n";
    y += 18;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace ssg::svg
