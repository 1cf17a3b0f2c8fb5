// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "machedu/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "machedu/text_io.hpp"

namespace machedu {

namespace {

const char* const kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                                "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};

std::string num(double v) {
  // Two decimals keeps files small; plots are not read back.
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << v;
  return s.str();
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
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

}  // namespace

void SvgDocument::rect(double x, double y, double w, double h, const std::string& fill,
                       const std::string& stroke) {
  elements_.push_back("<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
                      "\" height=\"" + num(h) + "\" fill=\"" + fill + "\" stroke=\"" + stroke +
                      "\"/>");
}

void SvgDocument::circle(double cx, double cy, double r, const std::string& fill) {
  elements_.push_back("<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
                      "\" fill=\"" + fill + "\" fill-opacity=\"0.7\"/>");
}

void SvgDocument::line(double x1, double y1, double x2, double y2, const std::string& stroke,
                       double width, bool dashed) {
  elements_.push_back("<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
                      "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
                      num(width) + "\"" + (dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>");
}

void SvgDocument::polyline(const std::vector<std::pair<double, double>>& points,
                           const std::string& stroke, double width) {
  std::string pts;
  for (const auto& [x, y] : points) {
    if (!pts.empty()) pts += ' ';
    pts += num(x) + "," + num(y);
  }
  elements_.push_back("<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + stroke +
                      "\" stroke-width=\"" + num(width) + "\"/>");
}

void SvgDocument::text(double x, double y, const std::string& content, double size,
                       const std::string& anchor) {
  elements_.push_back("<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + num(size) +
                      "\" font-family=\"sans-serif\" text-anchor=\"" + anchor + "\">" +
                      escape(content) + "</text>");
}

std::string SvgDocument::str() const {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) +
                    "\" height=\"" + num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " +
                    num(height_) + "\">\n";
  for (const auto& e : elements_) out += "  " + e + "\n";
  out += "</svg>\n";
  return out;
}

std::vector<std::pair<double, double>> clip_line_to_box(const HalfspaceSpec& h,
                                                        const std::vector<Interval>& box) {
  std::vector<std::pair<double, double>> hits;
  if (h.coefficients.size() < 2 || box.size() < 2) return hits;
  const double a = h.coefficients[0];
  const double b = h.coefficients[1];
  const double c = h.offset;
  auto inside = [&](double x, double y) {
    const double eps = 1e-9;
    return x >= box[0].lo - eps && x <= box[0].hi + eps && y >= box[1].lo - eps &&
           y <= box[1].hi + eps;
  };
  auto add = [&](double x, double y) {
    if (!inside(x, y)) return;
    for (const auto& [px, py] : hits) {
      if (std::fabs(px - x) < 1e-9 && std::fabs(py - y) < 1e-9) return;
    }
    hits.emplace_back(x, y);
  };
  if (b != 0) {
    add(box[0].lo, (c - a * box[0].lo) / b);
    add(box[0].hi, (c - a * box[0].hi) / b);
  }
  if (a != 0) {
    add((c - b * box[1].lo) / a, box[1].lo);
    add((c - b * box[1].hi) / a, box[1].hi);
  }
  if (hits.size() > 2) hits.resize(2);
  return hits;
}

std::string decision_regions_svg(const std::vector<ScatterPanel>& panels) {
  const double size = 320.0;
  const double margin = 40.0;
  SvgDocument doc(static_cast<double>(panels.size()) * (size + margin) + margin, size + 2 * margin);
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const ScatterPanel& panel = panels[p];
    const double x0 = margin + static_cast<double>(p) * (size + margin);
    const double y0 = margin;
    const Interval bx = panel.box.at(0);
    const Interval by = panel.box.at(1);
    auto sx = [&](double v) { return x0 + (v - bx.lo) / (bx.hi - bx.lo) * size; };
    auto sy = [&](double v) { return y0 + size - (v - by.lo) / (by.hi - by.lo) * size; };

    doc.rect(x0, y0, size, size, "white", "#333333");
    doc.text(x0 + size / 2, y0 - 12, panel.title, 13, "middle");
    doc.text(x0, y0 + size + 16, format_double(bx.lo), 10);
    doc.text(x0 + size, y0 + size + 16, format_double(bx.hi), 10, "end");
    doc.text(x0 - 4, y0 + size, format_double(by.lo), 10, "end");
    doc.text(x0 - 4, y0 + 10, format_double(by.hi), 10, "end");

    for (std::size_t r = 0; r < panel.data.size(); ++r) {
      const auto row = panel.data.inputs.row(r);
      const int label = panel.data.labels[r];
      doc.circle(sx(row[0]), sy(row[1]), 2.2, kPalette[static_cast<std::size_t>(label) % 8]);
    }
    for (const auto& h : panel.boundaries) {
      auto ends = clip_line_to_box(h, panel.box);
      if (ends.size() == 2) {
        doc.line(sx(ends[0].first), sy(ends[0].second), sx(ends[1].first), sy(ends[1].second),
                 "#222222", 1.5);
      }
    }
  }
  return doc.str();
}

std::string trajectory_svg(const std::vector<ControlStepRecord>& trajectory,
                           const std::vector<std::string>& level_names,
                           const std::vector<double>& targets) {
  const double w = 640.0;
  const double h = 360.0;
  const double margin = 50.0;
  SvgDocument doc(w + 2 * margin + 140, h + 2 * margin);
  doc.rect(margin, margin, w, h, "white", "#333333");
  if (trajectory.empty()) return doc.str();

  const double t_max = std::max(trajectory.back().t, 1e-9);
  double y_max = 1.0;
  for (const auto& r : trajectory) {
    for (double s : r.stocks) y_max = std::max(y_max, s);
  }
  for (double t : targets) y_max = std::max(y_max, t);
  auto sx = [&](double t) { return margin + t / t_max * w; };
  auto sy = [&](double v) { return margin + h - v / y_max * h; };

  doc.text(margin, margin + h + 20, "0", 10);
  doc.text(margin + w, margin + h + 20, "t = " + format_double(t_max), 10, "end");
  doc.text(margin - 6, margin + 10, format_double(y_max), 10, "end");
  doc.text(margin - 6, margin + h, "0", 10, "end");

  const std::size_t k = trajectory.front().stocks.size();
  for (std::size_t i = 0; i < k; ++i) {
    const char* color = kPalette[i % 8];
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : trajectory) pts.emplace_back(sx(r.t), sy(r.stocks[i]));
    doc.polyline(pts, color);
    if (i < targets.size()) doc.line(margin, sy(targets[i]), margin + w, sy(targets[i]), color, 1.0, true);
    const std::string name = i < level_names.size() ? level_names[i] : "skill_" + std::to_string(i + 1);
    doc.rect(margin + w + 16, margin + 10 + 18.0 * static_cast<double>(i), 10, 10, color);
    doc.text(margin + w + 32, margin + 19 + 18.0 * static_cast<double>(i), name, 11);
  }
  return doc.str();
}

}  // namespace machedu
