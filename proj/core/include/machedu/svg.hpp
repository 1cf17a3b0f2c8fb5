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

#ifndef MACHEDU_SVG_HPP_
#define MACHEDU_SVG_HPP_

#include <string>
#include <utility>
#include <vector>

#include "machedu/controller.hpp"
#include "machedu/datagen.hpp"

namespace machedu {

// Minimal SVG writer; coordinates are in user units with y pointing down.
class SvgDocument {
 public:
  SvgDocument(double width, double height) : width_(width), height_(height) {}

  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke = "none");
  void circle(double cx, double cy, double r, const std::string& fill);
  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double width = 1.0, bool dashed = false);
  void polyline(const std::vector<std::pair<double, double>>& points, const std::string& stroke,
                double width = 1.5);
  void text(double x, double y, const std::string& content, double size = 12.0,
            const std::string& anchor = "start");

  std::string str() const;

 private:
  double width_;
  double height_;
  std::vector<std::string> elements_;
};

struct ScatterPanel {
  std::string title;
  Chunk data;
  std::vector<HalfspaceSpec> boundaries;  // drawn as lines a.x = b
  std::vector<Interval> box;              // first two features are plotted
};

// Side-by-side scatter plots of labeled points with the analytic boundary
// lines overlaid.
std::string decision_regions_svg(const std::vector<ScatterPanel>& panels);

// One line per skill level over time, plus dashed target lines.
std::string trajectory_svg(const std::vector<ControlStepRecord>& trajectory,
                           const std::vector<std::string>& level_names,
                           const std::vector<double>& targets);

// Both boundary endpoints of a.x = b clipped to a 2-D box, if it crosses it.
std::vector<std::pair<double, double>> clip_line_to_box(const HalfspaceSpec& h,
                                                        const std::vector<Interval>& box);

}  // namespace machedu

#endif  // MACHEDU_SVG_HPP_
