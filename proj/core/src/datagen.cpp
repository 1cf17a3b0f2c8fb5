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

#include "machedu/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <optional>
#include <set>

#include "machedu/seeds.hpp"
#include "machedu/text_io.hpp"

namespace machedu {

bool HalfspaceSpec::contains(std::span<const double> point) const {
  double dot = 0.0;
  for (std::size_t i = 0; i < coefficients.size(); ++i) dot += coefficients[i] * point[i];
  return dot >= offset;
}

std::size_t RegionSpec::num_classes() const {
  if (label_mode == LabelMode::kSingleHalfspaceBinary) return 2;
  return std::size_t{1} << halfspaces.size();
}

void check_region_spec(const RegionSpec& spec) {
  if (spec.halfspaces.empty()) throw Error("region spec has no halfspaces");
  if (spec.domain_box.empty()) throw Error("region spec has an empty domain box");
  if (spec.label_mode == LabelMode::kSingleHalfspaceBinary && spec.halfspaces.size() != 1) {
    throw Error("single-halfspace-binary needs exactly one halfspace");
  }
  if (spec.halfspaces.size() > 16) throw Error("too many halfspaces for joint labels");
  for (const auto& h : spec.halfspaces) {
    if (h.coefficients.size() != spec.dimension()) {
      throw Error("halfspace dimension does not match domain box");
    }
    if (std::all_of(h.coefficients.begin(), h.coefficients.end(),
                    [](double a) { return a == 0.0; })) {
      throw Error("halfspace coefficients are all zero");
    }
  }
  for (const auto& iv : spec.domain_box) {
    if (!(iv.lo < iv.hi)) throw Error("domain box needs lower < upper on every feature");
  }
}

Chunk concatenate(const Chunk& a, const Chunk& b) {
  if (a.inputs.cols() != b.inputs.cols() && !a.inputs.empty() && !b.inputs.empty()) {
    throw Error("cannot concatenate chunks of different dimension");
  }
  Chunk out = a;
  for (std::size_t r = 0; r < b.inputs.rows(); ++r) out.inputs.append_row(b.inputs.row(r));
  out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
  return out;
}

int label_point(const RegionSpec& spec, std::span<const double> point) {
  if (point.size() != spec.dimension()) {
    throw Error("point dimension " + std::to_string(point.size()) +
                " does not match spec dimension " + std::to_string(spec.dimension()));
  }
  if (spec.label_mode == LabelMode::kSingleHalfspaceBinary) {
    return spec.halfspaces.front().contains(point) ? 1 : 0;
  }
  int label = 0;
  for (std::size_t i = 0; i < spec.halfspaces.size(); ++i) {
    if (spec.halfspaces[i].contains(point)) label |= 1 << i;
  }
  return label;
}

namespace {

// Which halfspace sides have positive measure inside the box.
struct SideReach {
  bool satisfied;
  bool violated;
};

SideReach side_reach(const HalfspaceSpec& h, const std::vector<Interval>& box) {
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const double a = h.coefficients[i];
    lo += a * (a >= 0 ? box[i].lo : box[i].hi);
    hi += a * (a >= 0 ? box[i].hi : box[i].lo);
  }
  return {hi > h.offset, lo < h.offset};
}

std::vector<std::size_t> class_quotas(std::size_t size, std::size_t classes) {
  std::vector<std::size_t> q(classes, size / classes);
  for (std::size_t c = 0; c < size % classes; ++c) ++q[c];
  return q;
}

}  // namespace

Chunk generate_chunk(const RegionSpec& spec, const std::string& concept_id,
                     std::size_t size, std::uint64_t seed) {
  check_region_spec(spec);
  if (size < 2) throw Error("chunk size must be at least 2");

  const std::size_t classes = spec.num_classes();
  std::vector<SideReach> reach;
  for (const auto& h : spec.halfspaces) reach.push_back(side_reach(h, spec.domain_box));
  for (std::size_t c = 0; c < classes; ++c) {
    const bool binary = spec.label_mode == LabelMode::kSingleHalfspaceBinary;
    for (std::size_t i = 0; i < spec.halfspaces.size(); ++i) {
      const bool want = binary ? c == 1 : ((c >> i) & 1u) != 0;
      if (want ? !reach[i].satisfied : !reach[i].violated) {
        throw Error("class " + std::to_string(c) + " unreachable");
      }
    }
  }

  const std::vector<std::size_t> quota = class_quotas(size, classes);
  std::vector<std::size_t> count(classes, 0);
  std::size_t filled = 0;

  Chunk chunk;
  chunk.concept_id = concept_id;
  chunk.seed = seed;
  chunk.labels.reserve(size);

  Rng rng(seed);
  std::vector<double> point(spec.dimension());
  for (std::uint64_t draw = 0; draw < kMaxRejectionDraws && filled < size; ++draw) {
    for (std::size_t i = 0; i < point.size(); ++i) {
      point[i] = rng.uniform(spec.domain_box[i].lo, spec.domain_box[i].hi);
    }
    const int label = label_point(spec, point);
    auto& n = count[static_cast<std::size_t>(label)];
    if (n >= quota[static_cast<std::size_t>(label)]) continue;
    ++n;
    ++filled;
    chunk.inputs.append_row(point);
    chunk.labels.push_back(label);
  }

  if (filled < size) {
    for (std::size_t c = 0; c < classes; ++c) {
      if (count[c] == 0 && quota[c] > 0) {
        throw Error("class " + std::to_string(c) + " unreachable");
      }
    }
    throw Error("balancing not reached within " + std::to_string(kMaxRejectionDraws) +
                " draws");
  }
  return chunk;
}

namespace {

// boost 1.74 mixed rational/int comparisons recurse under C++20 rewritten
// operators in some boost versions; always compare against a Rational.
const Rational kZero{0};

struct ExactLine {
  Rational a;
  Rational b;
  Rational c;  // a*x + b*y = c
};

Rational to_rational(double v) {
  if (std::floor(v) != v || std::fabs(v) > 1e9) throw Error("unsupported geometry");
  return Rational(static_cast<std::int64_t>(v));
}

std::optional<ExactPoint> intersect(const ExactLine& p, const ExactLine& q) {
  const Rational det = p.a * q.b - p.b * q.a;
  if (det == kZero) return std::nullopt;
  return ExactPoint{(p.c * q.b - p.b * q.c) / det, (p.a * q.c - p.c * q.a) / det};
}

}  // namespace

RegionGeometry region_vertices(const HalfspaceSpec& first, const HalfspaceSpec& second) {
  for (const auto* h : {&first, &second}) {
    if (h->coefficients.size() != 2 || h->coefficients[0] <= 0 || h->coefficients[1] <= 0 ||
        h->offset <= 0) {
      throw Error("unsupported geometry");
    }
  }
  const ExactLine l1{to_rational(first.coefficients[0]), to_rational(first.coefficients[1]),
                     to_rational(first.offset)};
  const ExactLine l2{to_rational(second.coefficients[0]), to_rational(second.coefficients[1]),
                     to_rational(second.offset)};
  const ExactLine x_axis{0, 1, 0};
  const ExactLine y_axis{1, 0, 0};

  auto crossing = intersect(l1, l2);
  if (!crossing || crossing->x <= kZero || crossing->y <= kZero) throw Error("unsupported geometry");

  const std::vector<ExactLine> lines{x_axis, y_axis, l1, l2};
  std::set<ExactPoint> candidates;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (auto p = intersect(lines[i], lines[j]); p && p->x >= kZero && p->y >= kZero) {
        candidates.insert(*p);
      }
    }
  }

  RegionGeometry geometry;
  geometry.crossing = *crossing;
  for (int region = 0; region < 4; ++region) {
    const bool sat1 = (region & 1) != 0;
    const bool sat2 = (region & 2) != 0;
    // Unbounded iff the recession cone {d >= 0, side constraints on d} holds a
    // nonzero ray; in 2-D its extreme rays lie on the axes or the two lines.
    auto ray_ok = [&](const ExactPoint& d) {
      if (d.x < kZero || d.y < kZero) return false;
      const Rational r1 = l1.a * d.x + l1.b * d.y;
      const Rational r2 = l2.a * d.x + l2.b * d.y;
      return (sat1 ? r1 >= kZero : r1 <= kZero) && (sat2 ? r2 >= kZero : r2 <= kZero);
    };
    const std::vector<ExactPoint> rays{{1, 0},         {0, 1},         {l1.b, -l1.a},
                                       {-l1.b, l1.a}, {l2.b, -l2.a}, {-l2.b, l2.a}};
    if (std::any_of(rays.begin(), rays.end(), ray_ok)) {
      geometry.unbounded.push_back(region);
      continue;
    }
    Polytope poly;
    poly.region_class = region;
    for (const auto& p : candidates) {
      const Rational v1 = l1.a * p.x + l1.b * p.y;
      const Rational v2 = l2.a * p.x + l2.b * p.y;
      const bool ok1 = sat1 ? v1 >= l1.c : v1 <= l1.c;
      const bool ok2 = sat2 ? v2 >= l2.c : v2 <= l2.c;
      if (ok1 && ok2) poly.vertices.push_back(p);
    }
    geometry.bounded.push_back(std::move(poly));
  }
  return geometry;
}

void write_chunk_csv(std::ostream& out, const Chunk& chunk) {
  const std::size_t n = chunk.inputs.cols();
  for (std::size_t j = 0; j < n; ++j) out << "feature_" << (j + 1) << ',';
  out << "label\n";
  for (std::size_t r = 0; r < chunk.inputs.rows(); ++r) {
    for (std::size_t j = 0; j < n; ++j) out << format_double(chunk.inputs(r, j)) << ',';
    out << chunk.labels[r] << '\n';
  }
}

}  // namespace machedu
