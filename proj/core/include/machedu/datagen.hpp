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

#ifndef MACHEDU_DATAGEN_HPP_
#define MACHEDU_DATAGEN_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "machedu/types.hpp"

namespace machedu {

// a . x >= b (closed).
struct HalfspaceSpec {
  std::vector<double> coefficients;
  double offset = 0.0;

  bool contains(std::span<const double> point) const;
  friend bool operator==(const HalfspaceSpec&, const HalfspaceSpec&) = default;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class LabelMode {
  kSingleHalfspaceBinary,  // 1 iff the single halfspace holds
  kJointRegionClass,       // bit i set iff halfspace i holds
};

struct RegionSpec {
  std::vector<HalfspaceSpec> halfspaces;
  std::vector<Interval> domain_box;
  LabelMode label_mode = LabelMode::kSingleHalfspaceBinary;

  std::size_t dimension() const { return domain_box.size(); }
  std::size_t num_classes() const;
  friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

// Throws Error describing the first problem found.
void check_region_spec(const RegionSpec& spec);

// A labeled sample tagged with the concept it teaches.
struct Chunk {
  std::string concept_id;
  Matrix inputs;
  std::vector<int> labels;
  std::uint64_t seed = 0;

  std::size_t size() const { return labels.size(); }
  friend bool operator==(const Chunk&, const Chunk&) = default;
};

// Row-wise concatenation. Concept tag and seed are taken from `a`.
Chunk concatenate(const Chunk& a, const Chunk& b);

int label_point(const RegionSpec& spec, std::span<const double> point);

// Draws uniformly in the domain box with per-class rejection until every
// class holds its quota (size / num_classes, the first size % num_classes
// classes get one extra). Bit-identical for identical arguments.
Chunk generate_chunk(const RegionSpec& spec, const std::string& concept_id,
                     std::size_t size, std::uint64_t seed);

inline constexpr std::uint64_t kMaxRejectionDraws = 1'000'000;

using Rational = boost::rational<std::int64_t>;

struct ExactPoint {
  Rational x;
  Rational y;
  friend bool operator==(const ExactPoint&, const ExactPoint&) = default;
  friend auto operator<=>(const ExactPoint& a, const ExactPoint& b) {
    if (a.x != b.x) return a.x < b.x ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.y != b.y) return a.y < b.y ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

struct Polytope {
  int region_class = 0;  // same bit encoding as kJointRegionClass
  std::vector<ExactPoint> vertices;  // sorted lexicographically
};

struct RegionGeometry {
  std::vector<Polytope> bounded;  // ascending region_class
  std::vector<int> unbounded;     // region classes without a finite hull
  ExactPoint crossing;            // where the two boundary lines meet
};

// Vertex sets of the bounded regions cut from the nonnegative quadrant by two
// 2-D halfspaces with positive integer coefficients and offsets whose lines
// cross inside the open quadrant. Anything else throws Error
// ("unsupported geometry").
RegionGeometry region_vertices(const HalfspaceSpec& first, const HalfspaceSpec& second);

// CSV with header feature_1,...,feature_n,label and LF line endings.
void write_chunk_csv(std::ostream& out, const Chunk& chunk);

}  // namespace machedu

#endif  // MACHEDU_DATAGEN_HPP_
