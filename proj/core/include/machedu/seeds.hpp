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

#ifndef MACHEDU_SEEDS_HPP_
#define MACHEDU_SEEDS_HPP_

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "machedu/types.hpp"

namespace machedu {

// child_seed = hash64(master_seed, component_name, index).
//
// FNV-1a over the little-endian bytes of master_seed, the UTF-8 bytes of
// component_name, and the little-endian bytes of index, followed by the
// splitmix64 finalizer.
std::uint64_t hash64(std::uint64_t master_seed, std::string_view component_name,
                     std::uint64_t index);

// Wraps mt19937_64 with distribution code that does not depend on the
// standard library implementation, so streams are identical on every
// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform in [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Uniform integer in [0, n), n > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Records every seed handed out during a run, keyed by "component[index]".
// Training and held-out seeds must never coincide; register() throws Error
// on any collision.
class SeedLedger {
 public:
  explicit SeedLedger(std::uint64_t master_seed) : master_(master_seed) {}

  std::uint64_t master() const { return master_; }
  std::uint64_t derive(std::string_view component, std::uint64_t index);
  const std::map<std::string, std::uint64_t>& entries() const { return entries_; }

 private:
  std::uint64_t master_;
  std::map<std::string, std::uint64_t> entries_;
};

}  // namespace machedu

#endif  // MACHEDU_SEEDS_HPP_
