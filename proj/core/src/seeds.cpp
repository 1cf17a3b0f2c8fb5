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

#include "machedu/seeds.hpp"

#include <limits>

#include "machedu/types.hpp"

namespace machedu {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv_u64(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xFFu;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t hash64(std::uint64_t master_seed, std::string_view component_name,
                     std::uint64_t index) {
  std::uint64_t h = fnv_u64(kFnvOffset, master_seed);
  for (unsigned char ch : component_name) {
    h ^= ch;
    h *= kFnvPrime;
  }
  h = fnv_u64(h, index);
  return splitmix64_finalize(h);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error("Rng::below requires n > 0");
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::uint64_t SeedLedger::derive(std::string_view component, std::uint64_t index) {
  const std::uint64_t seed = hash64(master_, component, index);
  std::string key = std::string(component) + "[" + std::to_string(index) + "]";
  auto [it, inserted] = entries_.try_emplace(key, seed);
  if (!inserted) return it->second;
  for (const auto& [other_key, other_seed] : entries_) {
    if (other_key != key && other_seed == seed) {
      throw Error("seed collision between " + key + " and " + other_key);
    }
  }
  return seed;
}

}  // namespace machedu
