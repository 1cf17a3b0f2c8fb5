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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "machedu/text_io.hpp"

namespace machedu {
namespace {

TEST(Hash64, DeterministicAndSensitiveToEveryPart) {
  EXPECT_EQ(hash64(42, "chunk/a", 0), hash64(42, "chunk/a", 0));
  EXPECT_NE(hash64(42, "chunk/a", 0), hash64(43, "chunk/a", 0));
  EXPECT_NE(hash64(42, "chunk/a", 0), hash64(42, "chunk/b", 0));
  EXPECT_NE(hash64(42, "chunk/a", 0), hash64(42, "chunk/a", 1));
}

TEST(Hash64, NoCollisionsOverManyIndices) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(hash64(7, "stream", i));
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(Rng, UniformStaysInRangeAndIsReproducible) {
  Rng a(5);
  Rng b(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform01();
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    EXPECT_EQ(x, b.uniform01());
  }
}

TEST(Rng, BelowCoversRangeWithoutBias) {
  Rng r(11);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 60000; ++i) ++counts[r.below(6)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
  EXPECT_THROW(r.below(0), Error);
}

TEST(Rng, ShuffleIsAPermutation) {
  Rng r(3);
  std::vector<std::size_t> v(50);
  std::iota(v.begin(), v.end(), 0);
  r.shuffle(std::span<std::size_t>(v));
  std::vector<std::size_t> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i], i);
}

TEST(SeedLedger, RecordsDerivedSeeds) {
  SeedLedger ledger(42);
  const std::uint64_t s = ledger.derive("chunk/slow-medium", 2);
  EXPECT_EQ(s, hash64(42, "chunk/slow-medium", 2));
  EXPECT_EQ(ledger.derive("chunk/slow-medium", 2), s);
  ASSERT_EQ(ledger.entries().size(), 1u);
  EXPECT_EQ(ledger.entries().begin()->first, "chunk/slow-medium[2]");
}

TEST(TextIo, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(150.0), "150");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(third)), third);
  EXPECT_EQ(std::stod(format_double17(third)), third);
}

TEST(TextIo, DigestIsStableHex) {
  EXPECT_EQ(digest_hex("abc"), digest_hex("abc"));
  EXPECT_NE(digest_hex("abc"), digest_hex("abd"));
  EXPECT_EQ(digest_hex("").size(), 16u);
  // FNV-1a 64 offset basis.
  EXPECT_EQ(digest_hex(""), "cbf29ce484222325");
  EXPECT_EQ(digest_hex("a"), "af63dc4c8601ec8c");
}

}  // namespace
}  // namespace machedu
