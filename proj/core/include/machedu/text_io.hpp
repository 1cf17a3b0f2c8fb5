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

#ifndef MACHEDU_TEXT_IO_HPP_
#define MACHEDU_TEXT_IO_HPP_

#include <cstdint>
#include <string>

namespace machedu {

// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);
// Decimal text with 17 significant digits (%.17g).
std::string format_double17(double value);

// FNV-1a 64-bit digest, rendered as 16 lowercase hex digits.
std::string digest_hex(const std::string& bytes);

}  // namespace machedu

#endif  // MACHEDU_TEXT_IO_HPP_
