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

#ifndef MACHEDU_TYPES_HPP_
#define MACHEDU_TYPES_HPP_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace machedu {

// Thrown for contract violations (bad inputs, unmet preconditions).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Validation outcome for checks whose failures are a return value rather
// than an exception. Messages are ordered: the first names the first
// violated invariant.
struct Diagnostics {
  std::vector<std::string> messages;

  bool ok() const { return messages.empty(); }
  void add(std::string message) { messages.push_back(std::move(message)); }
};

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw Error("matrix data size does not match shape");
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw Error("row width does not match matrix");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace machedu

#endif  // MACHEDU_TYPES_HPP_
