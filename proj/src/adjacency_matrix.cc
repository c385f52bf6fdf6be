//
// Copyright 2026 The ldpgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "ldpgraph/adjacency_matrix.h"

#include <bit>

namespace ldpgraph {

BitMatrix::BitMatrix(int rows, int cols)
    : rows_(rows),
      cols_(cols),
      words_per_row_((cols + 63) / 64),
      words_(static_cast<size_t>(rows) * ((cols + 63) / 64), 0) {}

void BitMatrix::Set(int row, int col, bool value) {
  uint64_t& word = words_[Offset(row) + col / 64];
  const uint64_t bit = 1ULL << (col % 64);
  if (value) {
    word |= bit;
  } else {
    word &= ~bit;
  }
}

int64_t BitMatrix::RowCount(int row) const {
  int64_t count = 0;
  for (int w = 0; w < words_per_row_; ++w) {
    count += std::popcount(words_[Offset(row) + w]);
  }
  return count;
}

int64_t BitMatrix::Count() const {
  int64_t count = 0;
  for (uint64_t word : words_) count += std::popcount(word);
  return count;
}

std::vector<int> BitMatrix::RowIndices(int row) const {
  std::vector<int> indices;
  for (int w = 0; w < words_per_row_; ++w) {
    uint64_t word = words_[Offset(row) + w];
    while (word != 0) {
      indices.push_back(w * 64 + std::countr_zero(word));
      word &= word - 1;
    }
  }
  return indices;
}

void BitMatrix::SetRow(int row, const std::vector<uint8_t>& bits) {
  for (int w = 0; w < words_per_row_; ++w) words_[Offset(row) + w] = 0;
  for (int col = 0; col < cols_; ++col) {
    if (bits[col]) words_[Offset(row) + col / 64] |= 1ULL << (col % 64);
  }
}

RowMatrix BitMatrix::ToDense() const {
  RowMatrix dense = RowMatrix::Zero(rows_, cols_);
  for (int row = 0; row < rows_; ++row) {
    for (int col : RowIndices(row)) dense(row, col) = 1.0;
  }
  return dense;
}

}  // namespace ldpgraph
