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

#ifndef LDPGRAPH_ADJACENCY_MATRIX_H_
#define LDPGRAPH_ADJACENCY_MATRIX_H_

#include <cstdint>
#include <vector>

#include "ldpgraph/matrix.h"

namespace ldpgraph {

// Dense binary matrix with one bit per entry, packed row by row. Used for the
// curator's reconstructed adjacency: a 7083 x 7083 graph fits in ~6.3 MB.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols);

  static BitMatrix Square(int n) { return BitMatrix(n, n); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  bool Get(int row, int col) const {
    return (words_[Offset(row) + col / 64] >> (col % 64)) & 1ULL;
  }
  void Set(int row, int col, bool value);

  // Number of ones in `row`.
  int64_t RowCount(int row) const;
  // Total number of ones.
  int64_t Count() const;

  // Column indices of the ones in `row`, ascending.
  std::vector<int> RowIndices(int row) const;

  // Overwrites `row` with the 0/1 values in `bits` (size cols()).
  void SetRow(int row, const std::vector<uint8_t>& bits);

  RowMatrix ToDense() const;

  bool operator==(const BitMatrix& other) const = default;

 private:
  size_t Offset(int row) const {
    return static_cast<size_t>(row) * words_per_row_;
  }

  int rows_ = 0;
  int cols_ = 0;
  int words_per_row_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace ldpgraph

#endif  // LDPGRAPH_ADJACENCY_MATRIX_H_
