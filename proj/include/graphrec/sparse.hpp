/*
 * Copyright 2026 The graphrec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <vector>

#include "graphrec/types.hpp"

namespace graphrec {

// Plain compressed-sparse-row matrix. Column indices within a row are kept
// in ascending order, which makes equal structures byte-comparable.
template <typename Scalar = double>
struct SparseRowMatrix {
  Index rows = 0;
  Index cols = 0;
  std::vector<Index> offsets;  // length rows + 1
  std::vector<Index> col_idx;  // length nnz
  std::vector<Scalar> values;  // length nnz

  Index nnz() const { return static_cast<Index>(col_idx.size()); }

  Scalar row_sum(Index r) const {
    Scalar s = 0;
    for (Index k = offsets[r]; k < offsets[r + 1]; ++k) s += values[k];
    return s;
  }
};

// out = A * H, writing into a caller-provided buffer. Rows are accumulated
// left to right in index order, so the result does not depend on anything
// but the operands. `out` must not alias `h`.
template <typename Scalar>
void multiply_into(const SparseRowMatrix<Scalar>& a, const MatrixX<Scalar>& h,
                   MatrixX<Scalar>& out) {
  if (h.rows() != a.cols) {
    throw std::invalid_argument("sparse multiply: got " + std::to_string(h.rows()) +
                                " embedding rows, operator expects " + std::to_string(a.cols));
  }
  out.resize(a.rows, h.cols());
  for (Index r = 0; r < a.rows; ++r) {
    auto row = out.row(r);
    row.setZero();
    for (Index k = a.offsets[r]; k < a.offsets[r + 1]; ++k) {
      row += a.values[k] * h.row(a.col_idx[k]);
    }
  }
}

template <typename Scalar>
MatrixX<Scalar> multiply(const SparseRowMatrix<Scalar>& a, const MatrixX<Scalar>& h) {
  MatrixX<Scalar> out;
  multiply_into(a, h, out);
  return out;
}

template <typename Scalar>
SparseRowMatrix<Scalar> transpose(const SparseRowMatrix<Scalar>& a) {
  SparseRowMatrix<Scalar> t;
  t.rows = a.cols;
  t.cols = a.rows;
  t.offsets.assign(static_cast<std::size_t>(t.rows) + 1, 0);
  t.col_idx.resize(a.col_idx.size());
  t.values.resize(a.values.size());
  for (Index k = 0; k < a.nnz(); ++k) ++t.offsets[a.col_idx[k] + 1];
  for (Index r = 0; r < t.rows; ++r) t.offsets[r + 1] += t.offsets[r];
  std::vector<Index> cursor(t.offsets.begin(), t.offsets.end() - 1);
  // Walking rows in order keeps each transposed row's columns ascending.
  for (Index r = 0; r < a.rows; ++r) {
    for (Index k = a.offsets[r]; k < a.offsets[r + 1]; ++k) {
      const Index c = a.col_idx[k];
      t.col_idx[cursor[c]] = r;
      t.values[cursor[c]] = a.values[k];
      ++cursor[c];
    }
  }
  return t;
}

}  // namespace graphrec
