// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "field.hpp"

namespace imtheta {

/// Dense matrix of exact field elements. Row-major; dimensions are small
/// (coordinate changes, truncated-basis linear systems).
class CoeffMatrix {
 public:
  CoeffMatrix(int rows, int cols, const Field& f)
      : rows_(rows), cols_(cols), field_(f), a_(static_cast<std::size_t>(rows) * cols, f.zero()) {}

  static CoeffMatrix identity(int n, const Field& f);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field& field() const { return field_; }

  Coeff& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Coeff& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

 private:
  int rows_, cols_;
  Field field_;
  std::vector<Coeff> a_;
};

/// Fraction-free (Bareiss-style) row elimination with first-nonzero pivoting.
/// Returns the rank; `pivots`, when given, receives the pivot column of each
/// pivot row in order.
int eliminate(CoeffMatrix& m, std::vector<int>* pivots = nullptr);

int rank(CoeffMatrix m);

Coeff determinant(const CoeffMatrix& m);

std::optional<CoeffMatrix> inverse(const CoeffMatrix& m);

/// One exact solution of A x = b with free variables set to zero, or nullopt
/// if the system is inconsistent.
std::optional<std::vector<Coeff>> solve(const CoeffMatrix& a, const std::vector<Coeff>& b);

/// Row of a sparse system: (column, coefficient) entries sorted by column.
using SparseRow = std::vector<std::pair<int, Coeff>>;

/// Sparse linear system over an exact field. Rows may carry a right-hand
/// side entry at the sentinel column index `cols`.
struct SparseSystem {
  int cols = 0;
  Field field = Field::rational();
  std::vector<SparseRow> rows;
};

/// Same fraction-free scheme as `eliminate`, but rows untouched by a pivot
/// column are never rewritten; this is what makes the truncated-basis
/// membership systems tractable.
int sparse_eliminate(SparseSystem& s, std::vector<int>* pivots = nullptr);

int sparse_rank(SparseSystem s);

/// One exact solution with free variables set to zero, or nullopt if
/// inconsistent. Consumes the system.
std::optional<std::vector<Coeff>> sparse_solve(SparseSystem s);

}  // namespace imtheta
