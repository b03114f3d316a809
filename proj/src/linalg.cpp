// Copyright 2026 The imtheta Authors
// SPDX-License-Identifier: Apache-2.0

#include "linalg.hpp"

#include <algorithm>
#include <utility>

namespace imtheta {

CoeffMatrix CoeffMatrix::identity(int n, const Field& f) {
  CoeffMatrix m(n, n, f);
  for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

namespace {

void swap_rows(CoeffMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

int eliminate_impl(CoeffMatrix& m, std::vector<int>* pivots, int* swaps) {
  const Field& f = m.field();
  Coeff prev = f.one();
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int pivot_row = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (!f.is_zero(m.at(i, c))) {
        pivot_row = i;
        break;
      }
    }
    if (pivot_row < 0) continue;
    if (pivot_row != r && swaps) ++*swaps;
    swap_rows(m, pivot_row, r);
    const Coeff piv = m.at(r, c);
    for (int i = r + 1; i < m.rows(); ++i) {
      const Coeff lead = m.at(i, c);
      for (int j = c + 1; j < m.cols(); ++j) {
        // Bareiss update: exact division by the previous pivot.
        Coeff t = f.sub(f.mul(piv, m.at(i, j)), f.mul(lead, m.at(r, j)));
        m.at(i, j) = f.div(t, prev);
      }
      m.at(i, c) = f.zero();
    }
    prev = piv;
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

}  // namespace

int eliminate(CoeffMatrix& m, std::vector<int>* pivots) { return eliminate_impl(m, pivots, nullptr); }

int rank(CoeffMatrix m) { return eliminate_impl(m, nullptr, nullptr); }

Coeff determinant(const CoeffMatrix& m) {
  const Field& f = m.field();
  CoeffMatrix w = m;
  int swaps = 0;
  int r = eliminate_impl(w, nullptr, &swaps);
  if (r < w.rows()) return f.zero();
  Coeff d = w.at(w.rows() - 1, w.cols() - 1);
  return (swaps % 2 == 0) ? d : f.neg(d);
}

std::optional<CoeffMatrix> inverse(const CoeffMatrix& m) {
  const Field& f = m.field();
  const int n = m.rows();
  CoeffMatrix w(n, 2 * n, f);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w.at(i, j) = m.at(i, j);
    w.at(i, n + i) = f.one();
  }
  // Gauss-Jordan with unit pivots; simpler than Bareiss for tiny matrices.
  for (int c = 0; c < n; ++c) {
    int pivot_row = -1;
    for (int i = c; i < n; ++i) {
      if (!f.is_zero(w.at(i, c))) {
        pivot_row = i;
        break;
      }
    }
    if (pivot_row < 0) return std::nullopt;
    swap_rows(w, pivot_row, c);
    const Coeff inv_piv = f.inv(w.at(c, c));
    for (int j = 0; j < 2 * n; ++j) w.at(c, j) = f.mul(w.at(c, j), inv_piv);
    for (int i = 0; i < n; ++i) {
      if (i == c || f.is_zero(w.at(i, c))) continue;
      const Coeff factor = w.at(i, c);
      for (int j = 0; j < 2 * n; ++j) w.at(i, j) = f.sub(w.at(i, j), f.mul(factor, w.at(c, j)));
    }
  }
  CoeffMatrix out(n, n, f);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = w.at(i, n + j);
  return out;
}

namespace {

const Coeff* row_entry(const SparseRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const std::pair<int, Coeff>& e, int c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// (piv * a - lead * b) / prev, merged by column; the pivot column cancels.
SparseRow row_combine(const Field& f, const SparseRow& a, const Coeff& piv, const SparseRow& b,
                      const Coeff& lead, const Coeff& prev) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  auto push = [&](int col, const Coeff& v) {
    if (!f.is_zero(v)) out.emplace_back(col, f.div(v, prev));
  };
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      push(a[i].first, f.mul(piv, a[i].second));
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      push(b[j].first, f.neg(f.mul(lead, b[j].second)));
      ++j;
    } else {
      push(a[i].first, f.sub(f.mul(piv, a[i].second), f.mul(lead, b[j].second)));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

int sparse_eliminate(SparseSystem& s, std::vector<int>* pivots) {
  const Field& f = s.field;
  Coeff prev = f.one();
  int r = 0;
  for (int c = 0; c < s.cols && r < static_cast<int>(s.rows.size()); ++c) {
    int pivot_row = -1;
    for (int i = r; i < static_cast<int>(s.rows.size()); ++i) {
      if (row_entry(s.rows[static_cast<std::size_t>(i)], c)) {
        pivot_row = i;
        break;
      }
    }
    if (pivot_row < 0) continue;
    std::swap(s.rows[static_cast<std::size_t>(pivot_row)], s.rows[static_cast<std::size_t>(r)]);
    const SparseRow& prow = s.rows[static_cast<std::size_t>(r)];
    const Coeff piv = *row_entry(prow, c);
    for (int i = r + 1; i < static_cast<int>(s.rows.size()); ++i) {
      SparseRow& row = s.rows[static_cast<std::size_t>(i)];
      const Coeff* lead = row_entry(row, c);
      if (!lead) continue;
      row = row_combine(f, row, piv, prow, *lead, prev);
    }
    prev = piv;
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

int sparse_rank(SparseSystem s) { return sparse_eliminate(s, nullptr); }

std::optional<std::vector<Coeff>> sparse_solve(SparseSystem s) {
  const Field& f = s.field;
  const int cols = s.cols;
  std::vector<int> pivots;
  const int r = sparse_eliminate(s, &pivots);

  // Rows below the pivots have no entries in real columns anymore; a
  // leftover right-hand side entry there means the system is inconsistent.
  for (std::size_t i = static_cast<std::size_t>(r); i < s.rows.size(); ++i)
    if (!s.rows[i].empty()) return std::nullopt;

  std::vector<Coeff> x(static_cast<std::size_t>(cols), f.zero());
  for (int row = r - 1; row >= 0; --row) {
    const int pc = pivots[static_cast<std::size_t>(row)];
    Coeff rhs = f.zero();
    Coeff piv = f.one();
    for (const auto& [col, v] : s.rows[static_cast<std::size_t>(row)]) {
      if (col == pc)
        piv = v;
      else if (col == cols)
        rhs = f.add(rhs, v);
      else
        rhs = f.sub(rhs, f.mul(v, x[static_cast<std::size_t>(col)]));
    }
    x[static_cast<std::size_t>(pc)] = f.div(rhs, piv);
  }
  return x;
}

std::optional<std::vector<Coeff>> solve(const CoeffMatrix& a, const std::vector<Coeff>& b) {
  const Field& f = a.field();
  CoeffMatrix w(a.rows(), a.cols() + 1, f);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) w.at(i, j) = a.at(i, j);
    w.at(i, a.cols()) = b[static_cast<std::size_t>(i)];
  }
  std::vector<int> pivots;
  int r = eliminate_impl(w, &pivots, nullptr);
  // A pivot in the augmented column means the system is inconsistent.
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;

  std::vector<Coeff> x(static_cast<std::size_t>(a.cols()), f.zero());
  for (int row = r - 1; row >= 0; --row) {
    const int pc = pivots[static_cast<std::size_t>(row)];
    Coeff rhs = w.at(row, a.cols());
    for (int j = pc + 1; j < a.cols(); ++j) {
      if (!f.is_zero(w.at(row, j))) rhs = f.sub(rhs, f.mul(w.at(row, j), x[static_cast<std::size_t>(j)]));
    }
    x[static_cast<std::size_t>(pc)] = f.div(rhs, w.at(row, pc));
  }
  return x;
}

}  // namespace imtheta
