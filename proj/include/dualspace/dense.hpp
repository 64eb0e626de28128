#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dualspace/error.hpp"
#include "dualspace/field.hpp"

namespace dualspace {

using DenseVec = std::vector<Scalar>;

/// Row-major dense matrix over one field. Used for truncations handed to
/// Gaussian elimination.
class DenseMatrix {
 public:
  DenseMatrix(FieldSpec spec, std::size_t rows, std::size_t cols)
      : spec_(spec), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(spec)) {}

  const FieldSpec& spec() const noexcept { return spec_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Sets an entry, checking its field.
  void set(std::size_t r, std::size_t c, Scalar v) {
    require_same_field(spec_, v.spec());
    at(r, c) = std::move(v);
  }

  DenseVec multiply(const DenseVec& x) const {
    if (x.size() != cols_) {
      fail(ErrorKind::DimensionMismatch, "matrix has " + std::to_string(cols_) + " columns, vector has " +
                                             std::to_string(x.size()) + " entries");
    }
    DenseVec out(rows_, Scalar::zero(spec_));
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!at(r, c).is_zero() && !x[c].is_zero()) out[r] += at(r, c) * x[c];
      }
    }
    return out;
  }

 private:
  FieldSpec spec_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

namespace detail {

inline void check_entries(const DenseMatrix& a) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) require_same_field(a.spec(), a.at(r, c).spec());
  }
}

/// In-place reduction to reduced row echelon form over the first `pivot_cols`
/// columns. Pivot choice: for each column left to right, the first row
/// (top-down, among unused rows) with a nonzero entry. Returns pivot columns.
inline std::vector<std::size_t> reduce(DenseMatrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t next_row = 0;
  for (std::size_t c = 0; c < pivot_cols && next_row < m.rows(); ++c) {
    std::size_t r = next_row;
    while (r < m.rows() && m.at(r, c).is_zero()) ++r;
    if (r == m.rows()) continue;
    if (r != next_row) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m.at(r, k), m.at(next_row, k));
    }
    const Scalar inv = m.at(next_row, c).inverse();
    for (std::size_t k = c; k < m.cols(); ++k) m.at(next_row, k) *= inv;
    for (std::size_t other = 0; other < m.rows(); ++other) {
      if (other == next_row || m.at(other, c).is_zero()) continue;
      const Scalar factor = m.at(other, c);
      for (std::size_t k = c; k < m.cols(); ++k) {
        if (!m.at(next_row, k).is_zero()) m.at(other, k) -= factor * m.at(next_row, k);
      }
    }
    pivots.push_back(c);
    ++next_row;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(const DenseMatrix& a) {
  detail::check_entries(a);
  DenseMatrix work = a;
  return detail::reduce(work, work.cols()).size();
}

/// Solves A x = b exactly. Returns nullopt when the system is inconsistent;
/// free variables are set to zero.
inline std::optional<DenseVec> gauss_solve(const DenseMatrix& a, const DenseVec& b) {
  detail::check_entries(a);
  if (b.size() != a.rows()) {
    fail(ErrorKind::DimensionMismatch,
         "rhs has " + std::to_string(b.size()) + " entries, matrix has " + std::to_string(a.rows()) + " rows");
  }
  for (const auto& v : b) require_same_field(a.spec(), v.spec());

  DenseMatrix aug(a.spec(), a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols()) = b[r];
  }
  const auto pivots = detail::reduce(aug, a.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r) {
    if (!aug.at(r, a.cols()).is_zero()) return std::nullopt;
  }
  DenseVec x(a.cols(), Scalar::zero(a.spec()));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(k, a.cols());
  return x;
}

}  // namespace dualspace
