#pragma once

// Dense exact linear algebra over a FieldSpec.

#include <optional>
#include <span>
#include <vector>

#include "comdyn/field.hpp"

namespace comdyn {

class Matrix {
 public:
  Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols);
  static Matrix identity(const FieldSpec& field, std::size_t n);
  static Matrix from_rows(const FieldSpec& field, std::vector<std::vector<FieldElement>> rows);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  FieldElement& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const FieldElement& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const FieldElement> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix operator*(const Matrix& other) const;
  std::vector<FieldElement> operator*(std::span<const FieldElement> v) const;
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> data_;
};

/// Fraction-free (Bareiss) determinant; square matrices only.
FieldElement determinant(const Matrix& m);

/// Exact inverse by Gauss-Jordan elimination, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of {v : m v = 0}.
std::vector<std::vector<FieldElement>> kernel(const Matrix& m);

/// Incremental row-echelon accumulator: keeps a row iff it raises the rank.
class RankAccumulator {
 public:
  RankAccumulator(const FieldSpec& field, std::size_t width);

  /// Reduces the row against the stored pivots; stores it and returns true
  /// when a nonzero remainder is left.
  bool try_add(std::span<const FieldElement> row);
  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t width() const noexcept { return width_; }

 private:
  FieldSpec field_;
  std::size_t width_;
  std::vector<std::vector<FieldElement>> rows_;  // normalized: pivot entry 1
  std::vector<std::size_t> pivots_;
};

}  // namespace comdyn
