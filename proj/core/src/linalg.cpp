#include "comdyn/linalg.hpp"

#include "comdyn/error.hpp"

namespace comdyn {

Matrix::Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, FieldElement::zero(field)) {}

Matrix Matrix::identity(const FieldSpec& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElement::one(field);
  return m;
}

Matrix Matrix::from_rows(const FieldSpec& field, std::vector<std::vector<FieldElement>> rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      require_same_field(m(r, c), rows[r][c]);
      m(r, c) = std::move(rows[r][c]);
    }
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix out(field_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const FieldElement& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  }
  return out;
}

std::vector<FieldElement> Matrix::operator*(std::span<const FieldElement> v) const {
  if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  std::vector<FieldElement> out(rows_, FieldElement::zero(field_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    }
  }
  return out;
}

FieldElement determinant(const Matrix& input) {
  if (input.rows() != input.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = input.rows();
  const FieldSpec& field = input.field();
  if (n == 0) return FieldElement::one(field);
  Matrix m = input;
  FieldElement previous = FieldElement::one(field);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k).is_zero()) ++swap;
      if (swap == n) return FieldElement::zero(field);
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / previous;
      }
      m(i, k) = FieldElement::zero(field);
    }
    previous = m(k, k);
  }
  FieldElement det = m(n - 1, n - 1);
  return negate ? -det : det;
}

std::optional<Matrix> inverse(const Matrix& input) {
  if (input.rows() != input.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = input.rows();
  Matrix a = input;
  Matrix inv = Matrix::identity(input.field(), n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const FieldElement scale = a(col, col).inverse();
    for (std::size_t c = 0; c < n; ++c) {
      if (!a(col, c).is_zero()) a(col, c) *= scale;
      if (!inv(col, c).is_zero()) inv(col, c) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const FieldElement factor = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        if (!a(col, c).is_zero()) a(r, c) -= factor * a(col, c);
        if (!inv(col, c).is_zero()) inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(Matrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col).is_zero()) ++pivot;
    if (pivot == a.rows()) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(row, c));
    const FieldElement scale = a(row, col).inverse();
    for (std::size_t c = 0; c < a.cols(); ++c) a(row, c) *= scale;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const FieldElement factor = a(r, col);
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) -= factor * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  Matrix a = m;
  return row_reduce(a).size();
}

std::vector<std::vector<FieldElement>> kernel(const Matrix& m) {
  Matrix a = m;
  const auto pivots = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<FieldElement>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElement> v(a.cols(), FieldElement::zero(a.field()));
    v[free] = FieldElement::one(a.field());
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

RankAccumulator::RankAccumulator(const FieldSpec& field, std::size_t width) : field_(field), width_(width) {}

bool RankAccumulator::try_add(std::span<const FieldElement> row) {
  if (row.size() != width_) throw Error(ErrorCode::DimensionMismatch, "row width mismatch");
  std::vector<FieldElement> r(row.begin(), row.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const FieldElement factor = r[pivots_[i]];
    if (factor.is_zero()) continue;
    for (std::size_t c = 0; c < width_; ++c) {
      if (!rows_[i][c].is_zero()) r[c] -= factor * rows_[i][c];
    }
  }
  std::size_t pivot = 0;
  while (pivot < width_ && r[pivot].is_zero()) ++pivot;
  if (pivot == width_) return false;
  const FieldElement scale = r[pivot].inverse();
  for (std::size_t c = pivot; c < width_; ++c) {
    if (!r[c].is_zero()) r[c] *= scale;
  }
  // Keep earlier rows reduced at the new pivot so later reductions stay one pass.
  for (auto& stored : rows_) {
    const FieldElement factor = stored[pivot];
    if (factor.is_zero()) continue;
    for (std::size_t c = 0; c < width_; ++c) {
      if (!r[c].is_zero()) stored[c] -= factor * r[c];
    }
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(pivot);
  return true;
}

}  // namespace comdyn
