#include "strengthlab/linalg.hpp"

#include <utility>

namespace strengthlab {

std::vector<std::size_t> row_reduce(Matrix& A, const Field& field, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < A.rows; ++col) {
    std::size_t pivot = row;
    while (pivot < A.rows && A.at(pivot, col) == 0) ++pivot;
    if (pivot == A.rows) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < A.cols; ++c) std::swap(A.at(pivot, c), A.at(row, c));
    }
    const Elem scale = field.inv(A.at(row, col));
    for (std::size_t c = col; c < A.cols; ++c) A.at(row, c) = field.mul(A.at(row, c), scale);
    for (std::size_t r = 0; r < A.rows; ++r) {
      if (r == row) continue;
      const Elem factor = A.at(r, col);
      if (factor == 0) continue;
      for (std::size_t c = col; c < A.cols; ++c) {
        A.at(r, c) = field.sub(A.at(r, c), field.mul(factor, A.at(row, c)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t matrix_rank(Matrix A, const Field& field) {
  return row_reduce(A, field, A.cols).size();
}

std::optional<std::vector<Elem>> solve_linear(const Matrix& A, const std::vector<Elem>& b,
                                              const Field& field) {
  if (b.size() != A.rows) fail(ErrorKind::DimensionMismatch, "right-hand side length mismatch");
  Matrix aug(A.rows, A.cols + 1);
  for (std::size_t r = 0; r < A.rows; ++r) {
    for (std::size_t c = 0; c < A.cols; ++c) aug.at(r, c) = A.at(r, c);
    aug.at(r, A.cols) = b[r];
  }
  const auto pivots = row_reduce(aug, field, A.cols);
  for (std::size_t r = pivots.size(); r < aug.rows; ++r) {
    if (aug.at(r, A.cols) != 0) return std::nullopt;
  }
  std::vector<Elem> x(A.cols, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, A.cols);
  return x;
}

}  // namespace strengthlab
