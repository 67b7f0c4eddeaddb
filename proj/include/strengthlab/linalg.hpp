#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "strengthlab/field.hpp"

namespace strengthlab {

/// Dense row-major matrix over F_q.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Elem> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  Elem& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  Elem at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// In-place reduced row echelon form. Pivots are chosen as the first nonzero
/// entry at or below the current row, scanning columns left to right.
/// Returns the pivot column of each pivot row.
std::vector<std::size_t> row_reduce(Matrix& A, const Field& field, std::size_t pivot_cols);

std::size_t matrix_rank(Matrix A, const Field& field);

/// Some x with A x = b (free variables set to zero), or nullopt.
std::optional<std::vector<Elem>> solve_linear(const Matrix& A, const std::vector<Elem>& b,
                                              const Field& field);

}  // namespace strengthlab
