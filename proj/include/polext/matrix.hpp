#ifndef POLEXT_MATRIX_HPP
#define POLEXT_MATRIX_HPP

#include <cstddef>
#include <variant>
#include <vector>

#include "polext/field.hpp"

namespace polext {

// Row-major dense matrix of exact Scalars over a single field.
class DenseMatrix {
public:
  DenseMatrix(const FieldSpec& field, std::size_t rows, std::size_t cols);
  DenseMatrix(const FieldSpec& field, std::size_t rows, std::size_t cols,
              std::vector<Scalar> entries);

  static DenseMatrix identity(const FieldSpec& field, std::size_t n);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  const std::vector<Scalar>& entries() const { return entries_; }

  DenseMatrix transpose() const;
  std::vector<Scalar> apply(const std::vector<Scalar>& x) const;
  // y^T M.
  std::vector<Scalar> apply_left(const std::vector<Scalar>& y) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

struct RrefResult {
  DenseMatrix reduced;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank = 0;
};

/// Reduced row-echelon form.
///
/// Over Q the elimination is fraction-free: rows are cleared to integers,
/// combined as piv*row_i - a*row_p and divided by their content, and only
/// the final pass divides by pivots. Pivot = first nonzero entry in the
/// column among the remaining rows.
RrefResult rref(const DenseMatrix& m);

struct LinearSolution {
  std::vector<Scalar> particular;
  // Basis of {x : M x = 0}, one vector per free column.
  std::vector<std::vector<Scalar>> kernel;
};

/// Proof that M x = b has no solution: `multiplier` is a combination y of
/// the original rows with y^T M = 0 and y^T b = `residual` != 0. `row` is
/// the index of the offending row in the reduced augmented system.
struct Inconsistency {
  std::size_t row = 0;
  std::vector<Scalar> multiplier;
  Scalar residual;
};

using SolveResult = std::variant<LinearSolution, Inconsistency>;

SolveResult solve(const DenseMatrix& m, const std::vector<Scalar>& b);

}  // namespace polext

#endif
