// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_SPARSE_HPP
#define STOKESMG_SPARSE_HPP

#include <span>
#include <vector>

#include "stokesmg/common.hpp"

namespace stokesmg
{

struct Triplet
{
  int row, col;
  double value;
};

//
// Compressed sparse row matrix. Column indices are strictly increasing within each row.
// Explicit zeros are kept: the stored pattern is the structural (finite element)
// coupling pattern, not only the numerically nonzero entries.
//
class SparseMatrix
{
public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}
  SparseMatrix(int rows, int cols, std::vector<Index> row_ptr, std::vector<int> col_idx,
               std::vector<double> values);

  // Duplicates are summed; zero-valued triplets still create a structural entry.
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);
  static SparseMatrix identity(int n);
  static SparseMatrix from_dense(const DenseMatrix &d, double drop = 0.0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Index nnz() const { return static_cast<Index>(col_idx_.size()); }
  bool empty() const { return rows_ == 0 && cols_ == 0; }

  const std::vector<Index> &row_ptr() const { return row_ptr_; }
  const std::vector<int> &col_idx() const { return col_idx_; }
  const std::vector<double> &values() const { return values_; }
  std::vector<double> &values() { return values_; }

  // Stored value at (i, j), 0 if not in the pattern.
  double coeff(int i, int j) const;
  // Pointer to the stored entry (i, j), nullptr if absent.
  double *find(int i, int j);

  // y = A x
  Vector operator*(const Vector &x) const;
  void multiply(const Vector &x, Vector &y) const;
  // y += alpha A x
  void multiply_add(const Vector &x, Vector &y, double alpha = 1.0) const;
  // y = A^T x
  void multiply_transpose(const Vector &x, Vector &y) const;
  // y += alpha A^T x
  void multiply_transpose_add(const Vector &x, Vector &y, double alpha = 1.0) const;

  SparseMatrix transpose() const;
  DenseMatrix to_dense() const;

  // Zeroes rows and columns in the masks (entries stay in the pattern).
  void zero_rows(std::span<const char> row_mask);
  void zero_cols(std::span<const char> col_mask);

  // Submatrix with the given row and column index lists.
  SparseMatrix submatrix(std::span<const int> rows, std::span<const int> cols) const;

  bool is_sorted_unique() const;

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

// C = A B
SparseMatrix multiply(const SparseMatrix &a, const SparseMatrix &b);

// 2 x 2 block matrix [a b; c d]. Empty blocks are treated as zero.
SparseMatrix block_matrix(const SparseMatrix &a, const SparseMatrix &b, const SparseMatrix &c,
                          const SparseMatrix &d);

// Block-diagonal matrix diag(a, b).
SparseMatrix block_diagonal(const SparseMatrix &a, const SparseMatrix &b);

}  // namespace stokesmg

#endif  // STOKESMG_SPARSE_HPP
