// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/sparse.hpp"

#include <algorithm>
#include <string>

namespace stokesmg
{

SparseMatrix::SparseMatrix(int rows, int cols, std::vector<Index> row_ptr,
                           std::vector<int> col_idx, std::vector<double> values)
  : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
    values_(std::move(values))
{
  if (static_cast<int>(row_ptr_.size()) != rows_ + 1 ||
      static_cast<Index>(col_idx_.size()) != row_ptr_.back() || col_idx_.size() != values_.size())
  {
    throw Error("SparseMatrix: inconsistent CSR arrays");
  }
}

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets)
{
  for (const auto &t : triplets)
  {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
    {
      throw Error("SparseMatrix::from_triplets: entry (" + std::to_string(t.row) + ", " +
                  std::to_string(t.col) + ") out of range");
    }
  }
  // Counting sort by row, then sort columns within rows.
  std::vector<Index> count(rows + 1, 0);
  for (const auto &t : triplets)
  {
    ++count[t.row + 1];
  }
  for (int i = 0; i < rows; ++i)
  {
    count[i + 1] += count[i];
  }
  std::vector<std::pair<int, double>> sorted(triplets.size());
  {
    std::vector<Index> pos(count.begin(), count.end() - 1);
    for (const auto &t : triplets)
    {
      sorted[pos[t.row]++] = {t.col, t.value};
    }
  }
  triplets.clear();
  triplets.shrink_to_fit();

  std::vector<Index> row_ptr(rows + 1, 0);
  std::vector<int> col_idx;
  std::vector<double> values;
  col_idx.reserve(sorted.size());
  values.reserve(sorted.size());
  for (int i = 0; i < rows; ++i)
  {
    auto first = sorted.begin() + count[i], last = sorted.begin() + count[i + 1];
    std::sort(first, last, [](const auto &x, const auto &y) { return x.first < y.first; });
    for (auto it = first; it != last; ++it)
    {
      if (!col_idx.empty() && static_cast<Index>(col_idx.size()) > row_ptr[i] &&
          col_idx.back() == it->first)
      {
        values.back() += it->second;
      }
      else
      {
        col_idx.push_back(it->first);
        values.push_back(it->second);
      }
    }
    row_ptr[i + 1] = static_cast<Index>(col_idx.size());
  }
  return SparseMatrix(rows, cols, std::move(row_ptr), std::move(col_idx), std::move(values));
}

SparseMatrix SparseMatrix::identity(int n)
{
  std::vector<Index> rp(n + 1);
  std::vector<int> ci(n);
  for (int i = 0; i < n; ++i)
  {
    rp[i] = i;
    ci[i] = i;
  }
  rp[n] = n;
  return SparseMatrix(n, n, std::move(rp), std::move(ci), std::vector<double>(n, 1.0));
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix &d, double drop)
{
  std::vector<Triplet> t;
  for (int i = 0; i < d.rows(); ++i)
  {
    for (int j = 0; j < d.cols(); ++j)
    {
      if (std::abs(d(i, j)) > drop)
      {
        t.push_back({i, j, d(i, j)});
      }
    }
  }
  return from_triplets(static_cast<int>(d.rows()), static_cast<int>(d.cols()), std::move(t));
}

double SparseMatrix::coeff(int i, int j) const
{
  const auto first = col_idx_.begin() + row_ptr_[i], last = col_idx_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(first, last, j);
  return (it != last && *it == j) ? values_[it - col_idx_.begin()] : 0.0;
}

double *SparseMatrix::find(int i, int j)
{
  const auto first = col_idx_.begin() + row_ptr_[i], last = col_idx_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(first, last, j);
  return (it != last && *it == j) ? &values_[it - col_idx_.begin()] : nullptr;
}

Vector SparseMatrix::operator*(const Vector &x) const
{
  Vector y;
  multiply(x, y);
  return y;
}

void SparseMatrix::multiply(const Vector &x, Vector &y) const
{
  if (x.size() != cols_)
  {
    throw Error("SparseMatrix::multiply: dimension mismatch");
  }
  y.resize(rows_);
  for (int i = 0; i < rows_; ++i)
  {
    double s = 0.0;
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
    {
      s += values_[p] * x[col_idx_[p]];
    }
    y[i] = s;
  }
}

void SparseMatrix::multiply_add(const Vector &x, Vector &y, double alpha) const
{
  if (x.size() != cols_ || y.size() != rows_)
  {
    throw Error("SparseMatrix::multiply_add: dimension mismatch");
  }
  for (int i = 0; i < rows_; ++i)
  {
    double s = 0.0;
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
    {
      s += values_[p] * x[col_idx_[p]];
    }
    y[i] += alpha * s;
  }
}

void SparseMatrix::multiply_transpose(const Vector &x, Vector &y) const
{
  y.setZero(cols_);
  multiply_transpose_add(x, y, 1.0);
}

void SparseMatrix::multiply_transpose_add(const Vector &x, Vector &y, double alpha) const
{
  if (x.size() != rows_ || y.size() != cols_)
  {
    throw Error("SparseMatrix::multiply_transpose_add: dimension mismatch");
  }
  for (int i = 0; i < rows_; ++i)
  {
    const double xi = alpha * x[i];
    if (xi == 0.0)
    {
      continue;
    }
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
    {
      y[col_idx_[p]] += values_[p] * xi;
    }
  }
}

SparseMatrix SparseMatrix::transpose() const
{
  std::vector<Index> rp(cols_ + 1, 0);
  for (int c : col_idx_)
  {
    ++rp[c + 1];
  }
  for (int j = 0; j < cols_; ++j)
  {
    rp[j + 1] += rp[j];
  }
  std::vector<int> ci(col_idx_.size());
  std::vector<double> v(values_.size());
  std::vector<Index> pos(rp.begin(), rp.end() - 1);
  for (int i = 0; i < rows_; ++i)
  {
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
    {
      const Index q = pos[col_idx_[p]]++;
      ci[q] = i;
      v[q] = values_[p];
    }
  }
  return SparseMatrix(cols_, rows_, std::move(rp), std::move(ci), std::move(v));
}

DenseMatrix SparseMatrix::to_dense() const
{
  DenseMatrix d = DenseMatrix::Zero(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
  {
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
    {
      d(i, col_idx_[p]) = values_[p];
    }
  }
  return d;
}

void SparseMatrix::zero_rows(std::span<const char> row_mask)
{
  for (int i = 0; i < rows_; ++i)
  {
    if (row_mask[i])
    {
      std::fill(values_.begin() + row_ptr_[i], values_.begin() + row_ptr_[i + 1], 0.0);
    }
  }
}

void SparseMatrix::zero_cols(std::span<const char> col_mask)
{
  for (std::size_t p = 0; p < col_idx_.size(); ++p)
  {
    if (col_mask[col_idx_[p]])
    {
      values_[p] = 0.0;
    }
  }
}

SparseMatrix SparseMatrix::submatrix(std::span<const int> rows, std::span<const int> cols) const
{
  std::vector<int> col_map(cols_, -1);
  for (std::size_t j = 0; j < cols.size(); ++j)
  {
    col_map[cols[j]] = static_cast<int>(j);
  }
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    const int r = rows[i];
    for (Index p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
    {
      const int j = col_map[col_idx_[p]];
      if (j >= 0)
      {
        t.push_back({static_cast<int>(i), j, values_[p]});
      }
    }
  }
  return from_triplets(static_cast<int>(rows.size()), static_cast<int>(cols.size()), std::move(t));
}

bool SparseMatrix::is_sorted_unique() const
{
  for (int i = 0; i < rows_; ++i)
  {
    for (Index p = row_ptr_[i] + 1; p < row_ptr_[i + 1]; ++p)
    {
      if (col_idx_[p] <= col_idx_[p - 1])
      {
        return false;
      }
    }
  }
  return true;
}

SparseMatrix multiply(const SparseMatrix &a, const SparseMatrix &b)
{
  if (a.cols() != b.rows())
  {
    throw Error("multiply: dimension mismatch");
  }
  std::vector<Index> rp(a.rows() + 1, 0);
  std::vector<int> ci;
  std::vector<double> v;
  std::vector<double> acc(b.cols(), 0.0);
  std::vector<int> marker(b.cols(), -1);
  std::vector<int> row_cols;
  const auto &arp = a.row_ptr();
  const auto &aci = a.col_idx();
  const auto &av = a.values();
  const auto &brp = b.row_ptr();
  const auto &bci = b.col_idx();
  const auto &bv = b.values();
  for (int i = 0; i < a.rows(); ++i)
  {
    row_cols.clear();
    for (Index p = arp[i]; p < arp[i + 1]; ++p)
    {
      const int k = aci[p];
      for (Index q = brp[k]; q < brp[k + 1]; ++q)
      {
        const int j = bci[q];
        if (marker[j] != i)
        {
          marker[j] = i;
          acc[j] = 0.0;
          row_cols.push_back(j);
        }
        acc[j] += av[p] * bv[q];
      }
    }
    std::sort(row_cols.begin(), row_cols.end());
    for (int j : row_cols)
    {
      ci.push_back(j);
      v.push_back(acc[j]);
    }
    rp[i + 1] = static_cast<Index>(ci.size());
  }
  return SparseMatrix(a.rows(), b.cols(), std::move(rp), std::move(ci), std::move(v));
}

SparseMatrix block_matrix(const SparseMatrix &a, const SparseMatrix &b, const SparseMatrix &c,
                          const SparseMatrix &d)
{
  const int r0 = a.rows(), c0 = a.cols();
  const int r1 = c.empty() ? d.rows() : c.rows();
  const int c1 = b.empty() ? d.cols() : b.cols();
  auto check = [](const SparseMatrix &m, int r, int cc) {
    if (!m.empty() && (m.rows() != r || m.cols() != cc))
    {
      throw Error("block_matrix: block dimension mismatch");
    }
  };
  check(b, r0, c1);
  check(c, r1, c0);
  check(d, r1, c1);
  std::vector<Index> rp(r0 + r1 + 1, 0);
  std::vector<int> ci;
  std::vector<double> v;
  ci.reserve(a.nnz() + b.nnz() + c.nnz() + d.nnz());
  v.reserve(ci.capacity());
  auto append_row = [&](const SparseMatrix &m, int i, int offset) {
    if (m.empty())
    {
      return;
    }
    for (Index p = m.row_ptr()[i]; p < m.row_ptr()[i + 1]; ++p)
    {
      ci.push_back(m.col_idx()[p] + offset);
      v.push_back(m.values()[p]);
    }
  };
  for (int i = 0; i < r0; ++i)
  {
    append_row(a, i, 0);
    append_row(b, i, c0);
    rp[i + 1] = static_cast<Index>(ci.size());
  }
  for (int i = 0; i < r1; ++i)
  {
    append_row(c, i, 0);
    append_row(d, i, c0);
    rp[r0 + i + 1] = static_cast<Index>(ci.size());
  }
  return SparseMatrix(r0 + r1, c0 + c1, std::move(rp), std::move(ci), std::move(v));
}

SparseMatrix block_diagonal(const SparseMatrix &a, const SparseMatrix &b)
{
  return block_matrix(a, SparseMatrix(a.rows(), b.cols()), SparseMatrix(b.rows(), a.cols()), b);
}

}  // namespace stokesmg
