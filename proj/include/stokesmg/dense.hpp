// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_DENSE_HPP
#define STOKESMG_DENSE_HPP

#include <Eigen/LU>

#include "stokesmg/common.hpp"

namespace stokesmg
{

//
// LU factorization with partial pivoting. A pivot smaller than 1e-14 times the largest
// entry of its (permuted) input row is treated as singular.
//
class DenseLU
{
public:
  DenseLU() = default;
  explicit DenseLU(const DenseMatrix &m);

  int dim() const { return static_cast<int>(lu_.rows()); }
  Vector solve(const Vector &b) const;
  // Solves in place; b must have dim() entries.
  void solve_in_place(Eigen::Ref<Vector> b) const;

  // Reconstruction P^T L U for checking.
  DenseMatrix reconstruct() const { return lu_.reconstructedMatrix(); }

  static constexpr double singular_tolerance = 1e-14;

private:
  Eigen::PartialPivLU<DenseMatrix> lu_;
};

}  // namespace stokesmg

#endif  // STOKESMG_DENSE_HPP
