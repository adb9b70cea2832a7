// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/dense.hpp"

#include <string>

namespace stokesmg
{

DenseLU::DenseLU(const DenseMatrix &m)
{
  if (m.rows() != m.cols())
  {
    throw Error("DenseLU: matrix is not square");
  }
  if (m.rows() == 0)
  {
    return;
  }
  lu_.compute(m);
  // Pivot i of U belongs to row i of P M.
  const DenseMatrix pm = lu_.permutationP() * m;
  const auto &f = lu_.matrixLU();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
  {
    const double row_max = pm.row(i).cwiseAbs().maxCoeff();
    if (!(std::abs(f(i, i)) > singular_tolerance * row_max))
    {
      throw SingularMatrixError("DenseLU: singular pivot at step " + std::to_string(i));
    }
  }
}

Vector DenseLU::solve(const Vector &b) const
{
  if (b.size() != dim())
  {
    throw Error("DenseLU::solve: dimension mismatch");
  }
  if (dim() == 0)
  {
    return Vector();
  }
  return lu_.solve(b);
}

void DenseLU::solve_in_place(Eigen::Ref<Vector> b) const
{
  if (dim() == 0)
  {
    return;
  }
  b = lu_.solve(b);
}

}  // namespace stokesmg
