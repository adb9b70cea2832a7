// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_TRANSFER_HPP
#define STOKESMG_TRANSFER_HPP

#include <span>

#include "stokesmg/function_space.hpp"
#include "stokesmg/sparse.hpp"

namespace stokesmg
{

// Prolongation from a space on a mesh to the same kind of space on its direct refinement.
// Column j holds the values of coarse basis function j at the fine nodes.
SparseMatrix build_h_prolongation(const FunctionSpace &coarse, const FunctionSpace &fine);

// Prolongation between two degrees on the same mesh (low <= high). A continuous low
// space may be embedded in a discontinuous high space, not the other way round.
SparseMatrix build_p_prolongation(const FunctionSpace &low, const FunctionSpace &high);

// diag(p_velocity, p_pressure) in [velocity; pressure] ordering.
SparseMatrix build_monolithic_transfer(const SparseMatrix &p_velocity,
                                       const SparseMatrix &p_pressure);

// Zeroes the rows of constrained fine dofs and the columns of constrained coarse dofs.
void restrict_to_homogeneous(SparseMatrix &p, std::span<const char> fine_mask,
                             std::span<const char> coarse_mask);

}  // namespace stokesmg

#endif  // STOKESMG_TRANSFER_HPP
