// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_RELAXATION_HPP
#define STOKESMG_RELAXATION_HPP

#include <span>

#include "stokesmg/dense.hpp"
#include "stokesmg/function_space.hpp"
#include "stokesmg/sparse.hpp"

namespace stokesmg
{

struct Patch
{
  int vertex = -1;
  std::vector<int> dofs;        // sorted global dof ids
  std::vector<double> weights;  // 1 / multiplicity, aligned with dofs
};

//
// Overlapping vertex-patch decomposition for additive Schwarz. Constrained (Dirichlet)
// dofs never enter a patch and patches left without dofs are dropped.
//
class PatchSet
{
public:
  PatchSet() = default;
  PatchSet(int size, std::vector<Patch> patches);

  int size() const { return size_; }
  int num_patches() const { return static_cast<int>(patches_.size()); }
  const Patch &patch(int i) const { return patches_[i]; }
  const std::vector<Patch> &patches() const { return patches_; }
  bool factored() const { return !factors_.empty() || patches_.empty(); }
  // Number of patches containing each dof.
  std::vector<int> multiplicity() const;

  // Extracts and factors every patch block of k.
  void factor(const SparseMatrix &k);
  // z = sum_i I_i^T W_i K_i^{-1} I_i r
  void apply(const Vector &r, Vector &z) const;

private:
  int size_ = 0;
  std::vector<Patch> patches_;
  std::vector<DenseLU> factors_;
};

// Per vertex: velocity dofs on closure(star(v)) and pressure dofs on star(v). Pressure
// dofs are offset by velocity.num_dofs(); mask flags constrained monolithic dofs.
PatchSet build_vanka_star_patches(const FunctionSpace &velocity, const FunctionSpace &pressure,
                                  std::span<const char> mask);

// Per vertex: velocity dofs on star(v) only.
PatchSet build_star_patches(const FunctionSpace &velocity, std::span<const char> mask);

PatchSet factor_patches(const SparseMatrix &k, PatchSet patches);

Vector asm_apply(const PatchSet &patches, const Vector &r);

}  // namespace stokesmg

#endif  // STOKESMG_RELAXATION_HPP
