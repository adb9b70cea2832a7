// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/relaxation.hpp"

#include <algorithm>

#include "stokesmg/mesh.hpp"

namespace stokesmg
{

namespace
{

// Dense K(dofs, dofs) for a sorted index list, merging against the sorted CSR rows.
DenseMatrix gather_block(const SparseMatrix &k, const std::vector<int> &dofs)
{
  const int n = static_cast<int>(dofs.size());
  DenseMatrix out = DenseMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
  {
    const int r = dofs[i];
    Index p = k.row_ptr()[r];
    const Index end = k.row_ptr()[r + 1];
    int j = 0;
    while (p < end && j < n)
    {
      const int c = k.col_idx()[p];
      if (c < dofs[j])
      {
        ++p;
      }
      else if (c > dofs[j])
      {
        ++j;
      }
      else
      {
        out(i, j++) = k.values()[p++];
      }
    }
  }
  return out;
}

}  // namespace

PatchSet::PatchSet(int size, std::vector<Patch> patches) : size_(size)
{
  for (auto &p : patches)
  {
    std::sort(p.dofs.begin(), p.dofs.end());
    p.dofs.erase(std::unique(p.dofs.begin(), p.dofs.end()), p.dofs.end());
    if (!p.dofs.empty() && (p.dofs.front() < 0 || p.dofs.back() >= size))
    {
      throw Error("PatchSet: dof index out of range in patch of vertex " +
                  std::to_string(p.vertex));
    }
    if (!p.dofs.empty())
    {
      patches_.push_back(std::move(p));
    }
  }
  const auto mult = multiplicity();
  for (auto &p : patches_)
  {
    p.weights.resize(p.dofs.size());
    for (std::size_t i = 0; i < p.dofs.size(); ++i)
    {
      p.weights[i] = 1.0 / mult[p.dofs[i]];
    }
  }
}

std::vector<int> PatchSet::multiplicity() const
{
  std::vector<int> m(size_, 0);
  for (const auto &p : patches_)
  {
    for (int d : p.dofs)
    {
      ++m[d];
    }
  }
  return m;
}

void PatchSet::factor(const SparseMatrix &k)
{
  if (k.rows() != size_ || k.cols() != size_)
  {
    throw Error("PatchSet::factor: operator size does not match the patch set");
  }
  std::vector<DenseLU> factors;
  factors.reserve(patches_.size());
  for (const auto &p : patches_)
  {
    try
    {
      factors.emplace_back(gather_block(k, p.dofs));
    }
    catch (const SingularMatrixError &)
    {
      throw SingularMatrixError("singular patch matrix at vertex " + std::to_string(p.vertex));
    }
  }
  factors_ = std::move(factors);
}

void PatchSet::apply(const Vector &r, Vector &z) const
{
  if (!factored())
  {
    throw Error("PatchSet::apply: patches are not factored");
  }
  z.setZero(size_);
  Vector local;
  for (std::size_t i = 0; i < patches_.size(); ++i)
  {
    const auto &p = patches_[i];
    const int n = static_cast<int>(p.dofs.size());
    local.resize(n);
    for (int j = 0; j < n; ++j)
    {
      local[j] = r[p.dofs[j]];
    }
    factors_[i].solve_in_place(local);
    for (int j = 0; j < n; ++j)
    {
      z[p.dofs[j]] += p.weights[j] * local[j];
    }
  }
}

namespace
{

void append_entity_dofs(const FunctionSpace &space, const EntitySet &s, int offset,
                        std::span<const char> mask, std::vector<int> &out)
{
  auto push = [&](const std::vector<int> &nodes) {
    for (int n : nodes)
    {
      for (int c = 0; c < space.components(); ++c)
      {
        const int d = offset + space.dof(n, c);
        if (!mask[d])
        {
          out.push_back(d);
        }
      }
    }
  };
  for (int v : s.vertices)
  {
    push(space.vertex_nodes(v));
  }
  for (int e : s.edges)
  {
    push(space.edge_nodes(e));
  }
  for (int c : s.cells)
  {
    push(space.cell_nodes_owned(c));
  }
}

}  // namespace

PatchSet build_vanka_star_patches(const FunctionSpace &velocity, const FunctionSpace &pressure,
                                  std::span<const char> mask)
{
  if (velocity.mesh_ptr() != pressure.mesh_ptr())
  {
    throw Error("build_vanka_star_patches: spaces live on different meshes");
  }
  const int n = velocity.num_dofs() + pressure.num_dofs();
  if (static_cast<int>(mask.size()) != n)
  {
    throw Error("build_vanka_star_patches: mask size mismatch");
  }
  const Mesh &m = velocity.mesh();
  std::vector<Patch> patches(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v)
  {
    const EntitySet star = vertex_star(m, v);
    patches[v].vertex = v;
    append_entity_dofs(velocity, closure(m, star), 0, mask, patches[v].dofs);
    append_entity_dofs(pressure, star, velocity.num_dofs(), mask, patches[v].dofs);
  }
  return PatchSet(n, std::move(patches));
}

PatchSet build_star_patches(const FunctionSpace &velocity, std::span<const char> mask)
{
  const int n = velocity.num_dofs();
  if (static_cast<int>(mask.size()) < n)
  {
    throw Error("build_star_patches: mask size mismatch");
  }
  const Mesh &m = velocity.mesh();
  std::vector<Patch> patches(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v)
  {
    patches[v].vertex = v;
    append_entity_dofs(velocity, vertex_star(m, v), 0, mask, patches[v].dofs);
  }
  return PatchSet(n, std::move(patches));
}

PatchSet factor_patches(const SparseMatrix &k, PatchSet patches)
{
  patches.factor(k);
  return patches;
}

Vector asm_apply(const PatchSet &patches, const Vector &r)
{
  Vector z;
  patches.apply(r, z);
  return z;
}

}  // namespace stokesmg
