// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/transfer.hpp"

#include <cmath>

namespace stokesmg
{

namespace
{

// Entries below this are round-off of exact zeros of the nodal basis.
constexpr double drop_tolerance = 1e-13;

// Scalar rows for every fine node. locate(c_fine) returns the coarse cell containing the
// fine cell; values are coarse basis values at the fine node.
template <typename Locate>
SparseMatrix nodal_evaluation(const FunctionSpace &coarse, const FunctionSpace &fine,
                              Locate &&locate)
{
  const Mesh &fm = fine.mesh();
  const Mesh &cm = coarse.mesh();
  const int ncl = coarse.nodes_per_cell();
  const int comps = coarse.components();
  std::vector<char> done(fine.num_nodes(), 0);
  std::vector<Triplet> trip;
  std::vector<double> phi(ncl);
  for (int c = 0; c < fm.num_cells(); ++c)
  {
    const int pc = locate(c);
    const CellGeometry g(cm, pc);
    const auto cnodes = coarse.cell_nodes(pc);
    for (int node : fine.cell_nodes(c))
    {
      if (done[node])
      {
        continue;
      }
      done[node] = 1;
      const Point r = g.pull_back(fine.node_point(node));
      coarse.element().eval(r[0], r[1], phi.data());
      for (int j = 0; j < ncl; ++j)
      {
        if (std::abs(phi[j]) <= drop_tolerance)
        {
          continue;
        }
        for (int d = 0; d < comps; ++d)
        {
          trip.push_back({fine.dof(node, d), coarse.dof(cnodes[j], d), phi[j]});
        }
      }
    }
  }
  return SparseMatrix::from_triplets(fine.num_dofs(), coarse.num_dofs(), std::move(trip));
}

void check_components(const FunctionSpace &a, const FunctionSpace &b, const char *what)
{
  if (a.components() != b.components())
  {
    throw Error(std::string(what) + ": component counts differ");
  }
}

}  // namespace

SparseMatrix build_h_prolongation(const FunctionSpace &coarse, const FunctionSpace &fine)
{
  check_components(coarse, fine, "build_h_prolongation");
  if (fine.mesh().parent() != coarse.mesh_ptr())
  {
    throw Error("build_h_prolongation: meshes are not nested (fine mesh is not a refinement "
                "of the coarse mesh)");
  }
  if (coarse.degree() != fine.degree() || coarse.continuity() != fine.continuity())
  {
    throw Error("build_h_prolongation: spaces differ in degree or continuity");
  }
  const Mesh &fm = fine.mesh();
  return nodal_evaluation(coarse, fine, [&](int c) { return fm.parent_cell(c); });
}

SparseMatrix build_p_prolongation(const FunctionSpace &low, const FunctionSpace &high)
{
  check_components(low, high, "build_p_prolongation");
  if (low.mesh_ptr() != high.mesh_ptr())
  {
    throw Error("build_p_prolongation: spaces live on different meshes");
  }
  if (low.degree() > high.degree())
  {
    throw Error("build_p_prolongation: low degree " + std::to_string(low.degree()) +
                " exceeds high degree " + std::to_string(high.degree()));
  }
  if (!low.continuous() && high.continuous())
  {
    throw Error("build_p_prolongation: cannot embed a discontinuous space in a continuous one");
  }
  return nodal_evaluation(low, high, [](int c) { return c; });
}

SparseMatrix build_monolithic_transfer(const SparseMatrix &p_velocity,
                                       const SparseMatrix &p_pressure)
{
  return block_diagonal(p_velocity, p_pressure);
}

void restrict_to_homogeneous(SparseMatrix &p, std::span<const char> fine_mask,
                             std::span<const char> coarse_mask)
{
  if (static_cast<int>(fine_mask.size()) != p.rows() ||
      static_cast<int>(coarse_mask.size()) != p.cols())
  {
    throw Error("restrict_to_homogeneous: mask sizes do not match the transfer");
  }
  p.zero_rows(fine_mask);
  p.zero_cols(coarse_mask);
}

}  // namespace stokesmg
