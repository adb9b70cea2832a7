// SPDX-License-Identifier: Apache-2.0
//
// Dense reference evaluations of the multigrid building blocks, written directly from
// their operator formulas. Only for tiny instances.

#ifndef STOKESMG_ORACLES_HPP
#define STOKESMG_ORACLES_HPP

#include <algorithm>
#include <set>

#include "stokesmg/solvers.hpp"

namespace oracles
{

using namespace stokesmg;

// (velocity, pressure) dof counts of the Vanka patch of vertex v. Velocity nodes of
// closure(star(v)) are the nodes of the incident cells; pressure nodes of star(v) are the
// nodes of incident cells with positive barycentric weight at v.
inline std::pair<int, int> brute_force_vanka(const FunctionSpace &vs, const FunctionSpace &ps,
                                             int v)
{
  const Mesh &m = vs.mesh();
  std::set<int> vel, pres;
  for (int c : m.vertex_cells(v))
  {
    for (int n : vs.cell_nodes(c))
    {
      vel.insert(n);
    }
    const auto &t = m.cell(c);
    const int local = static_cast<int>(std::find(t.begin(), t.end(), v) - t.begin());
    const auto nodes = ps.cell_nodes(c);
    for (int i = 0; i < ps.nodes_per_cell(); ++i)
    {
      const Point r = ps.element().node_point(i);
      const double lam[3] = {1 - r[0] - r[1], r[0], r[1]};
      if (!ps.continuous() || lam[local] > 1e-12)
      {
        pres.insert(nodes[i]);
      }
    }
  }
  return {2 * static_cast<int>(vel.size()), static_cast<int>(pres.size())};
}

// sum_i I_i^T W_i K_i^{-1} I_i
inline DenseMatrix dense_asm(const DenseMatrix &k, const PatchSet &s)
{
  const int n = static_cast<int>(k.rows());
  DenseMatrix out = DenseMatrix::Zero(n, n);
  for (const auto &p : s.patches())
  {
    const int m = static_cast<int>(p.dofs.size());
    DenseMatrix inj = DenseMatrix::Zero(m, n);
    for (int i = 0; i < m; ++i)
    {
      inj(i, p.dofs[i]) = 1.0;
    }
    const DenseMatrix ki = inj * k * inj.transpose();
    const DenseMatrix w = Eigen::Map<const Vector>(p.weights.data(), m).asDiagonal();
    out += inj.transpose() * w * ki.inverse() * inj;
  }
  return out;
}

// p(X) with p(t) = T_nu((theta - t) / delta) / T_nu(theta / delta), from the three-term
// recurrence of the Chebyshev polynomials.
inline DenseMatrix chebyshev_polynomial(const DenseMatrix &x, int nu, double lambda_max,
                                        const ChebyshevOptions &o = {})
{
  const Eigen::Index n = x.rows();
  const DenseMatrix id = DenseMatrix::Identity(n, n);
  const double lo = o.lower_fraction * lambda_max, hi = o.upper_fraction * lambda_max;
  const double theta = 0.5 * (lo + hi), delta = 0.5 * (hi - lo);
  const DenseMatrix y = (theta * id - x) / delta;
  DenseMatrix t0 = id, t1 = y;
  double s0 = 1.0, s1 = theta / delta;
  for (int j = 1; j < nu; ++j)
  {
    DenseMatrix t2 = 2.0 * y * t1 - t0;
    const double s2 = 2.0 * (theta / delta) * s1 - s0;
    t0 = std::move(t1);
    t1 = std::move(t2);
    s0 = s1;
    s1 = s2;
  }
  return t1 / s1;
}

// Error propagation of nu smoothing steps on a level: p(M^{-1} K).
inline DenseMatrix smoother_error(const MGHierarchy &h, int l)
{
  const MGLevel &lev = h.levels[l];
  const DenseMatrix k = lev.op.to_dense();
  const DenseMatrix minv = dense_asm(k, lev.patches);
  return chebyshev_polynomial(minv * k, lev.sweeps, lev.lambda_max, h.chebyshev);
}

// Zeroes the constrained components.
inline DenseMatrix interior_projection(const MGLevel &lev)
{
  const int n = lev.op.rows();
  DenseMatrix p = DenseMatrix::Identity(n, n);
  for (int i = 0; i < n; ++i)
  {
    if (lev.dirichlet_mask[i])
    {
      p(i, i) = 0.0;
    }
  }
  return p;
}

//
// Nested two-level formula for the V-cycle error propagation on level l:
//   G_l = S^nu (I - P (I - G_{l+1}^n) K_{l+1}^{-1} R K_l) S^nu Pi_I,  G_coarsest = 0,
// with n = n_V at the transition from the p-levels to the h-levels and 1 elsewhere.
// Requires invertible level operators (no floating pressure).
//
inline DenseMatrix vcycle_error(const MGHierarchy &h, int l = 0)
{
  const MGLevel &lev = h.levels[l];
  const int n = lev.op.rows();
  const DenseMatrix id = DenseMatrix::Identity(n, n);
  if (l + 1 == h.num_levels())
  {
    return DenseMatrix::Zero(n, n);
  }
  const MGLevel &next = h.levels[l + 1];
  const DenseMatrix gc = vcycle_error(h, l + 1);
  const int repeats = lev.kind == LevelKind::P && next.kind == LevelKind::H ? h.params.n_v : 1;
  DenseMatrix gpow = DenseMatrix::Identity(gc.rows(), gc.cols());
  for (int i = 0; i < repeats; ++i)
  {
    gpow = gpow * gc;
  }
  const DenseMatrix kc = next.op.to_dense();
  const DenseMatrix coarse_inverse = (DenseMatrix::Identity(gc.rows(), gc.cols()) - gpow) * kc.inverse();
  const DenseMatrix s = smoother_error(h, l);
  const DenseMatrix p = lev.prolongation.to_dense();
  const DenseMatrix r = lev.restriction.to_dense();
  return s * (id - p * coarse_inverse * r * lev.op.to_dense()) * s * interior_projection(lev);
}

// Column j is the result of one V-cycle with b = 0 started from e_j.
inline DenseMatrix vcycle_error_columns(const MGHierarchy &h)
{
  const int n = h.size();
  DenseMatrix g(n, n);
  const Vector zero = Vector::Zero(n);
  for (int j = 0; j < n; ++j)
  {
    Vector x = Vector::Unit(n, j);
    vcycle(h, zero, x);
    g.col(j) = x;
  }
  return g;
}

// Column j is op(e_j).
inline DenseMatrix operator_columns(const LinearOperator &op, int n)
{
  DenseMatrix m(n, n);
  Vector out;
  for (int j = 0; j < n; ++j)
  {
    op(Vector::Unit(n, j), out);
    m.col(j) = out;
  }
  return m;
}

// [I  -Ai B^T; 0 I] diag(Ai, Si) [I 0; -B Ai I]
inline DenseMatrix fbf_matrix(const DenseMatrix &ai, const DenseMatrix &si, const DenseMatrix &b)
{
  const Eigen::Index nu = ai.rows(), np = si.rows(), n = nu + np;
  DenseMatrix upper = DenseMatrix::Identity(n, n), lower = DenseMatrix::Identity(n, n);
  DenseMatrix diag = DenseMatrix::Zero(n, n);
  upper.topRightCorner(nu, np) = -ai * b.transpose();
  lower.bottomLeftCorner(np, nu) = -b * ai;
  diag.topLeftCorner(nu, nu) = ai;
  diag.bottomRightCorner(np, np) = si;
  return upper * diag * lower;
}

}  // namespace oracles

#endif  // STOKESMG_ORACLES_HPP
