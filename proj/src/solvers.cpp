// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/solvers.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "stokesmg/transfer.hpp"

namespace stokesmg
{

std::vector<int> p_coarsening_schedule(int k, CoarseningMode mode)
{
  if (k < 2 || k > 10)
  {
    throw Error("p_coarsening_schedule: degree " + std::to_string(k) + " outside [2, 10]");
  }
  if (k == 2)
  {
    return {2};
  }
  if (mode == CoarseningMode::Direct || k <= 5)
  {
    return {k, 2};
  }
  return {k, k <= 7 ? 4 : 5, 2};
}

std::string MGLevel::label() const
{
  std::string s = pressure ? discretization.name() : "P" + std::to_string(discretization.degree);
  if (mesh)
  {
    s += " on " + std::to_string(mesh->num_cells()) + " cells";
  }
  return s;
}

namespace
{

Discretization taylor_hood(int k)
{
  return {Family::TaylorHood, k};
}

bool is_sv(const ProblemInstance &p)
{
  return p.discretization.family == Family::ScottVogelius;
}

// Coarser nested meshes below the finest one, finest first. For Scott-Vogelius the
// finest mesh is the barycentric refinement of meshes.back(), so all nested meshes follow.
std::vector<MeshPtr> meshes_below_fine(const ProblemInstance &p)
{
  std::vector<MeshPtr> out(p.meshes.rbegin(), p.meshes.rend());
  if (!out.empty() && out.front() == p.fine_mesh)
  {
    out.erase(out.begin());
  }
  return out;
}

void append_h_levels(std::vector<LevelSpec> &levels, const ProblemInstance &p, int degree)
{
  for (const auto &m : meshes_below_fine(p))
  {
    levels.push_back({m, taylor_hood(degree), LevelKind::H});
  }
}

}  // namespace

std::vector<LevelSpec> hmg_levels(const ProblemInstance &p)
{
  if (is_sv(p))
  {
    throw Error("hMG: Scott-Vogelius pairs have no nested monolithic hierarchy");
  }
  std::vector<LevelSpec> levels{{p.fine_mesh, p.discretization, LevelKind::H}};
  append_h_levels(levels, p, p.discretization.degree);
  return levels;
}

std::vector<LevelSpec> phmg_levels(const ProblemInstance &p, CoarseningMode mode)
{
  const auto schedule = p_coarsening_schedule(p.discretization.degree, mode);
  std::vector<LevelSpec> levels;
  for (std::size_t i = 0; i < schedule.size(); ++i)
  {
    const Discretization d = i == 0 ? p.discretization : taylor_hood(schedule[i]);
    levels.push_back({p.fine_mesh, d, LevelKind::P});
  }
  if (is_sv(p) && schedule.back() == p.discretization.degree)
  {
    // P2/P1disc still needs the step down to the continuous-pressure pair.
    levels.push_back({p.fine_mesh, taylor_hood(2), LevelKind::P});
  }
  levels.back().kind = LevelKind::H;
  append_h_levels(levels, p, 2);
  return levels;
}

std::vector<LevelSpec> velocity_hmg_levels(const ProblemInstance &p)
{
  const int k = p.discretization.degree;
  std::vector<LevelSpec> levels{{p.fine_mesh, taylor_hood(k), LevelKind::H}};
  append_h_levels(levels, p, k);
  return levels;
}

std::vector<LevelSpec> velocity_phmg_levels(const ProblemInstance &p, CoarseningMode mode)
{
  const auto schedule = p_coarsening_schedule(p.discretization.degree, mode);
  std::vector<LevelSpec> levels;
  for (int d : schedule)
  {
    levels.push_back({p.fine_mesh, taylor_hood(d), LevelKind::P});
  }
  levels.back().kind = LevelKind::H;
  append_h_levels(levels, p, 2);
  return levels;
}

MGHierarchy build_hierarchy(const ProblemInstance &p, const SaddleSystem &fine,
                            const std::vector<LevelSpec> &specs,
                            const HierarchyOptions &options, KernelTimer *timer)
{
  if (specs.empty())
  {
    throw Error("build_hierarchy: empty level plan");
  }
  MGHierarchy h;
  h.params = options.params;
  h.monolithic = options.monolithic;
  h.chebyshev = options.chebyshev;
  const int nlev = static_cast<int>(specs.size());
  h.levels.resize(nlev);
  for (int l = 0; l < nlev; ++l)
  {
    const LevelSpec &spec = specs[l];
    MGLevel &lev = h.levels[l];
    std::optional<SaddleSystem> coarse_sys;
    if (l > 0)
    {
      KernelTimer::Scope scope(timer, "setup:assembly");
      coarse_sys = assemble_stokes(p, spec.mesh, spec.discretization);
    }
    const SaddleSystem &sys = l == 0 ? fine : *coarse_sys;
    lev.discretization = spec.discretization;
    lev.mesh = spec.mesh.get();
    lev.kind = spec.kind;
    lev.sweeps = spec.kind == LevelKind::P ? h.params.nu_p : h.params.nu_h;
    lev.velocity = sys.velocity;
    if (h.monolithic)
    {
      lev.pressure = sys.pressure;
      lev.op = sys.k;
      lev.dirichlet_mask = sys.dirichlet_mask;
    }
    else
    {
      lev.op = sys.a;
      lev.dirichlet_mask.assign(sys.dirichlet_mask.begin(),
                                sys.dirichlet_mask.begin() + sys.velocity_dofs());
    }
    if (l + 1 < nlev)
    {
      {
        KernelTimer::Scope scope(timer, "setup:patches");
        lev.patches = h.monolithic
                          ? build_vanka_star_patches(*lev.velocity, *lev.pressure,
                                                     lev.dirichlet_mask)
                          : build_star_patches(*lev.velocity, lev.dirichlet_mask);
        lev.patches.factor(lev.op);
      }
      KernelTimer::Scope scope(timer, "setup:lambda");
      const auto est = estimate_lambda_max(
          [&](const Vector &in, Vector &out) {
            Vector kx = lev.op * in;
            lev.patches.apply(kx, out);
          },
          lev.op.rows());
      lev.lambda_max = est.value;
      lev.lambda_degenerate = est.degenerate;
    }
  }

  for (int l = 0; l + 1 < nlev; ++l)
  {
    KernelTimer::Scope scope(timer, "setup:transfer");
    MGLevel &f = h.levels[l];
    const MGLevel &c = h.levels[l + 1];
    const bool same_mesh = f.mesh == c.mesh;
    auto transfer = [&](const FunctionSpace &lo, const FunctionSpace &hi) {
      return same_mesh ? build_p_prolongation(lo, hi) : build_h_prolongation(lo, hi);
    };
    SparseMatrix pv = transfer(*c.velocity, *f.velocity);
    f.prolongation = h.monolithic ? build_monolithic_transfer(pv, transfer(*c.pressure, *f.pressure))
                                  : std::move(pv);
    restrict_to_homogeneous(f.prolongation, f.dirichlet_mask, c.dirichlet_mask);
    f.restriction = f.prolongation.transpose();
  }

  KernelTimer::Scope scope(timer, "setup:coarse_lu");
  const MGLevel &coarsest = h.levels.back();
  const int nc = coarsest.op.rows();
  if (nc > max_coarse_dofs)
  {
    throw Error("build_hierarchy: coarse problem has " + std::to_string(nc) +
                " dofs, above the dense LU limit of " + std::to_string(max_coarse_dofs));
  }
  DenseMatrix dense = coarsest.op.to_dense();
  if (h.monolithic && p.enclosed_flow)
  {
    h.pinned_dof = coarsest.velocity->num_dofs();
    dense.row(h.pinned_dof).setZero();
    dense.col(h.pinned_dof).setZero();
    dense(h.pinned_dof, h.pinned_dof) = 1.0;
  }
  h.coarse = DenseLU(dense);
  return h;
}

MGHierarchy build_hmg(const ProblemInstance &p, const SaddleSystem &fine,
                      const CycleParams &params, KernelTimer *timer)
{
  return build_hierarchy(p, fine, hmg_levels(p), {params, true}, timer);
}

MGHierarchy build_phmg(const ProblemInstance &p, const SaddleSystem &fine, CoarseningMode mode,
                       const CycleParams &params, KernelTimer *timer)
{
  return build_hierarchy(p, fine, phmg_levels(p, mode), {params, true}, timer);
}

namespace
{

void enforce_constraints(const MGLevel &lev, const Vector &b, Vector &x)
{
  for (std::size_t i = 0; i < lev.dirichlet_mask.size(); ++i)
  {
    if (lev.dirichlet_mask[i])
    {
      x[i] = b[i];
    }
  }
}

void smooth(const MGHierarchy &h, const MGLevel &lev, const Vector &b, Vector &x)
{
  chebyshev([&](const Vector &in, Vector &out) { lev.op.multiply(in, out); },
            [&](const Vector &in, Vector &out) { lev.patches.apply(in, out); }, b, x,
            lev.sweeps, lev.lambda_max, h.chebyshev);
}

void cycle(const MGHierarchy &h, int l, const Vector &b, Vector &x, KernelTimer *timer)
{
  const MGLevel &lev = h.levels[l];
  if (l + 1 == h.num_levels())
  {
    KernelTimer::Scope scope(timer, "coarse_solve");
    x = b;
    if (h.pinned_dof >= 0)
    {
      x[h.pinned_dof] = 0.0;
    }
    h.coarse.solve_in_place(x);
    return;
  }
  const std::string rlx = "rlx(l=" + std::to_string(l) + ")";
  {
    KernelTimer::Scope scope(timer, rlx);
    enforce_constraints(lev, b, x);
    smooth(h, lev, b, x);
  }
  Vector r;
  {
    KernelTimer::Scope scope(timer, "residual");
    lev.op.multiply(x, r);
    r = b - r;
  }
  Vector rc;
  {
    KernelTimer::Scope scope(timer, "transfer");
    lev.restriction.multiply(r, rc);
  }
  Vector ec = Vector::Zero(rc.size());
  const MGLevel &next = h.levels[l + 1];
  const bool enters_h_part = lev.kind == LevelKind::P && next.kind == LevelKind::H;
  const int repeats = enters_h_part ? std::max(h.params.n_v, 1) : 1;
  for (int i = 0; i < repeats; ++i)
  {
    cycle(h, l + 1, rc, ec, timer);
  }
  {
    KernelTimer::Scope scope(timer, "transfer");
    lev.prolongation.multiply_add(ec, x);
  }
  KernelTimer::Scope scope(timer, rlx);
  smooth(h, lev, b, x);
}

}  // namespace

void vcycle(const MGHierarchy &h, const Vector &b, Vector &x, KernelTimer *timer)
{
  if (b.size() != h.size() || x.size() != h.size())
  {
    throw Error("vcycle: vector size does not match the finest operator");
  }
  cycle(h, 0, b, x, timer);
}

LinearOperator make_vcycle_operator(const MGHierarchy &h, KernelTimer *timer)
{
  return [&h, timer](const Vector &in, Vector &out) {
    out.setZero(in.size());
    vcycle(h, in, out, timer);
  };
}

namespace
{

using EigenSparse = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

EigenSparse to_eigen(const SparseMatrix &a)
{
  std::vector<Eigen::Triplet<double, int>> t;
  t.reserve(static_cast<std::size_t>(a.nnz()));
  for (int i = 0; i < a.rows(); ++i)
  {
    for (Index p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p)
    {
      t.emplace_back(i, a.col_idx()[p], a.values()[p]);
    }
  }
  EigenSparse m(a.rows(), a.cols());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

struct PressureMassSolver::Sparse
{
  Eigen::SimplicialLDLT<EigenSparse> ldlt;
};

PressureMassSolver::PressureMassSolver(const FunctionSpace &pressure)
  : mass_(assemble_pressure_mass(pressure))
{
  if (!pressure.continuous())
  {
    const int nloc = pressure.nodes_per_cell();
    for (int c = 0; c < pressure.mesh().num_cells(); ++c)
    {
      const auto nodes = pressure.cell_nodes(c);
      DenseMatrix block(nloc, nloc);
      for (int i = 0; i < nloc; ++i)
      {
        for (int j = 0; j < nloc; ++j)
        {
          block(i, j) = mass_.coeff(nodes[i], nodes[j]);
        }
      }
      cell_blocks_.emplace_back(block);
    }
    return;
  }
  sparse_ = std::make_unique<Sparse>();
  sparse_->ldlt.compute(to_eigen(mass_));
  if (sparse_->ldlt.info() != Eigen::Success)
  {
    throw SingularMatrixError("pressure mass matrix factorization failed");
  }
}

PressureMassSolver::~PressureMassSolver() = default;
PressureMassSolver::PressureMassSolver(PressureMassSolver &&) noexcept = default;
PressureMassSolver &PressureMassSolver::operator=(PressureMassSolver &&) noexcept = default;

void PressureMassSolver::solve(const Vector &b, Vector &x) const
{
  if (sparse_)
  {
    x = sparse_->ldlt.solve(b);
    return;
  }
  // Discontinuous nodes are numbered cell by cell, so blocks are contiguous.
  x = b;
  Eigen::Index offset = 0;
  for (const auto &lu : cell_blocks_)
  {
    lu.solve_in_place(x.segment(offset, lu.dim()));
    offset += lu.dim();
  }
}

struct SparseDirectSolver::Impl
{
  Eigen::SparseLU<EigenSparse, Eigen::COLAMDOrdering<int>> lu;
};

SparseDirectSolver::SparseDirectSolver(const SparseMatrix &a) : impl_(std::make_unique<Impl>())
{
  EigenSparse m = to_eigen(a);
  m.makeCompressed();
  impl_->lu.compute(m);
  if (impl_->lu.info() != Eigen::Success)
  {
    throw SingularMatrixError("sparse LU failed: " + impl_->lu.lastErrorMessage());
  }
}

SparseDirectSolver::~SparseDirectSolver() = default;
SparseDirectSolver::SparseDirectSolver(SparseDirectSolver &&) noexcept = default;

void SparseDirectSolver::solve(const Vector &b, Vector &x) const
{
  x = impl_->lu.solve(b);
}

FBFPreconditioner::FBFPreconditioner(const SaddleSystem &system, LinearOperator velocity_solve,
                                     LinearOperator schur_solve)
  : nu_(system.velocity_dofs()),
    np_(system.pressure_dofs()),
    b_(system.b),
    bt_(system.b.transpose()),
    velocity_solve_(std::move(velocity_solve)),
    schur_solve_(std::move(schur_solve))
{
  if (b_.cols() != nu_ || system.a.rows() != nu_)
  {
    throw Error("FBFPreconditioner: block dimensions are inconsistent");
  }
}

void FBFPreconditioner::apply(const Vector &r, Vector &z, KernelTimer *timer) const
{
  if (r.size() != size())
  {
    throw Error("FBFPreconditioner::apply: vector size mismatch");
  }
  Vector y, t, zu, zp, s;
  velocity_solve_(r.head(nu_), y);
  {
    KernelTimer::Scope scope(timer, "block_ops");
    b_.multiply(y, t);
    t = r.tail(np_) - t;
  }
  {
    KernelTimer::Scope scope(timer, "schur");
    schur_solve_(t, zp);
  }
  {
    KernelTimer::Scope scope(timer, "block_ops");
    bt_.multiply(zp, s);
    s = r.head(nu_) - s;
  }
  velocity_solve_(s, zu);
  z.resize(size());
  z << zu, zp;
  counts_.velocity_solves += 2;
  counts_.schur_solves += 1;
  counts_.b_applies += 1;
  counts_.bt_applies += 1;
}

FBFPreconditioner build_fbf(const SaddleSystem &system, LinearOperator velocity_solve,
                            KernelTimer *timer)
{
  KernelTimer::Scope scope(timer, "setup:schur");
  auto mass = std::make_shared<const PressureMassSolver>(*system.pressure);
  return FBFPreconditioner(system, std::move(velocity_solve),
                           [mass](const Vector &in, Vector &out) { mass->solve(in, out); });
}

Vector fbf_apply(const FBFPreconditioner &p, const Vector &r, KernelTimer *timer)
{
  Vector z;
  p.apply(r, z, timer);
  return z;
}

}  // namespace stokesmg
