// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_SOLVERS_HPP
#define STOKESMG_SOLVERS_HPP

#include <memory>
#include <optional>

#include "stokesmg/assembly.hpp"
#include "stokesmg/chebyshev.hpp"
#include "stokesmg/dense.hpp"
#include "stokesmg/krylov.hpp"
#include "stokesmg/relaxation.hpp"
#include "stokesmg/timing.hpp"

namespace stokesmg
{

enum class CoarseningMode
{
  Direct,
  Gradual
};

// Velocity degrees visited on the finest mesh, from k down to 2.
std::vector<int> p_coarsening_schedule(int k, CoarseningMode mode);

enum class LevelKind
{
  H,  // next coarser level lives on a coarser mesh
  P   // next coarser level has a lower degree on the same mesh
};

struct CycleParams
{
  int n_v = 1;   // h-cycles per visit of the h-part below the p-levels
  int nu_p = 2;  // pre- and post-sweeps on p-levels
  int nu_h = 2;  // pre- and post-sweeps on h-levels
};

// Largest coarse problem handed to the dense LU.
constexpr int max_coarse_dofs = 20000;

struct MGLevel
{
  SparseMatrix op;
  std::vector<char> dirichlet_mask;
  PatchSet patches;
  double lambda_max = 0.0;
  bool lambda_degenerate = false;
  // From the next coarser level onto this one (empty on the coarsest level), and its
  // transpose.
  SparseMatrix prolongation, restriction;
  LevelKind kind = LevelKind::H;
  int sweeps = 2;
  Discretization discretization;
  const Mesh *mesh = nullptr;
  SpacePtr velocity, pressure;  // pressure is null for velocity-only hierarchies
  std::string label() const;
};

// Chebyshev target interval used by multigrid smoothers. The lower end sits above the
// generic default: weighted patch relaxation of Taylor-Hood saddle systems has complex
// eigenvalues that a wide interval damps poorly on fine meshes.
inline constexpr ChebyshevOptions kSmootherInterval{0.5, 1.1, 2.0 / 3.0};

//
// Multigrid hierarchy, finest level first. Monolithic hierarchies act on the full saddle
// system with Vanka patches; velocity-only hierarchies act on the velocity block with
// star patches.
//
struct MGHierarchy
{
  std::vector<MGLevel> levels;
  DenseLU coarse;
  int pinned_dof = -1;  // coarse dof fixed to zero when the pressure is floating
  CycleParams params;
  bool monolithic = true;
  ChebyshevOptions chebyshev = kSmootherInterval;

  int num_levels() const { return static_cast<int>(levels.size()); }
  int size() const { return levels.front().op.rows(); }
};

struct LevelSpec
{
  MeshPtr mesh;
  Discretization discretization;
  LevelKind kind;
};

// Level plans, finest first.
std::vector<LevelSpec> hmg_levels(const ProblemInstance &p);
std::vector<LevelSpec> phmg_levels(const ProblemInstance &p, CoarseningMode mode);
std::vector<LevelSpec> velocity_hmg_levels(const ProblemInstance &p);
std::vector<LevelSpec> velocity_phmg_levels(const ProblemInstance &p, CoarseningMode mode);

struct HierarchyOptions
{
  CycleParams params;
  bool monolithic = true;
  ChebyshevOptions chebyshev = kSmootherInterval;
};

// Builds a hierarchy from a level plan. The finest level reuses fine (assembled on
// levels.front()); coarser operators are rediscretized. Setup kernels are charged to
// timer.
MGHierarchy build_hierarchy(const ProblemInstance &p, const SaddleSystem &fine,
                            const std::vector<LevelSpec> &levels,
                            const HierarchyOptions &options, KernelTimer *timer = nullptr);

MGHierarchy build_hmg(const ProblemInstance &p, const SaddleSystem &fine,
                      const CycleParams &params = {}, KernelTimer *timer = nullptr);
MGHierarchy build_phmg(const ProblemInstance &p, const SaddleSystem &fine, CoarseningMode mode,
                       const CycleParams &params = {}, KernelTimer *timer = nullptr);

// One V-cycle for op x = b starting from x (updated in place).
void vcycle(const MGHierarchy &h, const Vector &b, Vector &x, KernelTimer *timer = nullptr);

// x = V-cycle(b, 0) as a preconditioner.
LinearOperator make_vcycle_operator(const MGHierarchy &h, KernelTimer *timer = nullptr);

// Exact inverse of the pressure mass matrix: per-cell dense LU for discontinuous
// pressures, sparse Cholesky otherwise.
class PressureMassSolver
{
public:
  explicit PressureMassSolver(const FunctionSpace &pressure);
  ~PressureMassSolver();
  PressureMassSolver(PressureMassSolver &&) noexcept;
  PressureMassSolver &operator=(PressureMassSolver &&) noexcept;
  int dim() const { return mass_.rows(); }
  const SparseMatrix &mass() const { return mass_; }
  void solve(const Vector &b, Vector &x) const;

private:
  SparseMatrix mass_;
  std::vector<DenseLU> cell_blocks_;
  struct Sparse;
  std::unique_ptr<Sparse> sparse_;
};

// Direct sparse LU of a square matrix (reference and exact inner solves).
class SparseDirectSolver
{
public:
  explicit SparseDirectSolver(const SparseMatrix &a);
  ~SparseDirectSolver();
  SparseDirectSolver(SparseDirectSolver &&) noexcept;
  void solve(const Vector &b, Vector &x) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct FBFCounts
{
  long velocity_solves = 0, schur_solves = 0, b_applies = 0, bt_applies = 0;
};

//
// Full block factorization preconditioner
//   [I  -A~^{-1} B^T; 0 I] diag(A~^{-1}, S~^{-1}) [I 0; -B A~^{-1} I]
// with A~^{-1} an inner velocity solve and S~^{-1} a pressure solve (the inverse pressure
// mass matrix in build_fbf). Each application calls the inner solve twice.
//
class FBFPreconditioner
{
public:
  FBFPreconditioner(const SaddleSystem &system, LinearOperator velocity_solve,
                    LinearOperator schur_solve);

  int size() const { return nu_ + np_; }
  void apply(const Vector &r, Vector &z, KernelTimer *timer = nullptr) const;
  const FBFCounts &counts() const { return counts_; }
  void reset_counts() const { counts_ = {}; }

private:
  int nu_, np_;
  SparseMatrix b_, bt_;
  LinearOperator velocity_solve_, schur_solve_;
  mutable FBFCounts counts_;
};

FBFPreconditioner build_fbf(const SaddleSystem &system, LinearOperator velocity_solve,
                            KernelTimer *timer = nullptr);
Vector fbf_apply(const FBFPreconditioner &p, const Vector &r, KernelTimer *timer = nullptr);
}  // namespace stokesmg

#endif  // STOKESMG_SOLVERS_HPP
