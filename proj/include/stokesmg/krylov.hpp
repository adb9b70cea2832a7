// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_KRYLOV_HPP
#define STOKESMG_KRYLOV_HPP

#include <functional>
#include <vector>

#include "stokesmg/common.hpp"
#include "stokesmg/timing.hpp"

namespace stokesmg
{

// out = Op(in). out is resized by the callee.
using LinearOperator = std::function<void(const Vector &in, Vector &out)>;
// In-place projection (e.g. removal of a nullspace component).
using Projection = std::function<void(Vector &)>;

struct FgmresOptions
{
  double rtol = 1e-10;
  int restart = 30;
  int max_iterations = 1000;
  // Applied to the right-hand side, to every residual and to every preconditioned vector.
  Projection project;
};

struct KrylovReport
{
  int iterations = 0;
  bool converged = false;
  // Residual norms: the initial residual first, then one entry per iteration (least
  // squares estimate inside a cycle, true residual at each restart boundary).
  std::vector<double> residual_history;
  double initial_residual = 0.0;
  double final_residual = 0.0;  // true residual at exit
  double rhs_norm = 0.0;
  std::vector<double> preconditioner_seconds;
};

//
// Right-preconditioned restarted flexible GMRES. The preconditioner may change between
// iterations. Convergence: ||b - K x|| <= rtol ||b||, checked on the true residual.
// Kernel time is charged to "krylov" except for what the operators charge themselves.
//
KrylovReport fgmres(const LinearOperator &apply_k, const LinearOperator &apply_p,
                    const Vector &b, Vector &x, const FgmresOptions &options = {},
                    KernelTimer *timer = nullptr);

}  // namespace stokesmg

#endif  // STOKESMG_KRYLOV_HPP
