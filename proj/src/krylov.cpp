// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/krylov.hpp"

#include <cmath>

namespace stokesmg
{

KrylovReport fgmres(const LinearOperator &apply_k, const LinearOperator &apply_p,
                    const Vector &b_in, Vector &x, const FgmresOptions &opt, KernelTimer *timer)
{
  KernelTimer::Scope scope(timer, "krylov");
  if (opt.restart < 1 || opt.max_iterations < 0)
  {
    throw Error("fgmres: invalid restart or iteration limit");
  }
  const Eigen::Index n = b_in.size();
  if (x.size() != n)
  {
    x = Vector::Zero(n);
  }
  Vector b = b_in;
  if (opt.project)
  {
    opt.project(b);
    opt.project(x);
  }
  KrylovReport rep;
  rep.rhs_norm = b.norm();

  Vector r, kx;
  auto true_residual = [&]() {
    apply_k(x, kx);
    r = b - kx;
    if (opt.project)
    {
      opt.project(r);
    }
    return r.norm();
  };

  double beta = true_residual();
  rep.initial_residual = beta;
  rep.residual_history.push_back(beta);
  const double tol = opt.rtol * rep.rhs_norm;
  if (rep.rhs_norm == 0.0 || beta <= tol)
  {
    rep.converged = true;
    rep.final_residual = beta;
    return rep;
  }

  const int m = opt.restart;
  std::vector<Vector> v(m + 1), z(m);
  DenseMatrix h = DenseMatrix::Zero(m + 1, m);
  Vector cs(m), sn(m), g(m + 1), w;

  while (rep.iterations < opt.max_iterations)
  {
    v[0] = r / beta;
    g.setZero();
    g[0] = beta;
    h.setZero();
    int j = 0;
    for (; j < m && rep.iterations < opt.max_iterations; ++j)
    {
      const auto t0 = KernelTimer::Clock::now();
      apply_p(v[j], z[j]);
      rep.preconditioner_seconds.push_back(seconds_since(t0));
      if (opt.project)
      {
        opt.project(z[j]);
      }
      apply_k(z[j], w);
      // Modified Gram-Schmidt.
      for (int i = 0; i <= j; ++i)
      {
        h(i, j) = w.dot(v[i]);
        w -= h(i, j) * v[i];
      }
      h(j + 1, j) = w.norm();
      const bool breakdown = !(h(j + 1, j) > 0.0);
      if (!breakdown)
      {
        v[j + 1] = w / h(j + 1, j);
      }
      for (int i = 0; i < j; ++i)
      {
        const double t = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
        h(i + 1, j) = -sn[i] * h(i, j) + cs[i] * h(i + 1, j);
        h(i, j) = t;
      }
      const double d = std::hypot(h(j, j), h(j + 1, j));
      cs[j] = (d > 0.0) ? h(j, j) / d : 1.0;
      sn[j] = (d > 0.0) ? h(j + 1, j) / d : 0.0;
      h(j, j) = d;
      h(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      ++rep.iterations;
      const double est = std::abs(g[j + 1]);
      rep.residual_history.push_back(est);
      if (est <= tol || breakdown)
      {
        ++j;
        break;
      }
    }
    // x += Z y with H(0:j, 0:j) y = g(0:j).
    Vector y = h.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
    for (int i = 0; i < j; ++i)
    {
      x += y[i] * z[i];
    }
    beta = true_residual();
    if (beta <= tol)
    {
      rep.converged = true;
      break;
    }
    if (!(beta > 0.0) || !std::isfinite(beta))
    {
      break;
    }
  }
  rep.final_residual = beta;
  return rep;
}

}  // namespace stokesmg
