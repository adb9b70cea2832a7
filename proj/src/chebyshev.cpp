// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/chebyshev.hpp"

#include <cmath>
#include <random>

namespace stokesmg
{

LambdaEstimate estimate_lambda_max(const LinearOperator &apply_mk, int n, int iterations,
                                   std::uint64_t seed)
{
  if (n < 1)
  {
    throw Error("estimate_lambda_max: empty operator");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n), w;
  for (int i = 0; i < n; ++i)
  {
    v[i] = dist(rng);
  }
  v.normalize();
  LambdaEstimate est;
  for (int it = 0; it < std::max(iterations, 1); ++it)
  {
    apply_mk(v, w);
    const double rq = v.dot(w);
    const double wn = w.norm();
    est.value = std::abs(rq);
    if (!(wn > 0.0))
    {
      est.value = 0.0;
      est.degenerate = true;
      return est;
    }
    v = w / wn;
  }
  return est;
}

void chebyshev(const LinearOperator &apply_k, const LinearOperator &apply_minv, const Vector &b,
               Vector &x, int nu, double lambda_max, const ChebyshevOptions &opt)
{
  if (nu < 1)
  {
    throw Error("chebyshev: need at least one step");
  }
  Vector r, z;
  auto preconditioned_residual = [&]() {
    apply_k(x, r);
    r = b - r;
    apply_minv(r, z);
  };
  if (!(lambda_max > 0.0))
  {
    for (int s = 0; s < nu; ++s)
    {
      preconditioned_residual();
      x += opt.fallback_weight * z;
    }
    return;
  }
  const double lo = opt.lower_fraction * lambda_max, hi = opt.upper_fraction * lambda_max;
  const double theta = 0.5 * (hi + lo), delta = 0.5 * (hi - lo);
  if (!(delta > 0.0))
  {
    for (int s = 0; s < nu; ++s)
    {
      preconditioned_residual();
      x += z / theta;
    }
    return;
  }
  const double sigma = theta / delta;
  double rho = 1.0 / sigma;
  preconditioned_residual();
  Vector d = z / theta;
  x += d;
  for (int s = 1; s < nu; ++s)
  {
    preconditioned_residual();
    const double rho_next = 1.0 / (2.0 * sigma - rho);
    d = (rho_next * rho) * d + (2.0 * rho_next / delta) * z;
    x += d;
    rho = rho_next;
  }
}

}  // namespace stokesmg
