// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace stokesmg
{

std::vector<std::pair<double, double>> gauss_legendre(int n)
{
  if (n < 1)
  {
    throw Error("gauss_legendre: need at least one point");
  }
  std::vector<std::pair<double, double>> rule(n);
  for (int i = 0; i < n; ++i)
  {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it)
    {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j)
      {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double pn = (n == 1) ? z : p1;
      double pm = (n == 1) ? 1.0 : p0;
      dp = n * (z * pn - pm) / (z * z - 1.0);
      const double dz = pn / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16)
      {
        break;
      }
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = z;
    for (int j = 2; j <= n; ++j)
    {
      const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    const double pn = (n == 1) ? z : p1, pm = (n == 1) ? 1.0 : p0;
    dp = n * (z * pn - pm) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule[n - 1 - i] = {0.5 * (1.0 + z), 0.5 * w};
  }
  return rule;
}

QuadratureRule quadrature_rule(int degree_exact)
{
  if (degree_exact < 1 || degree_exact > 60)
  {
    throw Error("quadrature_rule: unsupported degree " + std::to_string(degree_exact));
  }
  if (degree_exact == 1)
  {
    return {{1.0 / 3.0, 1.0 / 3.0, 0.5}};
  }
  if (degree_exact == 2)
  {
    const double a = 1.0 / 6.0, b = 2.0 / 3.0, w = 1.0 / 6.0;
    return {{a, a, w}, {b, a, w}, {a, b, w}};
  }
  // Collapsed (Duffy) tensor rule: x = u (1 - s), y = s with Jacobian (1 - s). The
  // integrand has degree <= degree_exact + 1 in s, so n points per direction suffice.
  const int n = (degree_exact + 2 + 1) / 2;
  const auto g = gauss_legendre(n);
  QuadratureRule rule;
  rule.reserve(n * n);
  for (const auto &[s, ws] : g)
  {
    for (const auto &[u, wu] : g)
    {
      rule.push_back({u * (1.0 - s), s, wu * ws * (1.0 - s)});
    }
  }
  return rule;
}

}  // namespace stokesmg
