// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_QUADRATURE_HPP
#define STOKESMG_QUADRATURE_HPP

#include <vector>

#include "stokesmg/common.hpp"

namespace stokesmg
{

// Point on the reference triangle (0,0), (1,0), (0,1) with its weight.
struct QuadraturePoint
{
  double x, y, w;

  // Barycentric coordinates (lambda0, lambda1, lambda2) = (1 - x - y, x, y).
  std::array<double, 3> barycentric() const { return {1.0 - x - y, x, y}; }
};

using QuadratureRule = std::vector<QuadraturePoint>;

// Rule on the reference triangle that integrates all polynomials of total degree
// <= degree_exact exactly. Weights sum to 1/2.
QuadratureRule quadrature_rule(int degree_exact);

// n-point Gauss-Legendre rule on [0, 1] as (point, weight) pairs.
std::vector<std::pair<double, double>> gauss_legendre(int n);

}  // namespace stokesmg

#endif  // STOKESMG_QUADRATURE_HPP
