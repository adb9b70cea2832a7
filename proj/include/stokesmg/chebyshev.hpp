// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_CHEBYSHEV_HPP
#define STOKESMG_CHEBYSHEV_HPP

#include <cstdint>

#include "stokesmg/krylov.hpp"

namespace stokesmg
{

struct LambdaEstimate
{
  double value = 0.0;
  // Set when the operator annihilated the iterate (estimate is 0).
  bool degenerate = false;
};

// Power iteration on M^{-1} K from a fixed-seed random start vector; returns the
// magnitude of the final Rayleigh quotient.
LambdaEstimate estimate_lambda_max(const LinearOperator &apply_mk, int n, int iterations = 10,
                                   std::uint64_t seed = 0x5EED);

struct ChebyshevOptions
{
  // Target interval [lower_fraction, upper_fraction] * lambda_max.
  double lower_fraction = 0.3;
  double upper_fraction = 1.1;
  // Richardson weight used when lambda_max is not positive.
  double fallback_weight = 2.0 / 3.0;
};

//
// nu steps of Chebyshev iteration for K x = b preconditioned by M^{-1}, starting from x.
// The error is multiplied by T_nu((theta - M^{-1}K) / delta) / T_nu(theta / delta) where
// theta and delta are the center and half-width of the target interval. A collapsed
// interval degenerates to Richardson with weight 1 / theta.
//
void chebyshev(const LinearOperator &apply_k, const LinearOperator &apply_minv, const Vector &b,
               Vector &x, int nu, double lambda_max, const ChebyshevOptions &options = {});

}  // namespace stokesmg

#endif  // STOKESMG_CHEBYSHEV_HPP
