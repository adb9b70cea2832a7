// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_COMMON_HPP
#define STOKESMG_COMMON_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace stokesmg
{

using Index = std::int64_t;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using Point = std::array<double, 2>;

// Base class for all errors raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Raised when a factorization meets a (numerically) zero pivot.
class SingularMatrixError : public Error
{
public:
  using Error::Error;
};

}  // namespace stokesmg

#endif  // STOKESMG_COMMON_HPP
