// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/reference_element.hpp"

#include <string>

namespace stokesmg
{

namespace
{

// R_m(z) = prod_{s<m} (k z - s) / (s + 1) and its derivative with respect to z.
void shape_factor(int k, int m, double z, double &val, double &der)
{
  val = 1.0;
  der = 0.0;
  for (int s = 0; s < m; ++s)
  {
    const double f = (k * z - s) / (s + 1.0);
    const double df = k / (s + 1.0);
    der = der * f + val * df;
    val *= f;
  }
}

}  // namespace

ReferenceElement::ReferenceElement(int degree) : k_(degree)
{
  if (degree < 0 || degree > 10)
  {
    throw Error("reference element degree must lie in [0, 10], got " + std::to_string(degree));
  }
  if (k_ == 0)
  {
    nodes_.push_back({0, 0, 0});
    entities_.push_back({EntityKind::Cell, 0});
    return;
  }
  for (int v = 0; v < 3; ++v)
  {
    std::array<int, 3> idx{0, 0, 0};
    idx[v] = k_;
    nodes_.push_back(idx);
    entities_.push_back({EntityKind::Vertex, v});
  }
  for (int e = 0; e < 3; ++e)
  {
    const int a = (e + 1) % 3, b = (e + 2) % 3;
    for (int t = 1; t < k_; ++t)
    {
      std::array<int, 3> idx{0, 0, 0};
      idx[a] = k_ - t;
      idx[b] = t;
      nodes_.push_back(idx);
      entities_.push_back({EntityKind::Edge, e});
    }
  }
  for (int i0 = k_ - 2; i0 >= 1; --i0)
  {
    for (int i1 = k_ - 1 - i0; i1 >= 1; --i1)
    {
      const int i2 = k_ - i0 - i1;
      nodes_.push_back({i0, i1, i2});
      entities_.push_back({EntityKind::Cell, 0});
    }
  }
}

int ReferenceElement::interior_nodes() const
{
  if (k_ == 0)
  {
    return 1;
  }
  return (k_ - 1) * (k_ - 2) / 2;
}

Point ReferenceElement::node_point(int i) const
{
  if (k_ == 0)
  {
    return {1.0 / 3.0, 1.0 / 3.0};
  }
  return {static_cast<double>(nodes_[i][1]) / k_, static_cast<double>(nodes_[i][2]) / k_};
}

void ReferenceElement::eval(double x, double y, double *out) const
{
  if (k_ == 0)
  {
    out[0] = 1.0;
    return;
  }
  const double lam[3] = {1.0 - x - y, x, y};
  double d;
  for (int n = 0; n < num_nodes(); ++n)
  {
    double v = 1.0, f;
    for (int j = 0; j < 3; ++j)
    {
      shape_factor(k_, nodes_[n][j], lam[j], f, d);
      v *= f;
    }
    out[n] = v;
  }
}

void ReferenceElement::eval_grad(double x, double y, double *out) const
{
  if (k_ == 0)
  {
    out[0] = out[1] = 0.0;
    return;
  }
  const double lam[3] = {1.0 - x - y, x, y};
  // d lambda_j / d(x, y)
  static constexpr double dlam[3][2] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};
  for (int n = 0; n < num_nodes(); ++n)
  {
    double f[3], df[3];
    for (int j = 0; j < 3; ++j)
    {
      shape_factor(k_, nodes_[n][j], lam[j], f[j], df[j]);
    }
    const double g0 = df[0] * f[1] * f[2], g1 = f[0] * df[1] * f[2], g2 = f[0] * f[1] * df[2];
    out[2 * n] = g0 * dlam[0][0] + g1 * dlam[1][0] + g2 * dlam[2][0];
    out[2 * n + 1] = g0 * dlam[0][1] + g1 * dlam[1][1] + g2 * dlam[2][1];
  }
}

std::vector<double> ReferenceElement::values(double x, double y) const
{
  std::vector<double> v(num_nodes());
  eval(x, y, v.data());
  return v;
}

Tabulation::Tabulation(const ReferenceElement &el, const QuadratureRule &rule)
  : num_points(static_cast<int>(rule.size())), num_basis(el.num_nodes()),
    values(rule.size() * el.num_nodes()), grads(2 * rule.size() * el.num_nodes())
{
  for (int q = 0; q < num_points; ++q)
  {
    el.eval(rule[q].x, rule[q].y, &values[q * num_basis]);
    el.eval_grad(rule[q].x, rule[q].y, &grads[2 * q * num_basis]);
  }
}

}  // namespace stokesmg
