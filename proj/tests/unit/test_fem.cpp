// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "stokesmg/assembly.hpp"
#include "stokesmg/quadrature.hpp"
#include "stokesmg/solvers.hpp"
#include "test_util.hpp"

using namespace stokesmg;

namespace
{

double factorial(int n)
{
  return std::tgamma(n + 1.0);
}

// Exact integral of x^a y^b over the reference triangle.
double monomial_integral(int a, int b)
{
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

}  // namespace

TEST(Quadrature, ExactOnMonomials)
{
  for (int deg : {1, 2, 3, 5, 8, 13, 20})
  {
    const auto rule = quadrature_rule(deg);
    double wsum = 0.0;
    for (const auto &q : rule)
    {
      wsum += q.w;
      EXPECT_GE(q.x, 0.0);
      EXPECT_GE(q.y, 0.0);
      EXPECT_LE(q.x + q.y, 1.0 + 1e-15);
    }
    EXPECT_NEAR(wsum, 0.5, 1e-15);
    for (int a = 0; a <= deg; ++a)
    {
      for (int b = 0; a + b <= deg; ++b)
      {
        double s = 0.0;
        for (const auto &q : rule)
        {
          s += q.w * std::pow(q.x, a) * std::pow(q.y, b);
        }
        EXPECT_NEAR(s, monomial_integral(a, b), 1e-14) << "deg " << deg << " x^" << a << " y^" << b;
      }
    }
  }
}

TEST(Quadrature, GaussLegendre)
{
  for (int n = 1; n <= 8; ++n)
  {
    const auto r = gauss_legendre(n);
    for (int p = 0; p < 2 * n; ++p)
    {
      double s = 0.0;
      for (const auto &[x, w] : r)
      {
        s += w * std::pow(x, p);
      }
      EXPECT_NEAR(s, 1.0 / (p + 1), 1e-14);
    }
  }
  EXPECT_THROW(quadrature_rule(0), Error);
}

TEST(ReferenceElement, NodalBasis)
{
  for (int k = 0; k <= 10; ++k)
  {
    const ReferenceElement el(k);
    ASSERT_EQ(el.num_nodes(), (k + 1) * (k + 2) / 2);
    std::vector<double> phi(el.num_nodes()), grad(2 * el.num_nodes());
    for (int i = 0; i < el.num_nodes(); ++i)
    {
      const Point x = el.node_point(i);
      el.eval(x[0], x[1], phi.data());
      for (int j = 0; j < el.num_nodes(); ++j)
      {
        EXPECT_NEAR(phi[j], i == j ? 1.0 : 0.0, 1e-11) << "k=" << k;
      }
    }
    el.eval(0.21, 0.37, phi.data());
    el.eval_grad(0.21, 0.37, grad.data());
    double s = 0.0, gx = 0.0, gy = 0.0;
    for (int j = 0; j < el.num_nodes(); ++j)
    {
      s += phi[j];
      gx += grad[2 * j];
      gy += grad[2 * j + 1];
    }
    EXPECT_NEAR(s, 1.0, 1e-11);
    EXPECT_NEAR(gx, 0.0, 1e-9);
    EXPECT_NEAR(gy, 0.0, 1e-9);
  }
}

TEST(ReferenceElement, GradientsMatchFiniteDifferences)
{
  for (int k : {1, 2, 4, 7})
  {
    const ReferenceElement el(k);
    const int n = el.num_nodes();
    std::vector<double> g(2 * n), p(n), m(n);
    const double x = 0.31, y = 0.22, h = 1e-6;
    el.eval_grad(x, y, g.data());
    el.eval(x + h, y, p.data());
    el.eval(x - h, y, m.data());
    for (int i = 0; i < n; ++i)
    {
      EXPECT_NEAR(g[2 * i], (p[i] - m[i]) / (2 * h), 1e-6 * (1 + std::abs(g[2 * i])));
    }
    el.eval(x, y + h, p.data());
    el.eval(x, y - h, m.data());
    for (int i = 0; i < n; ++i)
    {
      EXPECT_NEAR(g[2 * i + 1], (p[i] - m[i]) / (2 * h), 1e-6 * (1 + std::abs(g[2 * i + 1])));
    }
  }
}

TEST(ReferenceElement, EntityCounts)
{
  const ReferenceElement el(4);
  int nv = 0, ne = 0, nc = 0;
  for (const auto &e : el.node_entities())
  {
    nv += e.kind == EntityKind::Vertex;
    ne += e.kind == EntityKind::Edge;
    nc += e.kind == EntityKind::Cell;
  }
  EXPECT_EQ(nv, 3);
  EXPECT_EQ(ne, 9);
  EXPECT_EQ(nc, 3);
  EXPECT_EQ(el.interior_nodes(), 3);
}

TEST(FunctionSpace, DofCounts)
{
  const auto m = refine_uniform(generate_structured_grid(2));
  for (int k = 1; k <= 6; ++k)
  {
    const FunctionSpace cg(m, k, Continuity::Continuous, 2);
    const int expected = m->num_vertices() + m->num_edges() * (k - 1) +
                         m->num_cells() * (k - 1) * (k - 2) / 2;
    EXPECT_EQ(cg.num_nodes(), expected);
    EXPECT_EQ(cg.num_dofs(), 2 * expected);
    const FunctionSpace dg(m, k - 1, Continuity::Discontinuous);
    EXPECT_EQ(dg.num_nodes(), m->num_cells() * k * (k + 1) / 2);
  }
  EXPECT_THROW(FunctionSpace(m, 0, Continuity::Continuous), Error);
}

TEST(FunctionSpace, SharedNodesAgreeAcrossCells)
{
  const auto m = refine_barycentric(refine_uniform(generate_structured_grid(2)));
  const FunctionSpace v(m, 5, Continuity::Continuous);
  for (int c = 0; c < m->num_cells(); ++c)
  {
    const CellGeometry g(*m, c);
    const auto nodes = v.cell_nodes(c);
    for (int i = 0; i < v.nodes_per_cell(); ++i)
    {
      const Point r = v.element().node_point(i);
      const Point x = g.map(r[0], r[1]);
      EXPECT_NEAR(x[0], v.node_point(nodes[i])[0], 1e-13);
      EXPECT_NEAR(x[1], v.node_point(nodes[i])[1], 1e-13);
    }
  }
}

TEST(FunctionSpace, InterpolationReproducesPolynomials)
{
  const auto m = refine_uniform(generate_structured_grid(2, {-1, -1, 1, 1}));
  for (int k : {1, 2, 3, 5})
  {
    const FunctionSpace v(m, k, Continuity::Continuous);
    auto f = [k](double x, double y, int) { return std::pow(x, k) - 2 * std::pow(y, k - 1) * x + 0.5; };
    const Vector u = v.interpolate(f);
    std::vector<double> phi(v.nodes_per_cell());
    for (int c = 0; c < m->num_cells(); c += 3)
    {
      const CellGeometry g(*m, c);
      v.element().eval(0.2, 0.3, phi.data());
      double s = 0.0;
      const auto nodes = v.cell_nodes(c);
      for (int i = 0; i < v.nodes_per_cell(); ++i)
      {
        s += u[nodes[i]] * phi[i];
      }
      const Point x = g.map(0.2, 0.3);
      EXPECT_NEAR(s, f(x[0], x[1], 0), 1e-12);
    }
  }
}

TEST(FunctionSpace, BoundaryNodes)
{
  const auto m = generate_structured_grid(2);
  const FunctionSpace v(m, 3, Continuity::Continuous);
  const int markers[] = {1, 2, 3, 4};
  auto nodes = v.boundary_nodes(markers);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  // perimeter of a 2 x 2 grid at degree 3: 8 edges * 3 nodes
  EXPECT_EQ(nodes.size(), 24u);
  for (int n : nodes)
  {
    const Point &p = v.node_point(n);
    const bool on = p[0] == 0.0 || p[0] == 1.0 || p[1] == 0.0 || p[1] == 1.0 ||
                    std::abs(p[0]) < 1e-14 || std::abs(p[0] - 1) < 1e-14 ||
                    std::abs(p[1]) < 1e-14 || std::abs(p[1] - 1) < 1e-14;
    EXPECT_TRUE(on);
  }
}

TEST(Assembly, LaplacianAndMassOnPolynomials)
{
  const auto m = refine_uniform(generate_structured_grid(2));
  const FunctionSpace q(m, 3, Continuity::Continuous);
  const SparseMatrix l = assemble_laplacian(q);
  const SparseMatrix mass = assemble_pressure_mass(q);
  const Vector u = q.interpolate([](double x, double, int) { return x * x; });
  const Vector v = q.interpolate([](double x, double y, int) { return x * y; });
  const Vector one = Vector::Ones(q.num_nodes());
  // int grad(x^2) . grad(xy) = int 2xy = 1/2
  EXPECT_NEAR(u.dot(l * v), 0.5, 1e-13);
  EXPECT_NEAR((l * one).norm(), 0.0, 1e-12);
  EXPECT_NEAR(one.dot(mass * one), 1.0, 1e-14);
  // int x^2 * xy = 1/8
  EXPECT_NEAR(u.dot(mass * v), 0.125, 1e-14);
  const DenseMatrix d = l.to_dense();
  EXPECT_NEAR((d - d.transpose()).cwiseAbs().maxCoeff(), 0.0, 1e-13);
}

TEST(Assembly, DivergenceBlockOnPolynomials)
{
  for (Family fam : {Family::TaylorHood, Family::ScottVogelius})
  {
    auto p = testing_util::channel_problem(2, 1, 3, fam);
    const SaddleSystem sys = assemble_stokes(p, {false});
    const Vector u = sys.velocity->interpolate([](double x, double y, int c) {
      return c == 0 ? x * x * y : y * y * y;
    });
    const Vector q = sys.pressure->interpolate([](double x, double y, int) { return x + y * y; });
    // -int (x + y^2) (2xy + 3y^2) over the unit square
    const double exact = -(1.0 / 3 + 1.0 / 2 + 1.0 / 4 + 3.0 / 5);
    EXPECT_NEAR(q.dot(sys.b * u), exact, 1e-13);
  }
}

TEST(Assembly, SaddleStructure)
{
  auto p = testing_util::channel_problem(2, 1, 3, Family::TaylorHood);
  const SaddleSystem sys = assemble_stokes(p);
  const int nu = sys.velocity_dofs(), np = sys.pressure_dofs();
  ASSERT_EQ(sys.size(), nu + np);
  EXPECT_TRUE(sys.k.is_sorted_unique());
  const DenseMatrix k = sys.k.to_dense();
  EXPECT_NEAR((k - k.transpose()).cwiseAbs().maxCoeff(), 0.0, 1e-13);
  EXPECT_EQ(k.bottomRightCorner(np, np).cwiseAbs().maxCoeff(), 0.0);
  // structural pattern is symmetric too
  for (int i = 0; i < sys.size(); ++i)
  {
    for (Index q = sys.k.row_ptr()[i]; q < sys.k.row_ptr()[i + 1]; ++q)
    {
      EXPECT_NE(const_cast<SparseMatrix &>(sys.k).find(sys.k.col_idx()[q], i), nullptr);
    }
  }
  for (std::size_t j = 0; j < sys.dirichlet_dofs.size(); ++j)
  {
    const int d = sys.dirichlet_dofs[j];
    EXPECT_EQ(k.row(d).cwiseAbs().sum(), 1.0);
    EXPECT_EQ(k(d, d), 1.0);
    EXPECT_EQ(sys.rhs[d], sys.dirichlet_values[j]);
  }
}

TEST(Assembly, ReproducesPolynomialSolution)
{
  // u = (y^2, x^2), p = x - 1/2 solve -lap u + grad p = (-1, -2); on the outflow side x = 1
  // the natural data is du/dn - p n = (-1/2, 2).
  for (int k : {2, 3, 4})
  {
    for (Family fam : {Family::TaylorHood, Family::ScottVogelius})
    {
      auto p = testing_util::channel_problem(2, 1, k, fam);
      auto exact_u = [](double x, double y) { return Point{y * y, x * x}; };
      p.boundary[1].value = exact_u;
      p.boundary[3].value = exact_u;
      p.boundary[4].value = exact_u;
      p.boundary[2].value = [](double, double) { return Point{-0.5, 2.0}; };
      p.forcing = [](double, double) { return Point{-1.0, -2.0}; };
      const SaddleSystem sys = assemble_stokes(p);
      const SparseDirectSolver lu(sys.k);
      Vector x;
      lu.solve(sys.rhs, x);
      const Vector u = x.head(sys.velocity_dofs());
      const Vector q = x.tail(sys.pressure_dofs());
      const Vector ui = sys.velocity->interpolate([&](double a, double b, int c) { return exact_u(a, b)[c]; });
      const Vector qi = sys.pressure->interpolate([](double a, double, int) { return a - 0.5; });
      EXPECT_LT((u - ui).cwiseAbs().maxCoeff(), 1e-9) << "k=" << k;
      EXPECT_LT((q - qi).cwiseAbs().maxCoeff(), 1e-8) << "k=" << k;
      const ExactSolution ex{exact_u, [](double a, double) { return a - 0.5; }};
      const auto err = compute_errors(u, q, *sys.velocity, *sys.pressure, ex, false);
      EXPECT_LT(err.velocity_l2, 1e-9);
      EXPECT_LT(err.pressure_l2, 1e-8);
      EXPECT_LT(compute_max_divergence(u, *sys.velocity), 1e-9);
    }
  }
}

TEST(Assembly, DivergenceNormOfKnownField)
{
  const auto m = refine_uniform(generate_structured_grid(2));
  const auto v = build_space(m, 2, Continuity::Continuous, 2);
  // div (x^2, xy) = 3x, L2 norm over the unit square = sqrt(3)
  const Vector u = v->interpolate([](double x, double y, int c) { return c == 0 ? x * x : x * y; });
  EXPECT_NEAR(compute_divergence_norm(u, *v), std::sqrt(3.0), 1e-12);
  const double mx = compute_max_divergence(u, *v);
  EXPECT_LE(mx, 3.0 + 1e-12);
  EXPECT_GT(mx, 2.5);
}

TEST(Assembly, ScottVogelius)
{
  auto p = testing_util::channel_problem(2, 0, 2, Family::ScottVogelius);
  const SaddleSystem sys = assemble_stokes(p);
  EXPECT_FALSE(sys.pressure->continuous());
  EXPECT_EQ(sys.pressure_dofs(), 3 * p.fine_mesh->num_cells());
}

TEST(Assembly, ValidationRejectsBadInstances)
{
  auto p = testing_util::channel_problem(2, 0, 2, Family::TaylorHood);
  p.boundary.erase(2);
  EXPECT_THROW(p.validate(), Error);
  auto q = testing_util::channel_problem(2, 0, 2, Family::TaylorHood);
  q.discretization.family = Family::ScottVogelius;
  EXPECT_THROW(q.validate(), Error);
  auto r = testing_util::channel_problem(2, 0, 2, Family::TaylorHood);
  r.discretization.degree = 1;
  EXPECT_THROW(r.validate(), Error);
}
