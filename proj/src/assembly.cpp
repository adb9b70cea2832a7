// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>

#include "stokesmg/quadrature.hpp"

namespace stokesmg
{

std::string to_string(Family f)
{
  return f == Family::TaylorHood ? "th" : "sv";
}

std::string Discretization::name() const
{
  return "P" + std::to_string(degree) + "/P" + std::to_string(degree - 1) +
         (family == Family::ScottVogelius ? "disc" : "");
}

void ProblemInstance::validate() const
{
  if (meshes.empty() || !fine_mesh)
  {
    throw Error("problem '" + name + "': missing mesh hierarchy");
  }
  if (discretization.degree < 2 || discretization.degree > 10)
  {
    throw Error("problem '" + name + "': velocity degree must lie in [2, 10]");
  }
  const bool bary = fine_mesh->refinement() == RefinementKind::Barycentric;
  if (discretization.family == Family::ScottVogelius && !bary)
  {
    throw Error("problem '" + name + "': Scott-Vogelius needs a barycentric finest mesh");
  }
  if (discretization.family == Family::TaylorHood && fine_mesh != meshes.back())
  {
    throw Error("problem '" + name + "': Taylor-Hood solves on the finest nested mesh");
  }
  std::set<int> markers;
  for (int e = 0; e < fine_mesh->num_edges(); ++e)
  {
    if (fine_mesh->edge_marker(e) > 0)
    {
      markers.insert(fine_mesh->edge_marker(e));
    }
    else if (fine_mesh->is_boundary_edge(e))
    {
      throw Error("problem '" + name + "': unmarked boundary edge");
    }
  }
  for (int mk : markers)
  {
    if (!boundary.contains(mk))
    {
      throw Error("problem '" + name + "': no boundary condition for marker " +
                  std::to_string(mk));
    }
  }
}

void SaddleSystem::project_pressure_mean(Vector &x) const
{
  const int nu = velocity_dofs(), np = pressure_dofs();
  if (np == 0)
  {
    return;
  }
  auto p = x.segment(nu, np);
  p.array() -= p.mean();
}

namespace
{

// Cellwise tabulations of an element on a rule.
struct ElementData
{
  QuadratureRule rule;
  Tabulation tab;
  ElementData(const ReferenceElement &el, int quad_degree)
    : rule(quadrature_rule(std::max(quad_degree, 1))), tab(el, rule)
  {
  }
};

SparseMatrix assemble_scalar_form(const FunctionSpace &q, bool laplacian)
{
  const Mesh &m = q.mesh();
  const int nloc = q.nodes_per_cell();
  const int k = q.degree();
  ElementData ed(q.element(), laplacian ? 2 * k : std::max(2 * k, 1));
  const int nq = static_cast<int>(ed.rule.size());
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(m.num_cells()) * nloc * nloc);
  DenseMatrix loc(nloc, nloc);
  std::vector<double> grad(2 * nloc);
  for (int c = 0; c < m.num_cells(); ++c)
  {
    const CellGeometry g(m, c);
    loc.setZero();
    for (int qp = 0; qp < nq; ++qp)
    {
      const double w = ed.rule[qp].w * std::abs(g.det);
      if (laplacian)
      {
        for (int i = 0; i < nloc; ++i)
        {
          const double ref[2] = {ed.tab.grad(qp, i, 0), ed.tab.grad(qp, i, 1)};
          g.push_gradient(ref, &grad[2 * i]);
        }
        for (int i = 0; i < nloc; ++i)
        {
          for (int j = 0; j < nloc; ++j)
          {
            loc(i, j) += w * (grad[2 * i] * grad[2 * j] + grad[2 * i + 1] * grad[2 * j + 1]);
          }
        }
      }
      else
      {
        for (int i = 0; i < nloc; ++i)
        {
          const double vi = w * ed.tab.value(qp, i);
          for (int j = 0; j < nloc; ++j)
          {
            loc(i, j) += vi * ed.tab.value(qp, j);
          }
        }
      }
    }
    const auto nodes = q.cell_nodes(c);
    for (int i = 0; i < nloc; ++i)
    {
      for (int j = 0; j < nloc; ++j)
      {
        trip.push_back({nodes[i], nodes[j], loc(i, j)});
      }
    }
  }
  return SparseMatrix::from_triplets(q.num_nodes(), q.num_nodes(), std::move(trip));
}

// Vector version of a scalar operator: each node pair becomes a full 2 x 2 block whose
// off-diagonal (cross-component) entries are structural zeros.
SparseMatrix expand_to_vector(const SparseMatrix &s, int comps)
{
  const int n = s.rows();
  std::vector<Index> rp(static_cast<std::size_t>(n) * comps + 1, 0);
  std::vector<int> ci;
  std::vector<double> v;
  ci.reserve(static_cast<std::size_t>(s.nnz()) * comps * comps);
  v.reserve(ci.capacity());
  for (int i = 0; i < n; ++i)
  {
    for (int c1 = 0; c1 < comps; ++c1)
    {
      for (Index p = s.row_ptr()[i]; p < s.row_ptr()[i + 1]; ++p)
      {
        for (int c2 = 0; c2 < comps; ++c2)
        {
          ci.push_back(s.col_idx()[p] * comps + c2);
          v.push_back(c1 == c2 ? s.values()[p] : 0.0);
        }
      }
      rp[static_cast<std::size_t>(i) * comps + c1 + 1] = static_cast<Index>(ci.size());
    }
  }
  return SparseMatrix(n * comps, n * comps, std::move(rp), std::move(ci), std::move(v));
}

// Locates the local edge index of global edge e within cell c.
int local_edge(const Mesh &m, int c, int e)
{
  const auto &ce = m.cell_edges(c);
  return static_cast<int>(std::find(ce.begin(), ce.end(), e) - ce.begin());
}

constexpr double ref_vertices[3][2] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};

}  // namespace

SparseMatrix assemble_laplacian(const FunctionSpace &q)
{
  return assemble_scalar_form(q, true);
}

SparseMatrix assemble_pressure_mass(const FunctionSpace &q)
{
  if (q.components() != 1)
  {
    throw Error("assemble_pressure_mass: expected a scalar space");
  }
  return assemble_scalar_form(q, false);
}

std::pair<std::vector<int>, Vector> dirichlet_data(const ProblemInstance &p,
                                                   const FunctionSpace &velocity)
{
  const Mesh &m = velocity.mesh();
  std::map<int, Point> values;  // dof node -> value; lowest marker wins
  for (const auto &[marker, bc] : p.boundary)
  {
    if (bc.kind != BoundaryCondition::Kind::Dirichlet)
    {
      continue;
    }
    const int mk[1] = {marker};
    for (int node : velocity.boundary_nodes(mk))
    {
      if (!values.contains(node))
      {
        const Point &x = velocity.node_point(node);
        values[node] = bc.value(x[0], x[1]);
      }
    }
  }
  (void)m;
  const int comps = velocity.components();
  std::vector<int> dofs;
  std::vector<double> vals;
  for (const auto &[node, val] : values)
  {
    for (int c = 0; c < comps; ++c)
    {
      dofs.push_back(velocity.dof(node, c));
      vals.push_back(val[c]);
    }
  }
  Vector g = Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  return {std::move(dofs), std::move(g)};
}

SaddleSystem assemble_stokes(const ProblemInstance &p, const AssemblyOptions &options)
{
  return assemble_stokes(p, p.fine_mesh, p.discretization, options);
}

SaddleSystem assemble_stokes(const ProblemInstance &p, const MeshPtr &mesh,
                             const Discretization &disc, const AssemblyOptions &options)
{
  const int k = disc.degree;
  if (k < 1)
  {
    throw Error("assemble_stokes: velocity degree must be >= 1");
  }
  SaddleSystem sys;
  sys.velocity = build_space(mesh, k, Continuity::Continuous, 2);
  sys.pressure = build_space(mesh, k - 1, disc.pressure_continuity(), 1);
  sys.enclosed_flow = p.enclosed_flow;
  const FunctionSpace &vs = *sys.velocity, &ps = *sys.pressure;
  const Mesh &m = *mesh;
  const int nu = vs.num_dofs(), np = ps.num_nodes();
  const int nlu = vs.nodes_per_cell(), nlp = ps.nodes_per_cell();

  // Velocity-velocity block from the scalar Laplacian.
  SparseMatrix a = expand_to_vector(assemble_laplacian(FunctionSpace(mesh, k, Continuity::Continuous, 1)), 2);

  // Divergence block, forcing, and the pressure coupling pattern.
  const int qdeg = 2 * k;
  const QuadratureRule rule = quadrature_rule(qdeg);
  const Tabulation tu(vs.element(), rule), tp(ps.element(), rule);
  const int nq = static_cast<int>(rule.size());
  std::vector<Triplet> bt, pp;
  bt.reserve(static_cast<std::size_t>(m.num_cells()) * nlp * nlu * 2);
  pp.reserve(static_cast<std::size_t>(m.num_cells()) * nlp * nlp);
  Vector f_u = Vector::Zero(nu);
  DenseMatrix bloc(nlp, 2 * nlu);
  std::vector<double> grad(2 * nlu);
  for (int c = 0; c < m.num_cells(); ++c)
  {
    const CellGeometry g(m, c);
    bloc.setZero();
    const auto un = vs.cell_nodes(c);
    for (int qp = 0; qp < nq; ++qp)
    {
      const double w = rule[qp].w * std::abs(g.det);
      for (int j = 0; j < nlu; ++j)
      {
        const double ref[2] = {tu.grad(qp, j, 0), tu.grad(qp, j, 1)};
        g.push_gradient(ref, &grad[2 * j]);
      }
      for (int i = 0; i < nlp; ++i)
      {
        const double psi = -w * tp.value(qp, i);
        for (int j = 0; j < nlu; ++j)
        {
          bloc(i, 2 * j) += psi * grad[2 * j];
          bloc(i, 2 * j + 1) += psi * grad[2 * j + 1];
        }
      }
      if (p.forcing)
      {
        const Point x = g.map(rule[qp].x, rule[qp].y);
        const Point f = p.forcing(x[0], x[1]);
        for (int j = 0; j < nlu; ++j)
        {
          const double phi = w * tu.value(qp, j);
          f_u[vs.dof(un[j], 0)] += phi * f[0];
          f_u[vs.dof(un[j], 1)] += phi * f[1];
        }
      }
    }
    const auto pn = ps.cell_nodes(c);
    for (int i = 0; i < nlp; ++i)
    {
      for (int j = 0; j < nlu; ++j)
      {
        bt.push_back({pn[i], vs.dof(un[j], 0), bloc(i, 2 * j)});
        bt.push_back({pn[i], vs.dof(un[j], 1), bloc(i, 2 * j + 1)});
      }
      for (int j = 0; j < nlp; ++j)
      {
        pp.push_back({pn[i], pn[j], 0.0});
      }
    }
  }
  SparseMatrix b = SparseMatrix::from_triplets(np, nu, std::move(bt));
  SparseMatrix zero_pp = SparseMatrix::from_triplets(np, np, std::move(pp));

  // Natural boundary data: int_{Gamma_N} g_N . v
  const auto edge_rule = gauss_legendre(k + 1);
  for (int e = 0; e < m.num_edges(); ++e)
  {
    const int mk = m.edge_marker(e);
    const auto it = p.boundary.find(mk);
    if (mk == 0 || it == p.boundary.end() ||
        it->second.kind != BoundaryCondition::Kind::Neumann || !it->second.value)
    {
      continue;
    }
    const int c = m.edge_cells(e)[0];
    const int le = local_edge(m, c, e);
    const int ra = (le + 1) % 3, rb = (le + 2) % 3;
    const Point &xa = m.vertex(m.cell(c)[ra]), &xb = m.vertex(m.cell(c)[rb]);
    const double len = std::hypot(xb[0] - xa[0], xb[1] - xa[1]);
    const auto un = vs.cell_nodes(c);
    std::vector<double> phi(nlu);
    for (const auto &[s, ws] : edge_rule)
    {
      const double rx = (1 - s) * ref_vertices[ra][0] + s * ref_vertices[rb][0];
      const double ry = (1 - s) * ref_vertices[ra][1] + s * ref_vertices[rb][1];
      vs.element().eval(rx, ry, phi.data());
      const Point x{(1 - s) * xa[0] + s * xb[0], (1 - s) * xa[1] + s * xb[1]};
      const Point gn = it->second.value(x[0], x[1]);
      for (int j = 0; j < nlu; ++j)
      {
        f_u[vs.dof(un[j], 0)] += ws * len * phi[j] * gn[0];
        f_u[vs.dof(un[j], 1)] += ws * len * phi[j] * gn[1];
      }
    }
  }

  Vector rhs_p = Vector::Zero(np);
  if (options.apply_dirichlet)
  {
    auto [dofs, vals] = dirichlet_data(p, vs);
    Vector lift = Vector::Zero(nu);
    std::vector<char> mask_u(nu, 0);
    for (std::size_t i = 0; i < dofs.size(); ++i)
    {
      lift[dofs[i]] = vals[i];
      mask_u[dofs[i]] = 1;
    }
    a.multiply_add(lift, f_u, -1.0);
    b.multiply_add(lift, rhs_p, -1.0);
    a.zero_rows(mask_u);
    a.zero_cols(mask_u);
    b.zero_cols(mask_u);
    for (std::size_t i = 0; i < dofs.size(); ++i)
    {
      *a.find(dofs[i], dofs[i]) = 1.0;
      f_u[dofs[i]] = vals[i];
    }
    sys.dirichlet_dofs = std::move(dofs);
    sys.dirichlet_values = std::move(vals);
  }
  sys.dirichlet_mask.assign(nu + np, 0);
  for (int d : sys.dirichlet_dofs)
  {
    sys.dirichlet_mask[d] = 1;
  }
  sys.k = block_matrix(a, b.transpose(), b, zero_pp);
  sys.a = std::move(a);
  sys.b = std::move(b);
  sys.rhs.resize(nu + np);
  sys.rhs << f_u, rhs_p;
  return sys;
}

namespace
{

// Calls visit(x, y, w, values, grads) at every quadrature point of every cell, with the
// basis values and physical gradients of space's element.
template <typename Visit>
void for_each_quadrature_point(const FunctionSpace &space, int degree, Visit &&visit)
{
  const Mesh &m = space.mesh();
  const QuadratureRule rule = quadrature_rule(std::max(degree, 1));
  const Tabulation tab(space.element(), rule);
  const int nloc = space.nodes_per_cell();
  std::vector<double> grad(2 * nloc), val(nloc);
  for (int c = 0; c < m.num_cells(); ++c)
  {
    const CellGeometry g(m, c);
    for (std::size_t qp = 0; qp < rule.size(); ++qp)
    {
      for (int i = 0; i < nloc; ++i)
      {
        val[i] = tab.value(static_cast<int>(qp), i);
        const double ref[2] = {tab.grad(static_cast<int>(qp), i, 0),
                               tab.grad(static_cast<int>(qp), i, 1)};
        g.push_gradient(ref, &grad[2 * i]);
      }
      const Point x = g.map(rule[qp].x, rule[qp].y);
      visit(c, x, rule[qp].w * std::abs(g.det), val, grad);
    }
  }
}

double divergence_at(const Vector &u, const FunctionSpace &vs, int c,
                     const std::vector<double> &grad)
{
  const auto nodes = vs.cell_nodes(c);
  double div = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j)
  {
    div += u[vs.dof(nodes[j], 0)] * grad[2 * j] + u[vs.dof(nodes[j], 1)] * grad[2 * j + 1];
  }
  return div;
}

}  // namespace

double compute_divergence_norm(const Vector &u, const FunctionSpace &velocity)
{
  double s = 0.0;
  for_each_quadrature_point(velocity, 2 * velocity.degree(),
                            [&](int c, const Point &, double w, const auto &, const auto &grad) {
                              const double d = divergence_at(u, velocity, c, grad);
                              s += w * d * d;
                            });
  return std::sqrt(s);
}

double compute_max_divergence(const Vector &u, const FunctionSpace &velocity)
{
  double mx = 0.0;
  for_each_quadrature_point(velocity, 2 * velocity.degree(),
                            [&](int c, const Point &, double, const auto &, const auto &grad) {
                              mx = std::max(mx, std::abs(divergence_at(u, velocity, c, grad)));
                            });
  return mx;
}

SolutionErrors compute_errors(const Vector &u, const Vector &p, const FunctionSpace &velocity,
                              const FunctionSpace &pressure, const ExactSolution &exact,
                              bool subtract_pressure_mean)
{
  SolutionErrors err;
  const int qdeg = 2 * velocity.degree() + 2;
  double eu = 0.0;
  for_each_quadrature_point(velocity, qdeg,
                            [&](int c, const Point &x, double w, const auto &val, const auto &) {
                              const auto nodes = velocity.cell_nodes(c);
                              double uh[2] = {0.0, 0.0};
                              for (std::size_t j = 0; j < nodes.size(); ++j)
                              {
                                uh[0] += u[velocity.dof(nodes[j], 0)] * val[j];
                                uh[1] += u[velocity.dof(nodes[j], 1)] * val[j];
                              }
                              const Point ue = exact.velocity(x[0], x[1]);
                              eu += w * ((uh[0] - ue[0]) * (uh[0] - ue[0]) +
                                         (uh[1] - ue[1]) * (uh[1] - ue[1]));
                            });
  err.velocity_l2 = std::sqrt(eu);

  auto ph_at = [&](int c, const std::vector<double> &val) {
    const auto nodes = pressure.cell_nodes(c);
    double s = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j)
    {
      s += p[nodes[j]] * val[j];
    }
    return s;
  };
  double mean_h = 0.0, mean_e = 0.0;
  if (subtract_pressure_mean)
  {
    double area = 0.0;
    for_each_quadrature_point(pressure, qdeg,
                              [&](int c, const Point &x, double w, const auto &val, const auto &) {
                                mean_h += w * ph_at(c, val);
                                mean_e += w * exact.pressure(x[0], x[1]);
                                area += w;
                              });
    mean_h /= area;
    mean_e /= area;
  }
  double ep = 0.0;
  for_each_quadrature_point(pressure, qdeg,
                            [&](int c, const Point &x, double w, const auto &val, const auto &) {
                              const double d = (ph_at(c, val) - mean_h) -
                                               (exact.pressure(x[0], x[1]) - mean_e);
                              ep += w * d * d;
                            });
  err.pressure_l2 = std::sqrt(ep);
  return err;
}

void write_vector(const Vector &x, const std::string &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw Error("write_vector: cannot write " + path);
  }
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < x.size(); ++i)
  {
    out << x[i] << '\n';
  }
}

}  // namespace stokesmg
