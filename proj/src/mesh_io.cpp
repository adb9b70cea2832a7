// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "stokesmg/mesh.hpp"

namespace stokesmg
{

MeshPtr load_mesh(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error("load_mesh: cannot open " + path.string());
  }
  auto fail = [&](const std::string &what) {
    throw Error("load_mesh: " + path.string() + ": " + what);
  };
  long nv = 0, nb = 0, nt = 0;
  if (!(in >> nv >> nb >> nt) || nv < 3 || nb < 0 || nt < 1)
  {
    fail("malformed header");
  }
  std::vector<Point> vertices(nv);
  for (auto &p : vertices)
  {
    if (!(in >> p[0] >> p[1]))
    {
      fail("malformed vertex line");
    }
  }
  std::vector<std::array<int, 3>> cells(nt);
  for (auto &t : cells)
  {
    if (!(in >> t[0] >> t[1] >> t[2]))
    {
      fail("malformed cell line");
    }
  }
  std::vector<BoundaryEdge> boundary(nb);
  for (auto &be : boundary)
  {
    if (!(in >> be.a >> be.b >> be.marker))
    {
      fail("malformed boundary edge line");
    }
  }
  std::string trailing;
  if (in >> trailing)
  {
    fail("unexpected trailing content");
  }
  auto mesh = std::make_shared<const Mesh>(std::move(vertices), std::move(cells), boundary,
                                           /*repair_orientation=*/true);
  if (mesh->repaired_cells() > 0)
  {
    std::cerr << "warning: load_mesh: " << path.string() << ": reoriented "
              << mesh->repaired_cells() << " clockwise cell(s)\n";
  }
  return mesh;
}

void save_mesh(const Mesh &m, const std::filesystem::path &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw Error("save_mesh: cannot write " + path.string());
  }
  const auto boundary = m.boundary_edges();
  out << m.num_vertices() << ' ' << boundary.size() << ' ' << m.num_cells() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto &p : m.vertices())
  {
    out << p[0] << ' ' << p[1] << '\n';
  }
  for (const auto &t : m.cells())
  {
    out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  for (const auto &be : boundary)
  {
    out << be.a << ' ' << be.b << ' ' << be.marker << '\n';
  }
  if (!out)
  {
    throw Error("save_mesh: write failed for " + path.string());
  }
}

}  // namespace stokesmg
