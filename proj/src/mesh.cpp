// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinspec/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "thinspec/error.hpp"

namespace thinspec
{

namespace
{

// Triangulates the strip between two closed loops of vertex indices whose
// nodes sit at parameters k/size. `outer` runs counter-clockwise with
// `inner` on its left.
void zip_rings(const std::vector<int> &outer, const std::vector<int> &inner, Region region,
               TriMesh &mesh)
{
  const int na = static_cast<int>(outer.size());
  const int nb = static_cast<int>(inner.size());
  int i = 0, j = 0;
  while (i < na || j < nb)
  {
    const double next_a = (i + 0.5) / na;
    const double next_b = (j + 0.5) / nb;
    const bool advance_a = (j == nb) || (i < na && next_a <= next_b);
    if (advance_a)
    {
      mesh.triangles.push_back({outer[i % na], outer[(i + 1) % na], inner[j % nb]});
      ++i;
    }
    else
    {
      mesh.triangles.push_back({outer[i % na], inner[(j + 1) % nb], inner[j % nb]});
      ++j;
    }
    mesh.regions.push_back(region);
  }
}

void check_elements(const TriMesh &mesh, double h)
{
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
  {
    if (!(mesh.signed_area(t) > 1e-12 * h * h))
      throw Error(ErrorCode::MeshFailure, "degenerate triangle " + std::to_string(t));
  }
}

} // namespace

bool TriMesh::has_layer() const
{
  return std::any_of(regions.begin(), regions.end(), [](Region r) { return r == Region::Layer; });
}

double TriMesh::signed_area(std::size_t t) const
{
  const auto &tri = triangles[t];
  const Point a = vertices[tri[0]], b = vertices[tri[1]], c = vertices[tri[2]];
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

double TriMesh::max_edge_length() const
{
  double h = 0.0;
  for (const auto &tri : triangles)
  {
    for (int k = 0; k < 3; ++k)
      h = std::max(h, (vertices[tri[k]] - vertices[tri[(k + 1) % 3]]).norm());
  }
  return h;
}

std::vector<std::uint8_t> TriMesh::boundary_tags() const
{
  std::vector<std::uint8_t> tags(vertices.size(), 0);
  for (int v : outer)
    tags[v] = 1;
  for (int v : inner)
    tags[v] = 2;
  return tags;
}

int TriMesh::nearest_vertex(const Point &p) const
{
  int best = 0;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices.size(); ++i)
  {
    const double d = (vertices[i] - p).squaredNorm();
    if (d < dist)
    {
      dist = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

TriMesh generate_mesh(const BoundaryCurve &curve, const std::optional<LayerConfig> &layer, double h,
                      const MeshOptions &opts)
{
  const double s0 = curve.length();
  const double eta0 = curve.reach();
  if (!(h > 0.0) || !(h < std::min(0.2 * eta0, s0 / 16.0)))
    throw Error(ErrorCode::InvalidArgument, "mesh size must satisfy 0 < h < min(0.2 reach, length/16)");
  if (layer)
    layer->validate_against(curve);

  const int n_boundary = static_cast<int>(std::ceil(s0 / h));
  TriMesh mesh;
  mesh.boundary_length = s0;

  auto add_vertex = [&mesh](const Point &p, double fraction) {
    mesh.vertices.push_back(p);
    mesh.layer_fraction.push_back(fraction);
    return static_cast<int>(mesh.vertices.size()) - 1;
  };

  std::vector<int> ring(n_boundary);
  for (int k = 0; k < n_boundary; ++k)
  {
    const double s = s0 * k / n_boundary;
    ring[k] = add_vertex(curve.position(s), layer ? 0.0 : -1.0);
    mesh.outer.push_back(ring[k]);
    mesh.outer_s.push_back(s);
  }

  if (layer)
  {
    int rows = opts.layer_rows;
    if (rows == 0)
      rows = std::max(2, static_cast<int>(std::ceil(layer->max_thickness(curve) / (0.5 * h))));
    if (rows < 2)
      throw Error(ErrorCode::LayerUnderResolved, "layer needs at least 2 element rows");
    mesh.layer_rows = rows;
    for (int r = 1; r <= rows; ++r)
    {
      const double fraction = static_cast<double>(r) / rows;
      std::vector<int> next(n_boundary);
      for (int k = 0; k < n_boundary; ++k)
      {
        const double s = mesh.outer_s[k];
        const double eta = fraction * layer->thickness(curve, s);
        next[k] = add_vertex(curve.position(s) + eta * curve.inward_normal(s), fraction);
      }
      zip_rings(ring, next, Region::Layer, mesh);
      ring = std::move(next);
    }
    mesh.inner = ring;
    mesh.inner_s = mesh.outer_s;
  }

  // homothetic rings from the core boundary to the centroid
  const Point c = curve.centroid();
  auto core_boundary = [&](double u) {
    const double s = u * s0;
    Point p = curve.position(s);
    if (layer)
      p += layer->thickness(curve, s) * curve.inward_normal(s);
    return p;
  };
  double mean_radius = 0.0;
  for (int k = 0; k < n_boundary; ++k)
    mean_radius += (mesh.vertices[ring[k]] - c).norm();
  mean_radius /= n_boundary;
  const int rings = std::max(2, static_cast<int>(std::lround(mean_radius / h)));
  for (int i = rings - 1; i >= 1; --i)
  {
    const double t = static_cast<double>(i) / rings;
    const int count = std::max(6, static_cast<int>(std::lround(n_boundary * t)));
    std::vector<int> next(count);
    for (int k = 0; k < count; ++k)
      next[k] = add_vertex(c + t * (core_boundary(static_cast<double>(k) / count) - c), -1.0);
    zip_rings(ring, next, Region::Core, mesh);
    ring = std::move(next);
  }
  const int centre = add_vertex(c, -1.0);
  for (std::size_t k = 0; k < ring.size(); ++k)
  {
    mesh.triangles.push_back({ring[k], ring[(k + 1) % ring.size()], centre});
    mesh.regions.push_back(Region::Core);
  }

  check_elements(mesh, h);
  return mesh;
}

TriMesh rectangle_mesh(double width, double height, double h)
{
  if (!(width > 0.0) || !(height > 0.0) || !(h > 0.0))
    throw Error(ErrorCode::InvalidArgument, "rectangle mesh needs positive sizes");
  const int nx = std::max(2, static_cast<int>(std::ceil(width / h)));
  const int ny = std::max(2, static_cast<int>(std::ceil(height / h)));
  TriMesh mesh;
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
  {
    for (int i = 0; i <= nx; ++i)
    {
      mesh.vertices.emplace_back(width * i / nx, height * j / ny);
      mesh.layer_fraction.push_back(-1.0);
    }
  }
  for (int j = 0; j < ny; ++j)
  {
    for (int i = 0; i < nx; ++i)
    {
      mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
      mesh.regions.push_back(Region::Core);
      mesh.regions.push_back(Region::Core);
    }
  }
  std::vector<int> loop;
  for (int i = 0; i < nx; ++i)
    loop.push_back(id(i, 0));
  for (int j = 0; j < ny; ++j)
    loop.push_back(id(nx, j));
  for (int i = nx; i > 0; --i)
    loop.push_back(id(i, ny));
  for (int j = ny; j > 0; --j)
    loop.push_back(id(0, j));
  double s = 0.0;
  for (std::size_t k = 0; k < loop.size(); ++k)
  {
    mesh.outer.push_back(loop[k]);
    mesh.outer_s.push_back(s);
    s += (mesh.vertices[loop[(k + 1) % loop.size()]] - mesh.vertices[loop[k]]).norm();
  }
  mesh.boundary_length = s;
  return mesh;
}

TriMesh scaled(const TriMesh &mesh, double factor)
{
  TriMesh out = mesh;
  for (Point &p : out.vertices)
    p *= factor;
  for (double &s : out.outer_s)
    s *= factor;
  for (double &s : out.inner_s)
    s *= factor;
  out.boundary_length *= factor;
  return out;
}

void write_mesh(std::ostream &os, const TriMesh &mesh)
{
  os << std::setprecision(17);
  os << "# thinspec mesh\n";
  os << "# boundary_length " << mesh.boundary_length << "\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
    os << "v " << mesh.vertices[i].x() << ' ' << mesh.vertices[i].y() << ' ' << mesh.layer_fraction[i]
       << "\n";
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
  {
    const auto &tri = mesh.triangles[t];
    os << "t " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << ' '
       << (mesh.regions[t] == Region::Layer ? "LAYER" : "CORE") << "\n";
  }
  for (std::size_t k = 0; k < mesh.outer.size(); ++k)
    os << "b " << mesh.outer[k] << " OUTER " << mesh.outer_s[k] << "\n";
  for (std::size_t k = 0; k < mesh.inner.size(); ++k)
    os << "b " << mesh.inner[k] << " INNER " << mesh.inner_s[k] << "\n";
}

TriMesh read_mesh(std::istream &is)
{
  TriMesh mesh;
  std::string line;
  int line_no = 0;
  auto fail = [&line_no](const std::string &what) {
    throw Error(ErrorCode::IoError, "mesh line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(is, line))
  {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag))
      continue;
    if (tag == "#")
    {
      std::string key;
      if (ls >> key && key == "boundary_length")
        ls >> mesh.boundary_length;
    }
    else if (tag == "v")
    {
      double x, y, f = -1.0;
      if (!(ls >> x >> y))
        fail("bad vertex");
      ls >> f;
      mesh.vertices.emplace_back(x, y);
      mesh.layer_fraction.push_back(f);
    }
    else if (tag == "t")
    {
      int i, j, k;
      std::string region;
      if (!(ls >> i >> j >> k >> region))
        fail("bad triangle");
      mesh.triangles.push_back({i, j, k});
      if (region == "LAYER")
        mesh.regions.push_back(Region::Layer);
      else if (region == "CORE")
        mesh.regions.push_back(Region::Core);
      else
        fail("unknown region " + region);
    }
    else if (tag == "b")
    {
      int i;
      std::string kind;
      double s = std::numeric_limits<double>::quiet_NaN();
      if (!(ls >> i >> kind))
        fail("bad boundary tag");
      ls >> s;
      if (kind == "OUTER")
      {
        mesh.outer.push_back(i);
        mesh.outer_s.push_back(s);
      }
      else if (kind == "INNER")
      {
        mesh.inner.push_back(i);
        mesh.inner_s.push_back(s);
      }
      else
      {
        fail("unknown boundary kind " + kind);
      }
    }
    else
    {
      fail("unknown record " + tag);
    }
  }
  const int nv = static_cast<int>(mesh.vertices.size());
  for (const auto &tri : mesh.triangles)
  {
    for (int v : tri)
      if (v < 0 || v >= nv)
        throw Error(ErrorCode::IoError, "triangle references a missing vertex");
  }
  for (int mark = 0; mark < 2; ++mark)
  {
    // fall back to chord arclength when s was not recorded
    auto &loop = mark == 0 ? mesh.outer : mesh.inner;
    auto &s = mark == 0 ? mesh.outer_s : mesh.inner_s;
    if (std::any_of(s.begin(), s.end(), [](double x) { return std::isnan(x); }))
    {
      double acc = 0.0;
      for (std::size_t k = 0; k < loop.size(); ++k)
      {
        s[k] = acc;
        acc += (mesh.vertices[loop[(k + 1) % loop.size()]] - mesh.vertices[loop[k]]).norm();
      }
      if (mark == 0 && mesh.boundary_length == 0.0)
        mesh.boundary_length = acc;
    }
  }
  return mesh;
}

} // namespace thinspec
