// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "thinspec/mesh.hpp"

namespace thinspec
{
namespace
{

LayerConfig uniform(double delta0)
{
  return LayerConfig(delta0, ThicknessProfile::constant(1.0), RefractiveIndex::constant(0.5));
}

void expect_conforming(const TriMesh &mesh)
{
  std::map<std::pair<int, int>, int> uses;
  for (const auto &t : mesh.triangles)
  {
    for (int e = 0; e < 3; ++e)
    {
      int a = t[e], b = t[(e + 1) % 3];
      if (a > b)
        std::swap(a, b);
      ++uses[{a, b}];
    }
  }
  int boundary = 0;
  for (const auto &[edge, count] : uses)
  {
    EXPECT_LE(count, 2);
    boundary += count == 1;
  }
  EXPECT_EQ(boundary, static_cast<int>(mesh.outer.size()));
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t)
    EXPECT_GT(mesh.signed_area(t), 0.0);
}

TEST(Mesh, OuterVerticesOnCircle)
{
  const TriMesh mesh = generate_mesh(BoundaryCurve::circle(1.0), std::nullopt, 0.1);
  ASSERT_FALSE(mesh.outer.empty());
  for (int v : mesh.outer)
    EXPECT_NEAR(mesh.vertices[v].norm(), 1.0, 1e-10);
  EXPECT_FALSE(mesh.has_layer());
  expect_conforming(mesh);
}

TEST(Mesh, OuterVerticesOnEllipse)
{
  const TriMesh mesh = generate_mesh(BoundaryCurve::ellipse(1.3, 1.0), uniform(0.03), 0.05);
  for (int v : mesh.outer)
  {
    const Point &p = mesh.vertices[v];
    EXPECT_NEAR(std::pow(p.x() / 1.3, 2) + p.y() * p.y(), 1.0, 1e-10);
  }
  expect_conforming(mesh);
}

TEST(Mesh, LayerTrianglesInAnnulus)
{
  const TriMesh mesh = generate_mesh(BoundaryCurve::circle(1.0), uniform(0.05), 0.1);
  ASSERT_TRUE(mesh.has_layer());
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t)
  {
    for (int v : mesh.triangles[t])
    {
      const double r = mesh.vertices[v].norm();
      if (mesh.regions[t] == Region::Layer)
      {
        EXPECT_GE(r, 0.95 - 1e-10);
        EXPECT_LE(r, 1.0 + 1e-10);
      }
      else
      {
        EXPECT_LE(r, 0.95 + 1e-10);
      }
    }
  }
  for (int v : mesh.inner)
    EXPECT_NEAR(mesh.vertices[v].norm(), 0.95, 1e-10);
  expect_conforming(mesh);
}

TEST(Mesh, ThinLayerStillHasTwoRows)
{
  const TriMesh mesh = generate_mesh(BoundaryCurve::circle(1.0), uniform(0.01), 0.1);
  EXPECT_GE(mesh.layer_rows, 2);
  EXPECT_GT(mesh.triangle_count(), 0u);
  EXPECT_CODE(generate_mesh(BoundaryCurve::circle(1.0), uniform(0.01), 0.1, MeshOptions{1}),
              ErrorCode::LayerUnderResolved);
}

TEST(Mesh, RejectsOversizedH)
{
  EXPECT_CODE(generate_mesh(BoundaryCurve::circle(1.0), std::nullopt, 0.5), ErrorCode::InvalidArgument);
  EXPECT_CODE(generate_mesh(BoundaryCurve::circle(1.0), std::nullopt, 0.0), ErrorCode::InvalidArgument);
}

TEST(Mesh, AreaAndEdgeLength)
{
  const TriMesh mesh = generate_mesh(BoundaryCurve::circle(1.0), std::nullopt, 0.05);
  double area = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t)
    area += mesh.signed_area(t);
  EXPECT_NEAR(area, M_PI, 5e-3);
  EXPECT_LE(mesh.max_edge_length(), 2.0 * 0.05);
}

TEST(Mesh, RectangleAndScaling)
{
  const TriMesh square = rectangle_mesh(1.0, 1.0, 0.25);
  EXPECT_EQ(square.vertex_count(), 25u);
  EXPECT_EQ(square.triangle_count(), 32u);
  EXPECT_EQ(square.outer.size(), 16u);
  const TriMesh big = scaled(square, 2.0);
  EXPECT_NEAR(big.signed_area(0), 4.0 * square.signed_area(0), 1e-14);
  EXPECT_NEAR(big.boundary_length, 8.0, 1e-12);
}

TEST(Mesh, TextRoundTrip)
{
  const TriMesh mesh = generate_mesh(BoundaryCurve::circle(1.0), uniform(0.05), 0.1);
  std::stringstream buffer;
  write_mesh(buffer, mesh);
  const TriMesh back = read_mesh(buffer);
  ASSERT_EQ(back.vertex_count(), mesh.vertex_count());
  ASSERT_EQ(back.triangle_count(), mesh.triangle_count());
  EXPECT_EQ(back.triangles, mesh.triangles);
  EXPECT_EQ(back.regions, mesh.regions);
  EXPECT_EQ(back.outer, mesh.outer);
  EXPECT_EQ(back.inner, mesh.inner);
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i)
  {
    EXPECT_EQ(back.vertices[i], mesh.vertices[i]);
    EXPECT_EQ(back.layer_fraction[i], mesh.layer_fraction[i]);
  }
  EXPECT_EQ(back.outer_s, mesh.outer_s);
  EXPECT_EQ(back.boundary_length, mesh.boundary_length);
  std::stringstream again;
  write_mesh(again, back);
  std::stringstream first;
  write_mesh(first, mesh);
  EXPECT_EQ(again.str(), first.str());
}

TEST(Mesh, ReadRejectsGarbage)
{
  std::stringstream bad("v 0 0 -1\nt 0 1 2 CORE\n");
  EXPECT_CODE(read_mesh(bad), ErrorCode::IoError);
}

} // namespace
} // namespace thinspec
