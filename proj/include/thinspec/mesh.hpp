// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef THINSPEC_MESH_HPP
#define THINSPEC_MESH_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "thinspec/geometry.hpp"

namespace thinspec
{

enum class Region : std::uint8_t
{
  Core,
  Layer
};

/// Conforming P1 triangulation with the outer boundary Γ and, when a coating
/// is meshed, the interface Γ_δ tagged as ordered vertex loops.
struct TriMesh
{
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Region> regions;

  // boundary loops in increasing arclength; INNER is empty without a layer
  std::vector<int> outer;
  std::vector<int> inner;
  std::vector<double> outer_s;
  std::vector<double> inner_s;
  // period of the outer arclength parameter
  double boundary_length = 0.0;

  // per-vertex position across the layer, ξ/g ∈ [0, 1]; negative off the layer
  std::vector<double> layer_fraction;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t triangle_count() const { return triangles.size(); }
  bool has_layer() const;
  int layer_rows = 0;

  double signed_area(std::size_t t) const;
  double max_edge_length() const;
  /// Marks the OUTER (1) and INNER (2) vertices; 0 elsewhere.
  std::vector<std::uint8_t> boundary_tags() const;
  /// Vertex closest to p.
  int nearest_vertex(const Point &p) const;
};

struct MeshOptions
{
  // element rows across the layer; 0 picks max(2, ceil(δ_max / (h/2)))
  int layer_rows = 0;
};

/// Meshes the domain bounded by `curve`, with a structured layer of graded
/// rows along the inward normals when `layer` is given and homothetic rings
/// filling the core. Throws InvalidArgument for h outside
/// (0, min(0.2 η₀, s₀/16)), LayerUnderResolved for fewer than 2 rows and
/// MeshFailure on a non-positive element.
TriMesh generate_mesh(const BoundaryCurve &curve, const std::optional<LayerConfig> &layer, double h,
                      const MeshOptions &opts = {});

/// Structured mesh of [0, width] × [0, height] with diagonal splits; the
/// boundary loop runs counter-clockwise from the origin.
TriMesh rectangle_mesh(double width, double height, double h);

/// The same topology with every coordinate multiplied by `factor`.
TriMesh scaled(const TriMesh &mesh, double factor);

/// Plain-text format: `v x y`, `t i j k CORE|LAYER`, `b i OUTER|INNER`.
void write_mesh(std::ostream &os, const TriMesh &mesh);
TriMesh read_mesh(std::istream &is);

} // namespace thinspec

#endif // THINSPEC_MESH_HPP
