// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "ddf/rng.hpp"
#include "ddf/types.hpp"

namespace ddf {

/// Indexed triangle soup with cached per-face normals and areas. Assumed
/// closed and consistently wound; non-watertight input is accepted but the
/// induced field is then only defined on rays that actually hit.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<Vec3> face_normals;  // unit, from winding
  std::vector<Real> face_areas;

  int face_count() const { return static_cast<int>(faces.size()); }
  Real total_area() const;

  /// Rebuilds normals/areas from vertices+faces; drops degenerate faces.
  void finalize();

  Vec3 face_vertex(int face, int corner) const {
    return vertices[faces[face][corner]];
  }

  Vec3 centroid() const;
  void bounds(Vec3& lo, Vec3& hi) const;

  /// Rescales to longest-axis length `target_extent` centered at the origin
  /// (the loading convention used for scene meshes).
  void normalize_to_box(Real target_extent = 2.0);
};

struct SurfacePoint {
  Vec3 q = Vec3::Zero();
  UnitVec n = UnitVec::unchecked(Vec3::UnitZ());
  int face_id = -1;
};

/// Uniform-over-area surface sample. Throws on zero total area.
SurfacePoint area_weighted_surface_sample(const TriangleMesh& mesh, Rng& rng);

/// OBJ subset: v / f records, polygon faces triangulated fan-wise.
TriangleMesh load_obj(const std::string& path);
void save_obj(const TriangleMesh& mesh, const std::string& path);

/// Subdivided icosahedron projected onto the sphere. `subdivisions` = 0 gives
/// 20 faces; each level quadruples the count.
TriangleMesh make_icosphere(Real radius, int subdivisions, const Vec3& center = Vec3::Zero());

/// Axis-aligned box as 12 triangles with outward winding.
TriangleMesh make_box_mesh(const Vec3& min_corner, const Vec3& max_corner);

/// Star-convex blob: icosphere with a smooth radial modulation. Stands in for
/// organic test shapes without external assets.
TriangleMesh make_blob(Real base_radius, int subdivisions, Real amplitude = 0.15);

/// Concatenates meshes into one (used to build union oracles).
TriangleMesh merge_meshes(const std::vector<TriangleMesh>& parts);

/// Translates all vertices.
TriangleMesh translated(TriangleMesh mesh, const Vec3& offset);

}  // namespace ddf
