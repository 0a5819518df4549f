// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "ddf/mesh.hpp"
#include "ddf/types.hpp"

namespace ddf {

/// First intersection along a ray. `normal` is the raw face normal (winding
/// orientation); induced-field queries re-sign it so n.v < 0.
struct HitRecord {
  Real t = kInf;
  Vec3 point = Vec3::Zero();
  UnitVec normal = UnitVec::unchecked(Vec3::UnitZ());
  int face_id = -1;
};

/// Watertight-style Moller-Trumbore with inclusive edge tests, so rays across
/// shared edges cannot slip between triangles. Hits below t_min are ignored.
std::optional<Real> ray_triangle(const Vec3& orig, const Vec3& dir, const Vec3& a,
                                 const Vec3& b, const Vec3& c, Real t_min = kRayTmin);

/// Binary BVH over mesh triangles (median split on the longest centroid axis).
/// Immutable after construction; traversal is pure and thread-safe.
class Bvh {
 public:
  explicit Bvh(const TriangleMesh& mesh);

  const TriangleMesh& mesh() const { return *mesh_; }

  /// Closest hit with t >= t_min; nullopt on miss.
  std::optional<HitRecord> intersect(const OrientedPoint& tau, Real t_min = kRayTmin) const;

  /// Exhaustive all-triangle scan; the oracle the tree is validated against.
  std::optional<HitRecord> intersect_bruteforce(const OrientedPoint& tau,
                                                Real t_min = kRayTmin) const;

 private:
  struct Node {
    Vec3 lo, hi;
    int left = -1;    // internal: child index; leaf: first triangle
    int count = 0;    // leaf triangle count; 0 marks internal nodes
    int right = -1;
  };

  int build(int begin, int end);

  const TriangleMesh* mesh_;
  std::vector<int> order_;        // triangle ids, leaf-contiguous
  std::vector<Vec3> centroids_;   // build-time only; kept for rebuild debugging
  std::vector<Node> nodes_;
};

std::optional<HitRecord> ray_intersect(const Bvh& bvh, const OrientedPoint& tau);

}  // namespace ddf
