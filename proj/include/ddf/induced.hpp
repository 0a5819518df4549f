// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ddf/bvh.hpp"
#include "ddf/shapes.hpp"
#include "ddf/types.hpp"

namespace ddf {

/// Exact shape-induced query result: xi in {0,1}; depth is the distance to
/// the first intersection, +inf sentinel when not visible. The normal is
/// sign-fixed so n.v < 0; `grazing` marks |n.v| < 1e-6 where that orientation
/// (and any derived gradient) is unreliable.
struct InducedSample {
  bool visible = false;
  Real depth = kInf;
  Vec3 point = Vec3::Zero();
  std::optional<UnitVec> normal;
  bool grazing = false;
  int face_id = -1;
};

/// A shape wrapped as the exact (xi, d) pair it induces: a triangle mesh
/// behind a BVH, or a union of analytic primitives (closed-form oracle).
/// Immutable after construction; queries are pure.
class InducedField {
 public:
  InducedField(TriangleMesh mesh, Domain domain);
  InducedField(std::vector<AnalyticShape> shapes, Domain domain);
  InducedField(AnalyticShape shape, Domain domain);

  /// Loads an OBJ; by default rescales to longest-axis 2 about the origin and
  /// pairs it with the [-1,1]^3 domain.
  static InducedField from_obj(const std::string& path, bool normalize = true,
                               Real domain_epsilon = 0.05);

  const Domain& domain() const { return domain_; }

  InducedSample query(const OrientedPoint& tau) const;

  bool mesh_backed() const { return bvh_ != nullptr; }
  const TriangleMesh* mesh() const { return mesh_.get(); }
  const Bvh* bvh() const { return bvh_.get(); }
  const std::vector<AnalyticShape>& shapes() const { return shapes_; }

  Real surface_area() const;
  SurfacePoint surface_sample(Rng& rng) const;

 private:
  Domain domain_;
  std::unique_ptr<const TriangleMesh> mesh_;
  std::unique_ptr<const Bvh> bvh_;
  std::vector<AnalyticShape> shapes_;
};

inline InducedSample induced_query(const InducedField& field, const OrientedPoint& tau) {
  return field.query(tau);
}

/// Closed-form induced query for a single analytic primitive.
InducedSample analytic_ddf(const AnalyticShape& shape, const OrientedPoint& tau);

}  // namespace ddf
