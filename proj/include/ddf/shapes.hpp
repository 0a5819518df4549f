// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <variant>

#include "ddf/bvh.hpp"
#include "ddf/rng.hpp"
#include "ddf/types.hpp"

namespace ddf {

struct Sphere {
  Vec3 center = Vec3::Zero();
  Real radius = 1;
};

/// Infinite plane through `point` with unit normal.
struct Plane {
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
};

struct Box {
  Vec3 min_corner = -Vec3::Ones();
  Vec3 max_corner = Vec3::Ones();
};

using AnalyticShape = std::variant<Sphere, Plane, Box>;

/// Closed-form first intersection (quadratic / half-space / slab test).
/// Tangent sphere rays (discriminant within 1e-12 of zero) count as hits at
/// the tangent point. Hits below t_min are skipped, matching mesh casting.
std::optional<HitRecord> intersect_analytic(const AnalyticShape& shape,
                                            const OrientedPoint& tau,
                                            Real t_min = kRayTmin);

Real analytic_surface_area(const AnalyticShape& shape);

/// Uniform-over-area point on the shape surface (sphere and box only; an
/// infinite plane has no sampleable area).
SurfacePoint analytic_surface_sample(const AnalyticShape& shape, Rng& rng);

}  // namespace ddf
