// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/shapes.hpp"

namespace ddf {

namespace {

std::optional<HitRecord> hit_sphere(const Sphere& s, const OrientedPoint& tau, Real t_min) {
  const Vec3 oc = tau.p - s.center;
  const Real b = oc.dot(tau.v.vec());
  const Real c = oc.squaredNorm() - s.radius * s.radius;
  const Real disc = b * b - c;
  Real t;
  if (disc < -1e-12) return std::nullopt;
  if (disc <= 1e-12) {
    t = -b;  // tangent ray
    if (t < t_min) return std::nullopt;
  } else {
    const Real root = std::sqrt(disc);
    t = -b - root;
    if (t < t_min) t = -b + root;  // interior query exits through the far side
    if (t < t_min) return std::nullopt;
  }
  HitRecord hit;
  hit.t = t;
  hit.point = tau.at(t);
  hit.normal = UnitVec((hit.point - s.center) / s.radius);
  return hit;
}

std::optional<HitRecord> hit_plane(const Plane& pl, const OrientedPoint& tau, Real t_min) {
  const Real denom = tau.v.dot(pl.normal);
  if (std::abs(denom) < 1e-15) return std::nullopt;
  const Real t = (pl.point - tau.p).dot(pl.normal) / denom;
  if (t < t_min) return std::nullopt;
  HitRecord hit;
  hit.t = t;
  hit.point = tau.at(t);
  hit.normal = UnitVec(pl.normal);
  return hit;
}

std::optional<HitRecord> hit_box(const Box& box, const OrientedPoint& tau, Real t_min) {
  Real t0 = -kInf, t1 = kInf;
  int axis0 = -1, axis1 = -1;
  for (int a = 0; a < 3; ++a) {
    const Real d = tau.v.vec()[a];
    if (std::abs(d) < 1e-15) {
      if (tau.p[a] < box.min_corner[a] || tau.p[a] > box.max_corner[a]) return std::nullopt;
      continue;
    }
    Real ta = (box.min_corner[a] - tau.p[a]) / d;
    Real tb = (box.max_corner[a] - tau.p[a]) / d;
    if (ta > tb) std::swap(ta, tb);
    if (ta > t0) {
      t0 = ta;
      axis0 = a;
    }
    if (tb < t1) {
      t1 = tb;
      axis1 = a;
    }
    if (t0 > t1) return std::nullopt;
  }
  Real t = t0;
  int axis = axis0;
  if (t < t_min) {  // inside: exit face
    t = t1;
    axis = axis1;
  }
  if (t < t_min || axis < 0) return std::nullopt;
  HitRecord hit;
  hit.t = t;
  hit.point = tau.at(t);
  Vec3 n = Vec3::Zero();
  const Real mid = 0.5 * (box.min_corner[axis] + box.max_corner[axis]);
  n[axis] = hit.point[axis] > mid ? 1 : -1;
  hit.normal = UnitVec::unchecked(n);
  return hit;
}

}  // namespace

std::optional<HitRecord> intersect_analytic(const AnalyticShape& shape,
                                            const OrientedPoint& tau, Real t_min) {
  if (const auto* s = std::get_if<Sphere>(&shape)) return hit_sphere(*s, tau, t_min);
  if (const auto* p = std::get_if<Plane>(&shape)) return hit_plane(*p, tau, t_min);
  return hit_box(std::get<Box>(shape), tau, t_min);
}

Real analytic_surface_area(const AnalyticShape& shape) {
  if (const auto* s = std::get_if<Sphere>(&shape)) return 4 * kPi * s->radius * s->radius;
  if (const auto* b = std::get_if<Box>(&shape)) {
    const Vec3 e = b->max_corner - b->min_corner;
    return 2 * (e.x() * e.y() + e.y() * e.z() + e.z() * e.x());
  }
  return kInf;  // plane
}

SurfacePoint analytic_surface_sample(const AnalyticShape& shape, Rng& rng) {
  if (const auto* s = std::get_if<Sphere>(&shape)) {
    const UnitVec dir = uniform_sphere(rng);
    return SurfacePoint{s->center + s->radius * dir.vec(), dir, -1};
  }
  if (const auto* b = std::get_if<Box>(&shape)) {
    const Vec3 e = b->max_corner - b->min_corner;
    const Real areas[3] = {e.y() * e.z(), e.z() * e.x(), e.x() * e.y()};
    const Real total = 2 * (areas[0] + areas[1] + areas[2]);
    Real u = uniform_real(rng, 0, total);
    for (int a = 0; a < 3; ++a) {
      for (int side = 0; side < 2; ++side) {
        u -= areas[a];
        if (u > 0) continue;
        Vec3 q = uniform_in_box(rng, b->min_corner, b->max_corner);
        q[a] = side ? b->max_corner[a] : b->min_corner[a];
        Vec3 n = Vec3::Zero();
        n[a] = side ? 1 : -1;
        return SurfacePoint{q, UnitVec::unchecked(n), -1};
      }
    }
  }
  throw std::invalid_argument("surface sample: unsupported analytic shape");
}

}  // namespace ddf
