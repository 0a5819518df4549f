// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/induced.hpp"

namespace ddf {

namespace {

InducedSample from_hit(const std::optional<HitRecord>& hit, const OrientedPoint& tau) {
  InducedSample out;
  if (!hit) return out;
  out.visible = true;
  out.depth = hit->t;
  out.point = hit->point;
  out.face_id = hit->face_id;
  const Real cosine = hit->normal.dot(tau.v.vec());
  out.grazing = std::abs(cosine) < kGrazingEps;
  out.normal = cosine > 0 ? -hit->normal : hit->normal;
  return out;
}

}  // namespace

InducedField::InducedField(TriangleMesh mesh, Domain domain)
    : domain_(domain), mesh_(std::make_unique<TriangleMesh>(std::move(mesh))) {
  bvh_ = std::make_unique<Bvh>(*mesh_);
}

InducedField::InducedField(std::vector<AnalyticShape> shapes, Domain domain)
    : domain_(domain), shapes_(std::move(shapes)) {
  if (shapes_.empty()) throw std::invalid_argument("InducedField: no shapes");
}

InducedField::InducedField(AnalyticShape shape, Domain domain)
    : InducedField(std::vector<AnalyticShape>{std::move(shape)}, domain) {}

InducedField InducedField::from_obj(const std::string& path, bool normalize,
                                    Real domain_epsilon) {
  TriangleMesh mesh = load_obj(path);
  if (normalize) mesh.normalize_to_box(2.0);
  return InducedField(std::move(mesh), Domain::cube(1.0, domain_epsilon));
}

InducedSample InducedField::query(const OrientedPoint& tau) const {
  if (bvh_) return from_hit(bvh_->intersect(tau), tau);
  std::optional<HitRecord> best;
  for (const auto& shape : shapes_) {
    auto hit = intersect_analytic(shape, tau);
    if (hit && (!best || hit->t < best->t)) best = hit;
  }
  return from_hit(best, tau);
}

Real InducedField::surface_area() const {
  if (mesh_) return mesh_->total_area();
  Real a = 0;
  for (const auto& s : shapes_) a += analytic_surface_area(s);
  return a;
}

SurfacePoint InducedField::surface_sample(Rng& rng) const {
  if (mesh_) return area_weighted_surface_sample(*mesh_, rng);
  Real total = 0;
  for (const auto& s : shapes_) total += analytic_surface_area(s);
  if (!std::isfinite(total) || !(total > 0))
    throw std::invalid_argument("surface sample: field has no finite-area surface");
  Real u = uniform_real(rng, 0, total);
  for (const auto& s : shapes_) {
    u -= analytic_surface_area(s);
    if (u <= 0) return analytic_surface_sample(s, rng);
  }
  return analytic_surface_sample(shapes_.back(), rng);
}

InducedSample analytic_ddf(const AnalyticShape& shape, const OrientedPoint& tau) {
  return from_hit(intersect_analytic(shape, tau), tau);
}

}  // namespace ddf
