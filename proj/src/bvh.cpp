// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/bvh.hpp"

#include <algorithm>
#include <numeric>

namespace ddf {

std::optional<Real> ray_triangle(const Vec3& orig, const Vec3& dir, const Vec3& a,
                                 const Vec3& b, const Vec3& c, Real t_min) {
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 pv = dir.cross(e2);
  const Real det = e1.dot(pv);
  if (std::abs(det) < 1e-14) return std::nullopt;  // parallel or degenerate
  const Real inv_det = 1 / det;
  const Vec3 tv = orig - a;
  const Real u = tv.dot(pv) * inv_det;
  // Inclusive bounds: barycentric coordinates exactly on an edge count as a
  // hit for both incident triangles, so closed meshes do not leak.
  if (u < -1e-12 || u > 1 + 1e-12) return std::nullopt;
  const Vec3 qv = tv.cross(e1);
  const Real v = dir.dot(qv) * inv_det;
  if (v < -1e-12 || u + v > 1 + 1e-12) return std::nullopt;
  const Real t = e2.dot(qv) * inv_det;
  if (t < t_min) return std::nullopt;
  return t;
}

namespace {

inline bool box_hit(const Vec3& lo, const Vec3& hi, const Vec3& orig, const Vec3& inv_dir,
                    Real t_max) {
  Real t0 = 0, t1 = t_max;
  for (int a = 0; a < 3; ++a) {
    Real ta = (lo[a] - orig[a]) * inv_dir[a];
    Real tb = (hi[a] - orig[a]) * inv_dir[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = ta > t0 ? ta : t0;
    t1 = tb < t1 ? tb : t1;
    if (t0 > t1) return false;
  }
  return true;
}

constexpr int kLeafSize = 4;

}  // namespace

Bvh::Bvh(const TriangleMesh& mesh) : mesh_(&mesh) {
  const int n = mesh.face_count();
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0);
  centroids_.resize(n);
  for (int i = 0; i < n; ++i)
    centroids_[i] =
        (mesh.face_vertex(i, 0) + mesh.face_vertex(i, 1) + mesh.face_vertex(i, 2)) / 3;
  nodes_.reserve(n > 0 ? 2 * n : 1);
  if (n > 0) build(0, n);
}

int Bvh::build(int begin, int end) {
  Node node;
  node.lo = Vec3::Constant(kInf);
  node.hi = Vec3::Constant(-kInf);
  for (int i = begin; i < end; ++i) {
    for (int c = 0; c < 3; ++c) {
      const Vec3 v = mesh_->face_vertex(order_[i], c);
      node.lo = node.lo.cwiseMin(v);
      node.hi = node.hi.cwiseMax(v);
    }
  }
  const int index = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= kLeafSize) {
    nodes_[index].left = begin;
    nodes_[index].count = end - begin;
    return index;
  }
  Vec3 clo = Vec3::Constant(kInf), chi = Vec3::Constant(-kInf);
  for (int i = begin; i < end; ++i) {
    clo = clo.cwiseMin(centroids_[order_[i]]);
    chi = chi.cwiseMax(centroids_[order_[i]]);
  }
  int axis = 0;
  (chi - clo).maxCoeff(&axis);
  const int mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) { return centroids_[a][axis] < centroids_[b][axis]; });
  // Degenerate spread (all centroids equal) still splits by index, so the
  // recursion always terminates.
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[index].left = left;
  nodes_[index].right = right;
  nodes_[index].count = 0;
  return index;
}

std::optional<HitRecord> Bvh::intersect(const OrientedPoint& tau, Real t_min) const {
  if (nodes_.empty()) return std::nullopt;
  const Vec3& orig = tau.p;
  const Vec3& dir = tau.v.vec();
  const Vec3 inv_dir(1 / dir.x(), 1 / dir.y(), 1 / dir.z());

  Real best_t = kInf;
  int best_face = -1;
  int stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (!box_hit(node.lo, node.hi, orig, inv_dir, best_t)) continue;
    if (node.count > 0) {
      for (int i = node.left; i < node.left + node.count; ++i) {
        const int f = order_[i];
        const auto t = ray_triangle(orig, dir, mesh_->face_vertex(f, 0),
                                    mesh_->face_vertex(f, 1), mesh_->face_vertex(f, 2), t_min);
        if (t && *t < best_t) {
          best_t = *t;
          best_face = f;
        }
      }
    } else {
      stack[top++] = node.left;
      stack[top++] = node.right;
    }
  }
  if (best_face < 0) return std::nullopt;
  HitRecord hit;
  hit.t = best_t;
  hit.point = orig + best_t * dir;
  hit.normal = UnitVec::unchecked(mesh_->face_normals[best_face]);
  hit.face_id = best_face;
  return hit;
}

std::optional<HitRecord> Bvh::intersect_bruteforce(const OrientedPoint& tau,
                                                   Real t_min) const {
  Real best_t = kInf;
  int best_face = -1;
  for (int f = 0; f < mesh_->face_count(); ++f) {
    const auto t = ray_triangle(tau.p, tau.v.vec(), mesh_->face_vertex(f, 0),
                                mesh_->face_vertex(f, 1), mesh_->face_vertex(f, 2), t_min);
    if (t && *t < best_t) {
      best_t = *t;
      best_face = f;
    }
  }
  if (best_face < 0) return std::nullopt;
  HitRecord hit;
  hit.t = best_t;
  hit.point = tau.p + best_t * tau.v.vec();
  hit.normal = UnitVec::unchecked(mesh_->face_normals[best_face]);
  hit.face_id = best_face;
  return hit;
}

std::optional<HitRecord> ray_intersect(const Bvh& bvh, const OrientedPoint& tau) {
  return bvh.intersect(tau);
}

}  // namespace ddf
