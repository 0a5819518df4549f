// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ddf/field.hpp"
#include "ddf/types.hpp"

namespace ddf {

/// Object-to-world placement of a part: p_world = scale * R * p_obj + t.
/// Applying it to an oriented point converts world queries to object
/// coordinates; object-space depths multiply by `scale` back to world units.
struct RigidScale {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
  Real scale = 1;

  static RigidScale identity() { return {}; }

  void validate() const {
    if (!(scale > 0)) throw std::invalid_argument("RigidScale: scale must be > 0");
    if (((rotation.transpose() * rotation) - Mat3::Identity()).norm() > 1e-9)
      throw std::invalid_argument("RigidScale: rotation is not orthonormal");
  }
};

struct TransformedPoint {
  OrientedPoint tau_obj;
  Real depth_rescale = 1;  ///< world depth = depth_rescale * object depth
};

inline TransformedPoint transform_oriented_point(const RigidScale& t,
                                                 const OrientedPoint& tau) {
  const Vec3 p_obj = t.rotation.transpose() * (tau.p - t.translation) / t.scale;
  const UnitVec v_obj = UnitVec::unchecked(t.rotation.transpose() * tau.v.vec());
  return {{p_obj, v_obj}, t.scale};
}

/// Soft union of N transformed fields: visibility is the complement-product
/// union; depth is a softmax blend that upweights near, visible parts.
class CompositeField : public FieldOracle {
 public:
  struct Part {
    RigidScale transform;
    const FieldOracle* field = nullptr;
  };

  CompositeField(std::vector<Part> parts, Real eta_t = 1e-2, Real epsilon_s = 1e-2,
                 Real far_depth = 8.0);

  Real visibility(const OrientedPoint& tau) const;

  struct DepthBlend {
    Real depth = kInf;
    bool any_visible = false;
  };
  DepthBlend depth(const OrientedPoint& tau) const;

  /// Softmax weights over parts for a given query (exposed for diagnostics).
  std::vector<Real> blend_weights(const OrientedPoint& tau) const;

  FieldSample sample(const OrientedPoint& tau) const override;

  Real eta_t() const { return eta_t_; }
  Real epsilon_s() const { return epsilon_s_; }
  int part_count() const { return static_cast<int>(parts_.size()); }

 private:
  struct PartQuery {
    Real xi = 0;
    Real world_depth = kInf;
  };
  std::vector<PartQuery> query_parts(const OrientedPoint& tau) const;

  std::vector<Part> parts_;
  Real eta_t_;
  Real epsilon_s_;
  Real far_depth_;  ///< finite stand-in for the +inf sentinel inside the blend
};

inline Real composite_visibility(const CompositeField& c, const OrientedPoint& tau) {
  return c.visibility(tau);
}

inline Real composite_depth(const CompositeField& c, const OrientedPoint& tau) {
  return c.depth(tau).depth;
}

/// Softmax of eta_t^-1 * xi_i / (epsilon_s + d_i); shared by composition, MDF
/// candidate selection, and explicit point-cloud sampling.
std::vector<Real> softmax_visibility_weights(const std::vector<Real>& xi,
                                             const std::vector<Real>& depth, Real eta_t,
                                             Real epsilon_s);

}  // namespace ddf
