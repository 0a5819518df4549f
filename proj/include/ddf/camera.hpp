// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ddf/types.hpp"

namespace ddf {

/// Pinhole camera, look-at parameterization. Azimuth/elevation/radius scenes
/// convert through from_azel (camera looking at the target).
struct Camera {
  Vec3 position = Vec3(0, 0, -2.5);
  Vec3 look_at = Vec3::Zero();
  Vec3 up = Vec3::UnitY();
  Real vertical_fov_deg = 40;
  int width = 256;
  int height = 256;

  void validate() const;

  /// Orthonormal view frame: forward, right, true-up.
  void basis(Vec3& forward, Vec3& right, Vec3& up_out) const;

  static Camera from_azel(Real azimuth_deg, Real elevation_deg, Real radius,
                          const Vec3& target = Vec3::Zero());
};

/// Ray through the center of pixel (px, py); unit direction.
OrientedPoint pixel_ray(const Camera& camera, int px, int py);

}  // namespace ddf
