// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/camera.hpp"

namespace ddf {

void Camera::validate() const {
  if (!(vertical_fov_deg > 0) || !(vertical_fov_deg < 180))
    throw std::invalid_argument("Camera: fov must be in (0, 180)");
  if (width < 1 || height < 1)
    throw std::invalid_argument("Camera: width and height must be >= 1");
  if ((look_at - position).norm() < 1e-12)
    throw std::invalid_argument("Camera: position equals look_at");
}

void Camera::basis(Vec3& forward, Vec3& right, Vec3& up_out) const {
  forward = (look_at - position).normalized();
  right = forward.cross(up).normalized();
  up_out = right.cross(forward);
}

Camera Camera::from_azel(Real azimuth_deg, Real elevation_deg, Real radius,
                         const Vec3& target) {
  const Real az = azimuth_deg * kPi / 180;
  const Real el = elevation_deg * kPi / 180;
  Camera cam;
  cam.position = target + radius * Vec3(std::cos(el) * std::cos(az),
                                        std::sin(el),
                                        std::cos(el) * std::sin(az));
  cam.look_at = target;
  return cam;
}

OrientedPoint pixel_ray(const Camera& camera, int px, int py) {
  Vec3 forward, right, up;
  camera.basis(forward, right, up);
  const Real tan_half = std::tan(0.5 * camera.vertical_fov_deg * kPi / 180);
  const Real aspect = Real(camera.width) / camera.height;
  const Real sx = (2 * (px + 0.5) / camera.width - 1) * tan_half * aspect;
  const Real sy = (1 - 2 * (py + 0.5) / camera.height) * tan_half;
  return {camera.position, UnitVec(forward + sx * right + sy * up)};
}

}  // namespace ddf
