// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <variant>

#include "ddf/differential.hpp"
#include "ddf/field.hpp"
#include "ddf/rng.hpp"
#include "ddf/types.hpp"

namespace ddf {

/// Non-negative RGB radiance triple (linear units).
using Spectrum = Eigen::Array3d;

struct Lambertian {
  Spectrum rho_a = Spectrum::Ones();
};

struct Mirror {
  Spectrum rho_m = Spectrum::Ones();
};

/// Phong-style mix of a diffuse and a specular lobe. alpha follows the
/// projected-Gaussian covariance convention, not standard Phong.
struct Glossy {
  Spectrum rho_a = Spectrum::Ones();
  Spectrum rho_m = Spectrum::Ones();
  Real eta_l = 0.5;  ///< diffuse mixture weight, in (0,1)
  Real alpha = 1;    ///< specular exponent, >= 0
};

using Material = std::variant<Lambertian, Mirror, Glossy>;

/// Emission plus environment light. The environment variants cover the test
/// scenes: constant, vertical gradient (lerp by direction z), two-tone sky
/// (upper/lower hemisphere).
struct Lighting {
  enum class EnvKind { constant, vertical_gradient, two_tone };

  Spectrum emission = Spectrum::Zero();  ///< constant M_L
  EnvKind env_kind = EnvKind::constant;
  Spectrum env_a = Spectrum::Ones();  ///< constant value / top color
  Spectrum env_b = Spectrum::Zero();  ///< bottom color

  Spectrum environment(const UnitVec& v) const {
    switch (env_kind) {
      case EnvKind::constant: return env_a;
      case EnvKind::vertical_gradient: {
        const Real t = 0.5 * (v.z() + 1);
        return t * env_a + (1 - t) * env_b;
      }
      case EnvKind::two_tone: return v.z() >= 0 ? env_a : env_b;
    }
    return env_a;
  }

  Spectrum emitted(const Vec3&, const UnitVec&) const { return emission; }
};

struct TraceConfig {
  int n_bounces = 3;
  int mc_samples = 256;
  std::uint64_t seed = 0;
  Real blur_sigma = 1;
  Real gamma = 2.2;
  Real gauss_clamp_lo = 1e-6;  ///< clamping bounds keeping the projected-
  Real gauss_clamp_hi = 1e6;   ///< Gaussian density numerically stable
};

/// The full path-traceable scene field: geometry as a DDF plus analytic
/// appearance and lighting.
struct Iaddf {
  const FieldOracle* field = nullptr;
  const Domain* domain = nullptr;
  Material material;
  Lighting lighting;
  FdConfig fd;
};

struct TraceStats {
  long degenerate_normals = 0;  ///< bounces dropped for unusable gradients
  long gauss_fallbacks = 0;     ///< specular draws that fell back to uniform
};

/// omega - 2 (omega . n) n
inline UnitVec reflect(const UnitVec& omega, const UnitVec& n) {
  return UnitVec::unchecked(omega.vec() - 2 * omega.dot(n.vec()) * n.vec());
}

/// BRDF value about n, with omega_i the direction light travels INTO the
/// surface point (the recursion passes -v_n) and omega_o pointing back to
/// the viewer. Directions outside their valid hemispheres give zero. The
/// mirror delta evaluates to rho_m/|w_r.n| on exact-reflection queries only.
Spectrum brdf_eval(const Material& mat, const Vec3& q, const UnitVec& omega_i,
                   const UnitVec& omega_o, const UnitVec& n);

struct BounceSample {
  UnitVec dir = UnitVec::unchecked(Vec3::UnitZ());
  Real inv_density = 1;
  bool gauss_fallback = false;
};

/// Draws the next bounce direction v_n ~ Psi(q, omega_o | n) and its inverse
/// density. Glossy picks the uniform mode with probability eta_l, otherwise a
/// projected Gaussian about the reflection direction (resampled up to 16
/// times when it lands below the hemisphere, then uniform fallback).
BounceSample sample_bounce(const Material& mat, const Vec3& q, const UnitVec& omega_o,
                           const UnitVec& n, const TraceConfig& cfg, Rng& rng);

/// Single-sample recursive radiance estimate along (p, v) at bounce `level`.
Spectrum trace(const Iaddf& scene, const Vec3& p, const UnitVec& v, int level,
               const TraceConfig& cfg, Rng& rng, TraceStats* stats = nullptr);

/// Full per-pixel estimate: primary DDF query, m importance-weighted bounce
/// samples, plus emission. Mirrors collapse to one sample (the bounce is
/// deterministic).
Spectrum path_trace_pixel(const Iaddf& scene, const OrientedPoint& primary,
                          const TraceConfig& cfg, Rng& rng, TraceStats* stats = nullptr);

}  // namespace ddf
