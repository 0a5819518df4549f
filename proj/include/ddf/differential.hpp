// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ddf/field.hpp"
#include "ddf/rng.hpp"
#include "ddf/types.hpp"

namespace ddf {

/// Central finite-difference configuration. Exact fields expose no autodiff
/// surface, so gradients are realized as central differences with
/// discontinuity-straddle detection.
struct FdConfig {
  Real h_p = 1e-4;  ///< positional step
  Real h_v = 1e-4;  ///< directional step (applied before re-normalizing v)
};

enum class ProbeStatus {
  ok,
  not_visible,            ///< a probe point lost visibility
  component_switch,       ///< i* differed across probes (DiscontinuityStraddled)
  degenerate_normal,      ///< gradient norm below threshold
};

template <typename T>
struct ProbeResult {
  ProbeStatus status = ProbeStatus::ok;
  T value{};
  bool ok() const { return status == ProbeStatus::ok; }
};

/// d(depth_argmax)/dp by central differences. Every probe must be visible
/// with the same argmax component as the center; otherwise the stencil
/// straddles a discontinuity and the gradient is meaningless.
ProbeResult<RowVec3> grad_p(const FieldOracle& field, const OrientedPoint& tau,
                            const FdConfig& cfg = {});

/// d(depth)/dv with v re-normalized at each probe, so grad_v . v = 0 holds by
/// construction.
ProbeResult<RowVec3> grad_v(const FieldOracle& field, const OrientedPoint& tau,
                            const FdConfig& cfg = {});

/// Surface normal from a depth gradient: unit, sign chosen so n.v < 0.
ProbeResult<UnitVec> normal_from_gradient(const RowVec3& grad, const UnitVec& v);

struct EikonalReport {
  Real residual = 0;   ///< grad_p d . v + 1 (ideal 0)
  Real grad_norm = 0;  ///< ||grad_p d|| (ideal >= 1)
};

/// Directed eikonal check along the query ray.
ProbeResult<EikonalReport> eikonal_residual(const FieldOracle& field,
                                            const OrientedPoint& tau,
                                            const FdConfig& cfg = {});

/// FD directional derivative of xi along v. Zero away from surfaces; spikes
/// of magnitude ~1/(2h) where the stencil straddles a hit point (reported,
/// never asserted).
Real visibility_residual(const FieldOracle& field, const OrientedPoint& tau,
                         const FdConfig& cfg = {});

/// grad_v d - d * grad_p d * (I - v v^T); the gradient-consistency defect.
ProbeResult<RowVec3> grad_consistency_residual(const FieldOracle& field,
                                               const OrientedPoint& tau,
                                               const FdConfig& cfg = {});

/// First- and second-order local geometry at the surface point seen from tau.
struct DifferentialReport {
  RowVec3 grad_p = RowVec3::Zero();
  RowVec3 grad_v = RowVec3::Zero();
  Mat3 hessian_p = Mat3::Zero();
  UnitVec normal = UnitVec::unchecked(Vec3::UnitZ());
  UnitVec tangent_x = UnitVec::unchecked(Vec3::UnitX());
  UnitVec tangent_y = UnitVec::unchecked(Vec3::UnitY());
  Mat2 second_form = Mat2::Zero();
  Mat2 metric_raw = Mat2::Identity();  ///< diagnostic only; curvature uses g = I
  Real gaussian_curv = 0;
  Real mean_curv = 0;
};

/// Builds the full report: FD gradient/Hessian, a deterministic tangent basis
/// (Gaussian draws seeded from the query position, Gram-Schmidt against n),
/// shape tensor II_ij = (t_j^T H t_i)(n.v), curvatures det(II) and tr(II).
ProbeResult<DifferentialReport> differential_report(const FieldOracle& field,
                                                    const OrientedPoint& tau,
                                                    const FdConfig& cfg = {});

}  // namespace ddf
