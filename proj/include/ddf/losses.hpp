// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ddf/differential.hpp"
#include "ddf/field.hpp"
#include "ddf/sampler.hpp"
#include "ddf/types.hpp"

namespace ddf {

/// Shape-fitting objective weights. gamma_d is doubled on A and U samples
/// inside total_shape_loss.
struct LossWeights {
  Real gamma_d = 5;
  Real gamma_xi = 1;
  Real gamma_n = 10;
  Real gamma_V = 1;
  Real gamma_E_d = 0.05;
  Real gamma_E_xi = 0.01;
  Real gamma_T = 0.25;
  Real gamma_V_xi = 0.25;
  Real epsilon_T = 0.1;  ///< desired weight-transition speed
};

/// xi_gt * |d_hat_{i*} - d_gt|^2
Real loss_min_distance(const FieldSample& pred, const LabeledSample& gt);

/// Binary cross entropy, prediction clamped to [1e-7, 1 - 1e-7].
Real loss_visibility(Real pred_xi, int xi_gt);

/// -xi_gt * |n_gt . n_hat|
Real loss_normals(const UnitVec& pred_normal, const UnitVec& n_gt, int xi_gt);

/// gamma_E_d * sum_i xi_gt [grad_p d_i . v + 1]^2 + gamma_E_xi [grad_p xi . v]^2,
/// directional derivatives along v by central FD. Depth components whose
/// FD probes lose visibility are masked out; the stencil straddles a
/// discontinuity there and the slope is meaningless.
Real loss_directed_eikonal(const FieldOracle& field, const OrientedPoint& tau, int xi_gt,
                           const FdConfig& cfg, const LossWeights& weights);

/// prod_i w_i (Bernoulli variance for K = 2).
Real loss_weight_variance(const std::vector<Real>& weights);

/// max(0, epsilon_T - |grad_p w1 . n|)^2, grad by central FD.
Real loss_weight_transition(const FieldOracle& field, const OrientedPoint& tau,
                            const UnitVec& n_gt, Real epsilon_T, const FdConfig& cfg);

/// xi (1 - xi); the visibility-entropy regularizer (weight applied in the
/// total).
Real loss_visibility_variance(Real xi);

/// Per-term weighted means over the batch, with per-type applicability masks.
struct LossBreakdown {
  Real min_distance = 0;
  Real visibility = 0;
  Real normals = 0;
  Real directed_eikonal = 0;
  Real weight_variance = 0;
  Real weight_transition = 0;
  Real visibility_variance = 0;
  Real total = 0;
};

/// Full objective: gamma_d L_d + gamma_xi L_xi + gamma_n L_n + L_DE + L_W,
/// masked per sample type: no L_DE / L_n / L_V on S/T/O; L_T only on S/T;
/// gamma_d doubled on A/U. Every reported term is already weight-scaled and
/// averaged over the full batch.
LossBreakdown total_shape_loss(const FieldOracle& field,
                               const std::vector<LabeledSample>& batch,
                               const LossWeights& weights, const FdConfig& cfg = {});

}  // namespace ddf
