// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/losses.hpp"

#include <algorithm>

namespace ddf {

Real loss_min_distance(const FieldSample& pred, const LabeledSample& gt) {
  if (!gt.xi_gt) return 0;
  const Real d_hat = depth_argmax(pred).depth;
  const Real err = d_hat - gt.d_gt;
  return err * err;
}

Real loss_visibility(Real pred_xi, int xi_gt) {
  const Real p = std::clamp(pred_xi, Real(1e-7), Real(1 - 1e-7));
  return xi_gt ? -std::log(p) : -std::log(1 - p);
}

Real loss_normals(const UnitVec& pred_normal, const UnitVec& n_gt, int xi_gt) {
  if (!xi_gt) return 0;
  return -std::abs(n_gt.dot(pred_normal.vec()));
}

namespace {

/// Central difference along the ray direction of component i's depth;
/// nullopt when a probe loses visibility or the component goes non-finite.
std::optional<Real> along_ray_depth_slope(const FieldOracle& field, const OrientedPoint& tau,
                                          int component, Real h) {
  const Vec3 step = h * tau.v.vec();
  const FieldSample fwd = field.sample({tau.p + step, tau.v});
  const FieldSample bwd = field.sample({tau.p - step, tau.v});
  if (!fwd.visible() || !bwd.visible()) return std::nullopt;
  if (component >= fwd.k() || component >= bwd.k()) return std::nullopt;
  const Real df = fwd.components[component].depth;
  const Real db = bwd.components[component].depth;
  if (!std::isfinite(df) || !std::isfinite(db)) return std::nullopt;
  return (df - db) / (2 * h);
}

}  // namespace

Real loss_directed_eikonal(const FieldOracle& field, const OrientedPoint& tau, int xi_gt,
                           const FdConfig& cfg, const LossWeights& weights) {
  Real depth_term = 0;
  if (xi_gt) {
    const FieldSample center = field.sample(tau);
    for (int i = 0; i < center.k(); ++i) {
      const auto slope = along_ray_depth_slope(field, tau, i, cfg.h_p);
      if (!slope) continue;
      const Real r = *slope + 1;
      depth_term += r * r;
    }
  }
  const Vec3 step = cfg.h_p * tau.v.vec();
  const Real xi_slope = (field.sample({tau.p + step, tau.v}).xi -
                         field.sample({tau.p - step, tau.v}).xi) /
                        (2 * cfg.h_p);
  return weights.gamma_E_d * depth_term + weights.gamma_E_xi * xi_slope * xi_slope;
}

Real loss_weight_variance(const std::vector<Real>& weights) {
  Real prod = 1;
  for (Real w : weights) prod *= w;
  return prod;
}

Real loss_weight_transition(const FieldOracle& field, const OrientedPoint& tau,
                            const UnitVec& n_gt, Real epsilon_T, const FdConfig& cfg) {
  RowVec3 grad_w;
  for (int a = 0; a < 3; ++a) {
    Vec3 step = Vec3::Zero();
    step[a] = cfg.h_p;
    const FieldSample fwd = field.sample({tau.p + step, tau.v});
    const FieldSample bwd = field.sample({tau.p - step, tau.v});
    const Real wf = fwd.k() > 0 ? fwd.components[0].weight : 1;
    const Real wb = bwd.k() > 0 ? bwd.components[0].weight : 1;
    grad_w[a] = (wf - wb) / (2 * cfg.h_p);
  }
  const Real speed = std::abs(grad_w.dot(n_gt.vec()));
  const Real shortfall = std::max(Real(0), epsilon_T - speed);
  return shortfall * shortfall;
}

Real loss_visibility_variance(Real xi) { return xi * (1 - xi); }

LossBreakdown total_shape_loss(const FieldOracle& field,
                               const std::vector<LabeledSample>& batch,
                               const LossWeights& weights, const FdConfig& cfg) {
  LossBreakdown sum;
  if (batch.empty()) return sum;

  for (const auto& gt : batch) {
    const bool sto = gt.stype == SampleType::S || gt.stype == SampleType::T ||
                     gt.stype == SampleType::O;
    const bool au = gt.stype == SampleType::A || gt.stype == SampleType::U;
    const bool st = gt.stype == SampleType::S || gt.stype == SampleType::T;

    const FieldSample pred = field.sample(gt.tau);
    const Real gamma_d = au ? 2 * weights.gamma_d : weights.gamma_d;
    sum.min_distance += gamma_d * loss_min_distance(pred, gt);
    sum.visibility += weights.gamma_xi * loss_visibility(pred.xi, gt.xi_gt);
    sum.visibility_variance += weights.gamma_V_xi * loss_visibility_variance(pred.xi);

    if (!sto) {
      if (gt.xi_gt && gt.n_gt) {
        const auto grad = grad_p(field, gt.tau, cfg);
        if (grad.ok()) {
          const auto normal = normal_from_gradient(grad.value, gt.tau.v);
          if (normal.ok())
            sum.normals += weights.gamma_n * loss_normals(normal.value, *gt.n_gt, gt.xi_gt);
        }
      }
      sum.directed_eikonal += loss_directed_eikonal(field, gt.tau, gt.xi_gt, cfg, weights);
      std::vector<Real> w(pred.k());
      for (int i = 0; i < pred.k(); ++i) w[i] = pred.components[i].weight;
      sum.weight_variance += weights.gamma_V * loss_weight_variance(w);
    }
    if (st && gt.n_gt)
      sum.weight_transition +=
          weights.gamma_T *
          loss_weight_transition(field, gt.tau, *gt.n_gt, weights.epsilon_T, cfg);
  }

  const Real inv_n = Real(1) / batch.size();
  sum.min_distance *= inv_n;
  sum.visibility *= inv_n;
  sum.normals *= inv_n;
  sum.directed_eikonal *= inv_n;
  sum.weight_variance *= inv_n;
  sum.weight_transition *= inv_n;
  sum.visibility_variance *= inv_n;
  sum.total = sum.min_distance + sum.visibility + sum.normals + sum.directed_eikonal +
              sum.weight_variance + sum.weight_transition + sum.visibility_variance;
  return sum;
}

}  // namespace ddf
