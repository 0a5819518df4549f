// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/compose.hpp"

#include <algorithm>

namespace ddf {

std::vector<Real> softmax_visibility_weights(const std::vector<Real>& xi,
                                             const std::vector<Real>& depth, Real eta_t,
                                             Real epsilon_s) {
  const size_t n = xi.size();
  std::vector<Real> logits(n);
  for (size_t i = 0; i < n; ++i) {
    // xi = 0 forces a zero logit even against the +inf depth sentinel.
    logits[i] = xi[i] <= 0 ? Real(0) : xi[i] / (eta_t * (epsilon_s + depth[i]));
    if (!std::isfinite(logits[i])) logits[i] = 0;
  }
  const Real top = *std::max_element(logits.begin(), logits.end());
  std::vector<Real> w(n);
  Real sum = 0;
  for (size_t i = 0; i < n; ++i) {
    w[i] = std::exp(logits[i] - top);
    sum += w[i];
  }
  for (auto& wi : w) wi /= sum;
  return w;
}

CompositeField::CompositeField(std::vector<Part> parts, Real eta_t, Real epsilon_s,
                               Real far_depth)
    : parts_(std::move(parts)), eta_t_(eta_t), epsilon_s_(epsilon_s),
      far_depth_(far_depth) {
  if (parts_.empty()) throw std::invalid_argument("CompositeField: needs >= 1 part");
  if (!(eta_t_ > 0) || !(epsilon_s_ > 0))
    throw std::invalid_argument("CompositeField: eta_t and epsilon_s must be > 0");
  for (const auto& part : parts_) {
    part.transform.validate();
    if (!part.field) throw std::invalid_argument("CompositeField: null part field");
  }
}

std::vector<CompositeField::PartQuery> CompositeField::query_parts(
    const OrientedPoint& tau) const {
  std::vector<PartQuery> out(parts_.size());
  for (size_t i = 0; i < parts_.size(); ++i) {
    const TransformedPoint t = transform_oriented_point(parts_[i].transform, tau);
    const FieldSample s = parts_[i].field->sample(t.tau_obj);
    out[i].xi = s.xi;
    out[i].world_depth = depth_argmax(s).depth * t.depth_rescale;
  }
  return out;
}

Real CompositeField::visibility(const OrientedPoint& tau) const {
  Real prod = 1;
  for (const auto& q : query_parts(tau)) prod *= (1 - q.xi);
  return 1 - prod;
}

CompositeField::DepthBlend CompositeField::depth(const OrientedPoint& tau) const {
  const auto parts = query_parts(tau);
  std::vector<Real> xi(parts.size()), d(parts.size());
  bool any = false;
  for (size_t i = 0; i < parts.size(); ++i) {
    xi[i] = parts[i].xi;
    d[i] = parts[i].world_depth;
    any = any || parts[i].xi > 0.5;
  }
  const auto w = softmax_visibility_weights(xi, d, eta_t_, epsilon_s_);
  Real blend = 0;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (w[i] == 0) continue;  // underflowed weight on a +inf sentinel
    blend += w[i] * (xi[i] > 0.5 ? d[i] : std::min(d[i], far_depth_));
  }
  return {blend, any};
}

std::vector<Real> CompositeField::blend_weights(const OrientedPoint& tau) const {
  const auto parts = query_parts(tau);
  std::vector<Real> xi(parts.size()), d(parts.size());
  for (size_t i = 0; i < parts.size(); ++i) {
    xi[i] = parts[i].xi;
    d[i] = parts[i].world_depth;
  }
  return softmax_visibility_weights(xi, d, eta_t_, epsilon_s_);
}

FieldSample CompositeField::sample(const OrientedPoint& tau) const {
  const auto parts = query_parts(tau);
  Real prod = 1;
  std::vector<Real> xi(parts.size()), d(parts.size());
  bool any = false;
  for (size_t i = 0; i < parts.size(); ++i) {
    prod *= (1 - parts[i].xi);
    xi[i] = parts[i].xi;
    d[i] = parts[i].world_depth;
    any = any || parts[i].xi > 0.5;
  }
  FieldSample out;
  out.xi = 1 - prod;
  if (!any) {
    out.components = {{kInf, 1}};
    return out;
  }
  const auto w = softmax_visibility_weights(xi, d, eta_t_, epsilon_s_);
  Real blend = 0;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (w[i] == 0) continue;
    blend += w[i] * (xi[i] > 0.5 ? d[i] : std::min(d[i], far_depth_));
  }
  out.components = {{blend, 1}};
  return out;
}

}  // namespace ddf
