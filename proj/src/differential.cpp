// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/differential.hpp"

#include <cstring>

namespace ddf {

namespace {

struct Probe {
  ProbeStatus status = ProbeStatus::not_visible;
  Real depth = kInf;
  bool usable() const { return status == ProbeStatus::ok; }
};

/// Depth at tau if visible and the argmax component matches `want_index`.
Probe probe_depth(const FieldOracle& field, const OrientedPoint& tau, int want_index) {
  const FieldSample s = field.sample(tau);
  if (!s.visible()) return {ProbeStatus::not_visible, kInf};
  const DepthArgmax am = depth_argmax(s);
  if (am.index != want_index) return {ProbeStatus::component_switch, am.depth};
  return {ProbeStatus::ok, am.depth};
}

ProbeStatus worse(const Probe& a, const Probe& b) {
  if (!a.usable()) return a.status;
  return b.status;
}

std::uint64_t position_seed(const Vec3& p) {
  std::uint64_t h = 0x2545f4914f6cdd1dull;
  for (int a = 0; a < 3; ++a) {
    std::uint64_t bits;
    const Real x = p[a];
    std::memcpy(&bits, &x, sizeof(bits));
    h = mix64(h ^ bits);
  }
  return h;
}

}  // namespace

ProbeResult<RowVec3> grad_p(const FieldOracle& field, const OrientedPoint& tau,
                            const FdConfig& cfg) {
  const FieldSample center = field.sample(tau);
  if (!center.visible()) return {ProbeStatus::not_visible, RowVec3::Zero()};
  const int i0 = depth_argmax(center).index;

  RowVec3 grad;
  for (int a = 0; a < 3; ++a) {
    Vec3 step = Vec3::Zero();
    step[a] = cfg.h_p;
    const Probe fwd = probe_depth(field, {tau.p + step, tau.v}, i0);
    const Probe bwd = probe_depth(field, {tau.p - step, tau.v}, i0);
    if (!fwd.usable() || !bwd.usable()) return {worse(fwd, bwd), RowVec3::Zero()};
    grad[a] = (fwd.depth - bwd.depth) / (2 * cfg.h_p);
  }
  return {ProbeStatus::ok, grad};
}

ProbeResult<RowVec3> grad_v(const FieldOracle& field, const OrientedPoint& tau,
                            const FdConfig& cfg) {
  const FieldSample center = field.sample(tau);
  if (!center.visible()) return {ProbeStatus::not_visible, RowVec3::Zero()};
  const int i0 = depth_argmax(center).index;

  RowVec3 grad;
  for (int a = 0; a < 3; ++a) {
    Vec3 step = Vec3::Zero();
    step[a] = cfg.h_v;
    // Perturb the raw direction, then re-normalize: the derivative of
    // d(p, v/||v||) is tangential by construction (grad_v d . v = 0).
    const Probe fwd = probe_depth(field, {tau.p, UnitVec(tau.v.vec() + step)}, i0);
    const Probe bwd = probe_depth(field, {tau.p, UnitVec(tau.v.vec() - step)}, i0);
    if (!fwd.usable() || !bwd.usable()) return {worse(fwd, bwd), RowVec3::Zero()};
    grad[a] = (fwd.depth - bwd.depth) / (2 * cfg.h_v);
  }
  return {ProbeStatus::ok, grad};
}

ProbeResult<UnitVec> normal_from_gradient(const RowVec3& grad, const UnitVec& v) {
  const Real norm = grad.norm();
  if (norm < 1e-9)
    return {ProbeStatus::degenerate_normal, UnitVec::unchecked(Vec3::UnitZ())};
  Vec3 n = grad.transpose() / norm;
  if (n.dot(v.vec()) > 0) n = -n;  // sign rule: point back toward the query
  return {ProbeStatus::ok, UnitVec::unchecked(n)};
}

ProbeResult<EikonalReport> eikonal_residual(const FieldOracle& field,
                                            const OrientedPoint& tau, const FdConfig& cfg) {
  const FieldSample center = field.sample(tau);
  if (!center.visible()) return {ProbeStatus::not_visible, {}};
  const int i0 = depth_argmax(center).index;

  // grad_p d . v realized as the directional derivative along the ray, where
  // central FD is exact (d is linear in s); the axis-stencil gradient serves
  // the norm bound.
  const Vec3 step = cfg.h_p * tau.v.vec();
  const Probe fwd = probe_depth(field, {tau.p + step, tau.v}, i0);
  const Probe bwd = probe_depth(field, {tau.p - step, tau.v}, i0);
  if (!fwd.usable() || !bwd.usable()) return {worse(fwd, bwd), {}};

  const auto grad = grad_p(field, tau, cfg);
  if (!grad.ok()) return {grad.status, {}};

  EikonalReport report;
  report.residual = (fwd.depth - bwd.depth) / (2 * cfg.h_p) + 1;
  report.grad_norm = grad.value.norm();
  return {ProbeStatus::ok, report};
}

Real visibility_residual(const FieldOracle& field, const OrientedPoint& tau,
                         const FdConfig& cfg) {
  const Vec3 step = cfg.h_p * tau.v.vec();
  const Real fwd = field.sample({tau.p + step, tau.v}).xi;
  const Real bwd = field.sample({tau.p - step, tau.v}).xi;
  return (fwd - bwd) / (2 * cfg.h_p);
}

ProbeResult<RowVec3> grad_consistency_residual(const FieldOracle& field,
                                               const OrientedPoint& tau,
                                               const FdConfig& cfg) {
  const FieldSample center = field.sample(tau);
  if (!center.visible()) return {ProbeStatus::not_visible, RowVec3::Zero()};
  const Real d = depth_argmax(center).depth;

  const auto gp = grad_p(field, tau, cfg);
  if (!gp.ok()) return {gp.status, RowVec3::Zero()};
  const auto gv = grad_v(field, tau, cfg);
  if (!gv.ok()) return {gv.status, RowVec3::Zero()};

  const Mat3 proj = Mat3::Identity() - tau.v.vec() * tau.v.vec().transpose();
  const RowVec3 residual = gv.value - d * gp.value * proj;
  return {ProbeStatus::ok, residual};
}

ProbeResult<DifferentialReport> differential_report(const FieldOracle& field,
                                                    const OrientedPoint& tau,
                                                    const FdConfig& cfg) {
  DifferentialReport report;

  const FieldSample center = field.sample(tau);
  if (!center.visible()) return {ProbeStatus::not_visible, report};
  const int i0 = depth_argmax(center).index;
  const Real d0 = depth_argmax(center).depth;

  const auto gp = grad_p(field, tau, cfg);
  if (!gp.ok()) return {gp.status, report};
  const auto gv = grad_v(field, tau, cfg);
  if (!gv.ok()) return {gv.status, report};
  const auto nrm = normal_from_gradient(gp.value, tau.v);
  if (!nrm.ok()) return {nrm.status, report};
  report.grad_p = gp.value;
  report.grad_v = gv.value;
  report.normal = nrm.value;

  const Real h = cfg.h_p;
  const auto at = [&](int a, int b, int sa, int sb) -> Probe {
    Vec3 p = tau.p;
    p[a] += sa * h;
    if (b >= 0) p[b] += sb * h;
    return probe_depth(field, {p, tau.v}, i0);
  };

  Mat3 hess;
  for (int a = 0; a < 3; ++a) {
    const Probe fwd = at(a, -1, +1, 0);
    const Probe bwd = at(a, -1, -1, 0);
    if (!fwd.usable() || !bwd.usable()) return {worse(fwd, bwd), report};
    hess(a, a) = (fwd.depth - 2 * d0 + bwd.depth) / (h * h);
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const Probe pp = at(a, b, +1, +1);
      const Probe pm = at(a, b, +1, -1);
      const Probe mp = at(a, b, -1, +1);
      const Probe mm = at(a, b, -1, -1);
      if (!pp.usable() || !pm.usable() || !mp.usable() || !mm.usable()) {
        const Probe bad = !pp.usable() ? pp : (!pm.usable() ? pm : (!mp.usable() ? mp : mm));
        return {bad.status, report};
      }
      hess(a, b) = hess(b, a) =
          (pp.depth - pm.depth - mp.depth + mm.depth) / (4 * h * h);
    }
  }
  report.hessian_p = hess;

  // Tangent frame: Gaussian draws seeded from the query position make the
  // report reproducible without threading an RNG through callers.
  Rng rng(position_seed(tau.p));
  const Vec3 n = report.normal.vec();
  Vec3 tx;
  do {
    const Vec3 g = gaussian3(rng, 1);
    tx = g - g.dot(n) * n;
  } while (tx.norm() < 1e-9);
  tx.normalize();
  const Vec3 ty = n.cross(tx);
  report.tangent_x = UnitVec::unchecked(tx);
  report.tangent_y = UnitVec::unchecked(ty);

  const Real nv = n.dot(tau.v.vec());
  Mat2 second;
  const Vec3 t[2] = {tx, ty};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      second(i, j) = (t[j].transpose() * hess * t[i])(0, 0) * nv;
  report.second_form = 0.5 * (second + second.transpose());  // FD symmetrization

  // Raw first fundamental form, diagnostic only; c_k = grad_p d . t_k is zero
  // in exact arithmetic, so curvature below uses the theoretical g = I.
  Mat2 graw;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Real ci = gp.value.dot(t[i]);
      const Real cj = gp.value.dot(t[j]);
      graw(i, j) = (i == j ? 1 : 0) + ci * cj + ci * tau.v.dot(t[j]) + cj * tau.v.dot(t[i]);
    }
  report.metric_raw = graw;

  report.gaussian_curv = report.second_form.determinant();
  report.mean_curv = report.second_form.trace();
  return {ProbeStatus::ok, report};
}

}  // namespace ddf
