// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/udf.hpp"

#include <algorithm>
#include <numeric>

#include "ddf/compose.hpp"
#include "ddf/differential.hpp"

namespace ddf {

BruteforceUdf udf_bruteforce(const FieldOracle& field, const Vec3& p, int n_dirs) {
  BruteforceUdf best;
  bool found = false;
  for (int i = 0; i < n_dirs; ++i) {
    const UnitVec v = fibonacci_direction(i, n_dirs);
    const FieldSample s = field.sample({p, v});
    if (!s.visible()) continue;
    const Real d = depth_argmax(s).depth;
    if (!found || d < best.udf) {
      best = {d, v};
      found = true;
    }
  }
  if (!found) throw NoSurfaceVisible("udf_bruteforce: no visible direction at query point");
  return best;
}

std::vector<Real> mdf_weights(const std::vector<MdfCandidate>& candidates, Real eta_t,
                              Real epsilon_s, Real far_depth) {
  std::vector<Real> xi(candidates.size()), d(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    xi[i] = candidates[i].xi;
    d[i] = std::min(candidates[i].depth, far_depth);
  }
  return softmax_visibility_weights(xi, d, eta_t, epsilon_s);
}

namespace {

struct Eval {
  Real depth = kInf;   // clamped to far_depth for the loss
  Real xi = 0;
  Real data_term = 0;  // d - xi
  Vec3 normal = Vec3::Zero();
  bool has_normal = false;
};

Eval evaluate_direction(const FieldOracle& field, const Vec3& p, const UnitVec& v,
                        const UdfConfig& cfg, bool with_normal) {
  Eval e;
  const OrientedPoint tau{p, v};
  const FieldSample s = field.sample(tau);
  e.xi = s.xi;
  e.depth = depth_argmax(s).depth;
  const Real d_loss = std::min(e.depth, cfg.far_depth);
  e.data_term = d_loss - e.xi;
  if (with_normal && s.visible()) {
    const auto grad = grad_p(field, tau, FdConfig{});
    if (grad.ok()) {
      const auto n = normal_from_gradient(grad.value, v);
      if (n.ok()) {
        e.normal = n.value.vec();
        e.has_normal = true;
      }
    }
  }
  return e;
}

/// Loss terms involving candidate i only (coordinate-descent objective):
/// (1/K)(d - xi) + anneal * [(4 tau_n / (K^2 - K)) sum_{j != i} v_i.v_j
///   + (tau_d / K)(v_i.n + 1)^2].
/// The repulsion coefficient doubles the loss-definition one because v_i
/// appears in both (i, j) and (j, i) pairs of the full double sum. The
/// auxiliary terms anneal to zero across the refinement: they exist to shape
/// the search (anti-collapse, normal alignment), but at convergence they
/// displace candidates off the depth minimum by an angle growing like 1/d.
Real partial_loss(const FieldOracle& field, const Vec3& p, const UnitVec& vi,
                  const std::vector<UnitVec>& dirs, int index, Real anneal,
                  const UdfConfig& cfg) {
  const Real k = cfg.k_c;
  const Eval e = evaluate_direction(field, p, vi, cfg, anneal > 0);
  Real loss = e.data_term / k;
  if (anneal <= 0) return loss;
  Real repulse = 0;
  for (int j = 0; j < static_cast<int>(dirs.size()); ++j)
    if (j != index) repulse += vi.dot(dirs[j].vec());
  loss += anneal * (4 * cfg.tau_n / (k * k - k)) * repulse;
  if (e.has_normal) {
    const Real align = vi.dot(e.normal) + 1;
    loss += anneal * (cfg.tau_d / k) * align * align;
  }
  return loss;
}

}  // namespace

MdfResult mdf_optimize(const FieldOracle& field, const Vec3& p, const UdfConfig& cfg,
                       Rng& rng) {
  if (cfg.k_c < 2) throw std::invalid_argument("mdf_optimize: k_c must be >= 2");

  // Random rotation of the probe spread; keeps the optimization seeded but
  // avoids a fixed global direction bias.
  const UnitVec axis = uniform_sphere(rng);
  const Real angle = uniform_real(rng, 0, 2 * kPi);
  const Mat3 rot = Eigen::AngleAxis<Real>(angle, axis.vec()).toRotationMatrix();

  // Probe spread for the starting candidates. Exact binary xi offers no
  // gradient toward unseen geometry, so when no probe direction is visible
  // the spread densifies (up to the oracle budget) before giving up.
  int n_init = std::max(cfg.init_dirs, cfg.k_c);
  std::vector<std::pair<Real, UnitVec>> ranked;
  while (true) {
    ranked.clear();
    ranked.reserve(n_init);
    bool any_visible = false;
    for (int i = 0; i < n_init; ++i) {
      const UnitVec v = UnitVec::unchecked(rot * fibonacci_direction(i, n_init).vec());
      const Eval e = evaluate_direction(field, p, v, cfg, false);
      ranked.emplace_back(e.data_term, v);
      any_visible = any_visible || e.xi > 0.5;
    }
    if (any_visible) break;
    if (n_init >= cfg.oracle_dirs)
      throw NoSurfaceVisible("mdf_optimize: no visible direction in the probe spread");
    n_init = std::min(4 * n_init, cfg.oracle_dirs);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<UnitVec> dirs;
  dirs.reserve(cfg.k_c);
  for (int i = 0; i < cfg.k_c; ++i) dirs.push_back(ranked[i % ranked.size()].second);

  // Projected gradient descent with per-candidate adaptive steps; FD in the
  // local tangent plane, re-normalizing every proposal.
  std::vector<Real> step(cfg.k_c, cfg.step);
  const int total_iters = cfg.iters + cfg.polish_iters;
  for (int it = 0; it < total_iters; ++it) {
    // linear anneal: full auxiliary terms at the start, pure data term at the
    // end; the polish tail descends the data term alone so every candidate
    // co-locates on the depth minimum before the softmax blend
    const Real anneal = std::max(Real(0), 1 - Real(it + 1) / cfg.iters);
    if (it == cfg.iters)
      for (auto& si : step) si = std::max(si, cfg.step / 4);
    for (int i = 0; i < cfg.k_c; ++i) {
      Vec3 t1, t2;
      orthonormal_basis(dirs[i].vec(), t1, t2);
      const Real d = cfg.fd_delta;
      const Real g1 =
          (partial_loss(field, p, UnitVec(dirs[i].vec() + d * t1), dirs, i, anneal, cfg) -
           partial_loss(field, p, UnitVec(dirs[i].vec() - d * t1), dirs, i, anneal, cfg)) /
          (2 * d);
      const Real g2 =
          (partial_loss(field, p, UnitVec(dirs[i].vec() + d * t2), dirs, i, anneal, cfg) -
           partial_loss(field, p, UnitVec(dirs[i].vec() - d * t2), dirs, i, anneal, cfg)) /
          (2 * d);
      const Vec3 grad = g1 * t1 + g2 * t2;
      if (grad.norm() < 1e-12) continue;
      // normalized step: `step` is an angular scale, so progress does not
      // stall where the depth landscape is nearly flat
      const UnitVec proposal = UnitVec(dirs[i].vec() - step[i] * grad.normalized());
      const Real current = partial_loss(field, p, dirs[i], dirs, i, anneal, cfg);
      const Real proposed = partial_loss(field, p, proposal, dirs, i, anneal, cfg);
      if (proposed < current) {
        dirs[i] = proposal;
        step[i] = std::min(step[i] * 1.2, Real(0.5));
      } else {
        step[i] = std::max(step[i] * 0.5, Real(1e-5));
      }
    }
  }

  MdfResult out;
  out.candidates.resize(cfg.k_c);
  bool any_visible = false;
  for (int i = 0; i < cfg.k_c; ++i) {
    const Eval e = evaluate_direction(field, p, dirs[i], cfg, false);
    out.candidates[i] = {dirs[i], e.depth, e.xi};
    any_visible = any_visible || e.xi > 0.5;
  }
  if (!any_visible)
    throw NoSurfaceVisible("mdf_optimize: all candidates non-visible after refinement");

  out.weights = mdf_weights(out.candidates, cfg.eta_t, cfg.epsilon_s, cfg.far_depth);
  Vec3 blend_dir = Vec3::Zero();
  Real blend_udf = 0;
  for (int i = 0; i < cfg.k_c; ++i) {
    blend_dir += out.weights[i] * dirs[i].vec();
    if (out.weights[i] > 0)
      blend_udf += out.weights[i] * std::min(out.candidates[i].depth, cfg.far_depth);
  }
  out.v_star = UnitVec(blend_dir);
  out.udf = blend_udf;
  return out;
}

BruteforceUdf udf_bruteforce_refined(const FieldOracle& field, const Vec3& p, int n_dirs,
                                     int refine_iters) {
  BruteforceUdf best = udf_bruteforce(field, p, n_dirs);
  Real step = std::sqrt(4 * kPi / n_dirs);  // coarse-set spacing
  const Real diag = std::sqrt(Real(0.5));
  for (int it = 0; it < refine_iters && step > 1e-8; ++it) {
    Vec3 t1, t2;
    orthonormal_basis(best.dir.vec(), t1, t2);
    bool improved = false;
    // 8-direction compass: any strict descent direction projects positively
    // onto at least one probe, so the search cannot stall off-minimum
    const Vec3 probes[8] = {t1, -t1, t2, -t2, diag * (t1 + t2), diag * (t1 - t2),
                            diag * (-t1 + t2), diag * (-t1 - t2)};
    for (const Vec3& delta : probes) {
      const UnitVec cand = UnitVec(best.dir.vec() + step * delta);
      const FieldSample s = field.sample({p, cand});
      if (!s.visible()) continue;
      const Real d = depth_argmax(s).depth;
      if (d < best.udf) {
        best = {d, cand};
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

RowVec3 udf_bruteforce_gradient(const FieldOracle& field, const Vec3& p, int n_dirs,
                                Real h) {
  RowVec3 grad;
  for (int a = 0; a < 3; ++a) {
    Vec3 step = Vec3::Zero();
    step[a] = h;
    const Real fwd = udf_bruteforce_refined(field, p + step, n_dirs).udf;
    const Real bwd = udf_bruteforce_refined(field, p - step, n_dirs).udf;
    grad[a] = (fwd - bwd) / (2 * h);
  }
  return grad;
}

}  // namespace ddf
