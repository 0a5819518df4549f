// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/tracer.hpp"

namespace ddf {

namespace {

constexpr Real kMirrorMatchTol = 1e-6;

Real gauss_sigma(Real alpha) {
  // Sigma_p(alpha) = f_alpha exp(-k0 alpha) I3, f_alpha = 3.5e-alpha, k0 = 1
  const Real variance = 3.5 * std::pow(Real(10), -alpha) * std::exp(-alpha);
  return std::sqrt(variance);
}

Real gauss_density(const Vec3& zeta, Real sigma, const TraceConfig& cfg) {
  const Real norm = std::pow(2 * kPi * sigma * sigma, Real(-1.5));
  const Real density = norm * std::exp(-zeta.squaredNorm() / (2 * sigma * sigma));
  return std::clamp(density, cfg.gauss_clamp_lo, cfg.gauss_clamp_hi);
}

}  // namespace

Spectrum brdf_eval(const Material& mat, const Vec3&, const UnitVec& omega_i,
                   const UnitVec& omega_o, const UnitVec& n) {
  // omega_i travels INTO the surface (the tracing recursion passes -v_n);
  // omega_o points back toward the viewer. Anything else is outside the
  // valid hemispheres and reflects nothing.
  const Real ci = omega_i.dot(n.vec());
  const Real co = omega_o.dot(n.vec());
  if (ci >= 0 || co <= 0) return Spectrum::Zero();

  if (const auto* lam = std::get_if<Lambertian>(&mat)) return lam->rho_a / kPi;

  if (const auto* mir = std::get_if<Mirror>(&mat)) {
    const UnitVec wr = reflect(omega_i, n);  // outgoing reflection of omega_i
    if ((wr.vec() - omega_o.vec()).norm() > kMirrorMatchTol) return Spectrum::Zero();
    return mir->rho_m / std::abs(wr.dot(n.vec()));
  }

  const auto& g = std::get<Glossy>(mat);
  const UnitVec wr = reflect(omega_i, n);
  const Real cos_spec = std::max(Real(0), omega_o.dot(wr.vec()));
  const Real norm = std::pow(kPi, Real(1) / (1 + g.alpha)) *
                    std::pow(std::abs(ci), g.alpha / (1 + g.alpha));
  return g.eta_l * g.rho_a / kPi +
         (1 - g.eta_l) * g.rho_m * std::pow(cos_spec, g.alpha) / norm;
}

BounceSample sample_bounce(const Material& mat, const Vec3&, const UnitVec& omega_o,
                           const UnitVec& n, const TraceConfig& cfg, Rng& rng) {
  if (std::holds_alternative<Lambertian>(mat))
    return {uniform_hemisphere(rng, n), 2 * kPi, false};

  if (std::holds_alternative<Mirror>(mat))
    return {reflect(-omega_o, n), 1, false};  // delta: exact-direction dispatch

  const auto& g = std::get<Glossy>(mat);
  if (uniform_real(rng) < g.eta_l)
    return {uniform_hemisphere(rng, n), 2 * kPi / g.eta_l, false};

  const UnitVec wr = reflect(-omega_o, n);
  const Real sigma = gauss_sigma(g.alpha);
  for (int attempt = 0; attempt < 16; ++attempt) {
    const Vec3 zeta = gaussian3(rng, sigma);
    const Vec3 raw = wr.vec() + zeta;
    if (raw.norm() < 1e-12) continue;
    const UnitVec v = UnitVec(raw);
    if (v.dot(n.vec()) <= 0) continue;
    const Real density = gauss_density(zeta, sigma, cfg);
    return {v, 1 / ((1 - g.eta_l) * density), false};
  }
  return {uniform_hemisphere(rng, n), 2 * kPi / g.eta_l, true};
}

namespace {

struct SurfaceHit {
  bool ok = false;
  Vec3 q = Vec3::Zero();
  UnitVec n = UnitVec::unchecked(Vec3::UnitZ());
};

/// One forward query plus one gradient: scene point and its normal. Bounce
/// segments start on the previous hit surface, where the FD stencil would
/// straddle it; the gradient is constant along the visible segment (same hit
/// point, same normal), so it is evaluated a nudge inside instead.
SurfaceHit surface_from(const Iaddf& scene, const OrientedPoint& tau, Real depth,
                        TraceStats* stats) {
  SurfaceHit hit;
  hit.q = tau.at(depth);
  const Real nudge = std::min(Real(10) * scene.fd.h_p, 0.5 * depth);
  const OrientedPoint probe{tau.at(nudge), tau.v};
  const auto grad = grad_p(*scene.field, probe, scene.fd);
  if (!grad.ok()) {
    if (stats) ++stats->degenerate_normals;
    return hit;
  }
  const auto normal = normal_from_gradient(grad.value, tau.v);
  if (!normal.ok()) {
    if (stats) ++stats->degenerate_normals;
    return hit;
  }
  hit.ok = true;
  hit.n = normal.value;
  return hit;
}

}  // namespace

Spectrum trace(const Iaddf& scene, const Vec3& p, const UnitVec& v, int level,
               const TraceConfig& cfg, Rng& rng, TraceStats* stats) {
  const OrientedPoint tau{p, v};
  const FieldSample s = scene.field->sample(tau);
  if (s.xi < 0.5) return scene.lighting.environment(v);
  if (level >= cfg.n_bounces) return Spectrum::Zero();

  const Real depth = depth_argmax(s).depth;
  if (!std::isfinite(depth)) return Spectrum::Zero();
  const SurfaceHit hit = surface_from(scene, tau, depth, stats);
  if (!hit.ok) return Spectrum::Zero();

  const UnitVec omega_o = -v;
  const Spectrum emitted = scene.lighting.emitted(hit.q, omega_o);
  const BounceSample bounce = sample_bounce(scene.material, hit.q, omega_o, hit.n, cfg, rng);
  if (stats && bounce.gauss_fallback) ++stats->gauss_fallbacks;
  const UnitVec omega_i = -bounce.dir;
  const Spectrum brdf = brdf_eval(scene.material, hit.q, omega_i, omega_o, hit.n);
  const Spectrum incoming = trace(scene, hit.q, bounce.dir, level + 1, cfg, rng, stats);
  const Real weight = bounce.inv_density * std::abs(hit.n.dot(omega_i.vec()));
  return emitted + weight * brdf * incoming;
}

Spectrum path_trace_pixel(const Iaddf& scene, const OrientedPoint& primary,
                          const TraceConfig& cfg, Rng& rng, TraceStats* stats) {
  OrientedPoint tau = primary;
  if (scene.domain && !scene.domain->contains(tau.p)) {
    const auto entry = domain_entry_point(*scene.domain, tau.p, tau.v);
    if (!entry) return scene.lighting.environment(tau.v);
    tau.p = entry->p_r;
  }

  const FieldSample s = scene.field->sample(tau);
  if (s.xi < 0.5) return scene.lighting.environment(tau.v);
  const Real depth = depth_argmax(s).depth;
  if (!std::isfinite(depth)) return Spectrum::Zero();
  const SurfaceHit hit = surface_from(scene, tau, depth, stats);
  if (!hit.ok) return Spectrum::Zero();

  const UnitVec omega_o = -tau.v;
  const Spectrum emitted = scene.lighting.emitted(hit.q, omega_o);

  // A mirror bounce is deterministic; extra samples would be identical.
  const int m = std::holds_alternative<Mirror>(scene.material) ? 1 : cfg.mc_samples;
  Spectrum acc = Spectrum::Zero();
  for (int k = 0; k < m; ++k) {
    const BounceSample bounce =
        sample_bounce(scene.material, hit.q, omega_o, hit.n, cfg, rng);
    if (stats && bounce.gauss_fallback) ++stats->gauss_fallbacks;
    const UnitVec omega_i = -bounce.dir;
    const Spectrum brdf = brdf_eval(scene.material, hit.q, omega_i, omega_o, hit.n);
    const Spectrum c = brdf * trace(scene, hit.q, bounce.dir, 1, cfg, rng, stats);
    const Real w = bounce.inv_density * std::abs(hit.n.dot(omega_i.vec()));
    acc += w * c;
  }
  return emitted + acc / m;
}

}  // namespace ddf
