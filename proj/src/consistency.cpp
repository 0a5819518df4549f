// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ddf {

void ConstraintReport::record(bool ok, Real magnitude, const OrientedPoint& witness) {
  ++checked;
  if (ok) return;
  ++violations;
  if (magnitude > worst_magnitude) worst_magnitude = magnitude;
  if (witnesses.size() < 16) witnesses.push_back(witness);
}

void ConstraintReport::merge(const ConstraintReport& other) {
  checked += other.checked;
  violations += other.violations;
  worst_magnitude = std::max(worst_magnitude, other.worst_magnitude);
  for (const auto& w : other.witnesses)
    if (witnesses.size() < 16) witnesses.push_back(w);
}

namespace {

constexpr Real kBigMagnitude = 1e6;

Real capped(Real magnitude) {
  return std::isfinite(magnitude) ? std::min(magnitude, kBigMagnitude) : kBigMagnitude;
}

std::optional<OrientedPoint> find_visible(const FieldOracle& field, const Domain& dom,
                                          Rng& rng, int tries = 512) {
  for (int i = 0; i < tries; ++i) {
    const OrientedPoint tau{uniform_in_domain(rng, dom), uniform_sphere(rng)};
    if (field.sample(tau).visible()) return tau;
  }
  return std::nullopt;
}

Vec3 shell_point(const Domain& dom, Rng& rng) {
  // The shell is thin; push a uniform draw onto a random face band instead
  // of rejection sampling.
  Vec3 p = uniform_in_domain(rng, dom);
  const int axis = static_cast<int>(uniform_real(rng, 0, 3)) % 3;
  const bool high = uniform_real(rng) < 0.5;
  const Real depth_in = uniform_real(rng, 0, dom.epsilon());
  p[axis] = high ? dom.max_corner()[axis] - depth_in : dom.min_corner()[axis] + depth_in;
  return p;
}

bool ray_misses_inner_box(const Domain& dom, const Vec3& p, const UnitVec& v) {
  const Vec3 lo = dom.min_corner() + Vec3::Constant(dom.epsilon());
  const Vec3 hi = dom.max_corner() - Vec3::Constant(dom.epsilon());
  Real t0 = 0, t1 = kInf;
  for (int a = 0; a < 3; ++a) {
    const Real d = v.vec()[a];
    if (std::abs(d) < 1e-15) {
      if (p[a] < lo[a] || p[a] > hi[a]) return true;
      continue;
    }
    Real ta = (lo[a] - p[a]) / d;
    Real tb = (hi[a] - p[a]) / d;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return true;
  }
  return false;
}

/// Locates a 1 -> 0 visibility flip along the ray by coarse scan plus
/// bisection to 1e-6; nullopt when visibility never drops in-domain.
std::optional<Real> locate_flip(const FieldOracle& field, const OrientedPoint& tau,
                                Real exit_t) {
  const int coarse = 64;
  Real s_lo = 0;
  if (!field.sample(tau).visible()) return std::nullopt;
  Real s_hi = -1;
  for (int j = 1; j <= coarse; ++j) {
    const Real s = exit_t * j / coarse;
    if (!field.sample({tau.at(s), tau.v}).visible()) {
      s_hi = s;
      break;
    }
    s_lo = s;
  }
  if (s_hi < 0) return std::nullopt;
  while (s_hi - s_lo > 1e-6) {
    const Real mid = 0.5 * (s_lo + s_hi);
    if (field.sample({tau.at(mid), tau.v}).visible())
      s_lo = mid;
    else
      s_hi = mid;
  }
  return 0.5 * (s_lo + s_hi);
}

/// Uniform point on dB with the inward face normal.
void boundary_point(const Domain& dom, Rng& rng, Vec3& p, Vec3& inward) {
  const Vec3 e = dom.extent();
  const Real areas[3] = {e.y() * e.z(), e.z() * e.x(), e.x() * e.y()};
  Real u = uniform_real(rng, 0, 2 * (areas[0] + areas[1] + areas[2]));
  for (int axis = 0; axis < 3; ++axis) {
    for (int side = 0; side < 2; ++side) {
      u -= areas[axis];
      if (u > 0) continue;
      p = uniform_in_domain(rng, dom);
      p[axis] = side ? dom.max_corner()[axis] : dom.min_corner()[axis];
      inward = Vec3::Zero();
      inward[axis] = side ? -1 : 1;
      return;
    }
  }
  p = dom.max_corner();
  inward = Vec3(-1, 0, 0);
}

}  // namespace

ConstraintReport check_vc_inequality(const FieldOracle& field, const Domain& dom,
                                     int n_pairs, Rng& rng, const Tolerances& tol) {
  ConstraintReport report;
  report.name = "vc_inequality";
  int made = 0;
  while (made < n_pairs) {
    const auto tau1 = find_visible(field, dom, rng);
    if (!tau1) break;
    const Real d1 = depth_argmax(field.sample(*tau1)).depth;
    if (!std::isfinite(d1)) continue;
    const Vec3 q1 = tau1->at(d1);
    const Vec3 p2 = uniform_in_domain(rng, dom);
    const Real t = (q1 - p2).norm();
    if (t < 1e-5) continue;
    const OrientedPoint tau2{p2, UnitVec(q1 - p2)};
    const FieldSample s2 = field.sample(tau2);
    const Real d2 = depth_argmax(s2).depth;
    const bool ok = s2.visible() && d2 <= t + tol.de_tol;
    const Real magnitude = s2.visible() ? capped(d2 - t) : kBigMagnitude;
    report.record(ok, ok ? 0 : magnitude, tau2);
    ++made;
  }
  return report;
}

ConstraintReport check_bc_d(const FieldOracle& field, const Domain& dom,
                            const Tolerances& tol, Rng& rng) {
  ConstraintReport report;
  report.name = "bc_d";
  // inf over directions realized as a min over a direction batch per point
  const int dirs_per_point = 8;
  const int points = std::max(1, tol.probes_per_check / dirs_per_point);
  for (int i = 0; i < points; ++i) {
    const Vec3 p = shell_point(dom, rng);
    Real min_d = kInf;
    UnitVec worst = uniform_sphere(rng);
    for (int j = 0; j < dirs_per_point; ++j) {
      const UnitVec v = uniform_sphere(rng);
      // non-visible probes report the +inf sentinel, trivially above threshold
      const Real d = depth_argmax(field.sample({p, v})).depth;
      if (d < min_d) {
        min_d = d;
        worst = v;
      }
    }
    const bool ok = min_d > tol.zero_thresh;
    report.checked += dirs_per_point - 1;
    report.record(ok, ok ? 0 : tol.zero_thresh - min_d, {p, worst});
  }
  return report;
}

ConstraintReport check_bc_xi(const FieldOracle& field, const Domain& dom,
                             const Tolerances& tol, Rng& rng) {
  ConstraintReport report;
  report.name = "bc_xi";
  int made = 0;
  int guard = 0;
  while (made < tol.probes_per_check && guard < 64 * tol.probes_per_check) {
    ++guard;
    const Vec3 p = shell_point(dom, rng);
    const UnitVec v = uniform_sphere(rng);
    if (!ray_misses_inner_box(dom, p, v)) continue;  // not an outward ray
    const Real xi = field.sample({p, v}).xi;
    report.record(xi < 0.5, xi, {p, v});
    ++made;
  }
  return report;
}

ConstraintReport check_de_d(const FieldOracle& field, const Domain& dom,
                            const Tolerances& tol, Rng& rng) {
  ConstraintReport report;
  report.name = "de_d";
  const Real h = 1e-5;
  int made = 0;
  int guard = 0;
  while (made < tol.probes_per_check && guard < 16 * tol.probes_per_check) {
    ++guard;
    const auto tau = find_visible(field, dom, rng);
    if (!tau) break;
    const Real d0 = depth_argmax(field.sample(*tau)).depth;
    if (!std::isfinite(d0) || d0 < 20 * h) continue;
    const Real s = uniform_real(rng, h, d0 - 10 * h);  // away from the zero at s = d0
    const FieldSample fwd = field.sample({tau->at(s + h), tau->v});
    const FieldSample bwd = field.sample({tau->at(s - h), tau->v});
    if (!fwd.visible() || !bwd.visible()) continue;
    const Real slope =
        (depth_argmax(fwd).depth - depth_argmax(bwd).depth) / (2 * h);
    const Real defect = std::abs(slope + 1);
    report.record(defect <= tol.de_tol, capped(defect), {tau->at(s), tau->v});
    ++made;
  }
  return report;
}

ConstraintReport check_de_xi(const FieldOracle& field, const Domain& dom,
                             const Tolerances& tol, Rng& rng) {
  ConstraintReport report;
  report.name = "de_xi";
  const int grid = 32;
  const int rays = std::max(1, tol.probes_per_check / grid);
  for (int i = 0; i < rays; ++i) {
    const OrientedPoint tau{uniform_in_domain(rng, dom), uniform_sphere(rng)};
    const Real exit_t = dom.exit_distance(tau.p, tau.v);
    Real prev = field.sample(tau).xi;
    for (int j = 1; j <= grid; ++j) {
      const Real s = exit_t * j / grid;
      const Real cur = field.sample({tau.at(s), tau.v}).xi;
      const bool ok = cur <= prev + 1e-9;
      report.record(ok, ok ? 0 : cur - prev, {tau.at(s), tau.v});
      prev = cur;
    }
  }
  return report;
}

ConstraintReport check_io_d(const FieldOracle& field, const Domain& dom,
                            const Tolerances& tol, Rng& rng) {
  ConstraintReport report;
  report.name = "io_d";
  const int per_zero = tol.io_dirs * static_cast<int>(tol.s_offsets.size());
  const int zeros = std::max(1, tol.probes_per_check / per_zero);
  int made = 0;
  int guard = 0;
  while (made < zeros && guard < 64 * zeros) {
    ++guard;
    const auto tau = find_visible(field, dom, rng);
    if (!tau) break;
    const Real d = depth_argmax(field.sample(*tau)).depth;
    if (!std::isfinite(d)) continue;
    const Vec3 q = tau->at(d);  // depth zero: d approaches 0 along tau->v
    if (!dom.contains(q)) continue;
    ++made;
    for (int j = 0; j < tol.io_dirs; ++j) {
      const UnitVec u = uniform_sphere(rng);
      for (const Real s : tol.s_offsets) {
        const Vec3 x = q - s * u.vec();
        if (!dom.contains(x)) continue;
        const Real dx = depth_argmax(field.sample({x, u})).depth;
        const bool ok = dx <= s + tol.de_tol;
        report.record(ok, ok ? 0 : capped(dx - s), {x, u});
      }
    }
  }
  return report;
}

ConstraintReport check_io_xi(const FieldOracle& field, const Domain& dom,
                             const Tolerances& tol, Rng& rng) {
  ConstraintReport report;
  report.name = "io_xi";
  const int flips = std::max(1, tol.probes_per_check / tol.io_dirs);
  int made = 0;
  int guard = 0;
  while (made < flips && guard < 64 * flips) {
    ++guard;
    const OrientedPoint tau{uniform_in_domain(rng, dom), uniform_sphere(rng)};
    const Real exit_t = dom.exit_distance(tau.p, tau.v);
    const auto flip_s = locate_flip(field, tau, exit_t);
    if (!flip_s) continue;
    const Vec3 q = tau.at(*flip_s);
    if (!dom.contains(q)) continue;
    ++made;
    for (int j = 0; j < tol.io_dirs; ++j) {
      const UnitVec u = uniform_sphere(rng);
      const Real back = dom.exit_distance(q, -u);
      if (back < 2 * tol.io_radius) continue;
      const Real t = uniform_real(rng, tol.io_radius, back);
      const OrientedPoint probe{q - t * u.vec(), u};
      const Real xi = field.sample(probe).xi;
      report.record(xi > 0.5, 1 - xi, probe);
    }
  }
  return report;
}

PointSets estimate_point_sets(const FieldOracle& field, const Domain& dom, int n_rays,
                              Rng& rng, const Tolerances& tol) {
  PointSets sets;
  sets.q_d.kind = PointSetKind::q_d;
  sets.q_xi.kind = PointSetKind::q_xi;
  sets.q_d_xi.kind = PointSetKind::q_d_xi;

  for (int i = 0; i < n_rays; ++i) {
    const OrientedPoint tau{uniform_in_domain(rng, dom), uniform_sphere(rng)};
    const FieldSample s = field.sample(tau);
    if (s.visible()) {
      const Real d = depth_argmax(s).depth;
      if (std::isfinite(d)) {
        const Vec3 q = tau.at(d);
        if (dom.contains(q)) {
          sets.q_d.points.push_back(q);
          // locally visible: some direction sees a zero at q
          const Real s0 = tol.s_offsets[0];
          bool lv = false;
          for (int j = 0; j < 4 && !lv; ++j) {
            const UnitVec u = j == 0 ? tau.v : uniform_sphere(rng);
            const Vec3 x = q - s0 * u.vec();
            if (!dom.contains(x)) continue;
            const FieldSample sx = field.sample({x, u});
            lv = sx.visible() && depth_argmax(sx).depth <= s0 + tol.de_tol;
          }
          if (lv) sets.q_d_xi.points.push_back(q);
        }
      }
    }
    const Real exit_t = dom.exit_distance(tau.p, tau.v);
    const auto flip_s = locate_flip(field, tau, exit_t);
    if (flip_s) {
      const Vec3 q = tau.at(*flip_s);
      if (dom.contains(q)) sets.q_xi.points.push_back(q);
    }
  }
  return sets;
}

ConstraintReport check_compatibility(const FieldOracle& field, const Domain& dom,
                                     const PointSets& sets, int n_probes, Rng& rng,
                                     const Tolerances& tol) {
  ConstraintReport report;
  report.name = "compatibility";

  // (a) rays through sampled LVDZs must be visible
  const int half = n_probes / 2;
  if (!sets.q_d_xi.points.empty()) {
    const int per_point = tol.io_dirs;
    const int points = std::max(1, half / per_point);
    for (int i = 0; i < points; ++i) {
      const Vec3& q = sets.q_d_xi.points[i % sets.q_d_xi.points.size()];
      for (int j = 0; j < per_point; ++j) {
        const UnitVec u = uniform_sphere(rng);
        const Real back = dom.exit_distance(q, -u);
        if (back < 2 * tol.io_radius) continue;
        const Real t = uniform_real(rng, tol.io_radius, back);
        const OrientedPoint probe{q - t * u.vec(), u};
        const Real xi = field.sample(probe).xi;
        report.record(xi > 0.5, 1 - xi, probe);
      }
    }
  }

  // (b) every visible ray terminates at a locally visible depth zero
  int made = 0;
  int guard = 0;
  while (made < half && guard < 16 * half) {
    ++guard;
    const auto tau = find_visible(field, dom, rng);
    if (!tau) break;
    ++made;
    const Real d = depth_argmax(field.sample(*tau)).depth;
    if (!std::isfinite(d)) {
      report.record(false, kBigMagnitude, *tau);  // visible but no depth zero on the ray
      continue;
    }
    const Vec3 q = tau->at(d);
    bool ok = true;
    Real magnitude = 0;
    for (const Real s : tol.s_offsets) {
      const Vec3 x = q - s * tau->v.vec();
      if (!dom.contains(x)) continue;
      const FieldSample sx = field.sample({x, tau->v});
      const Real dx = depth_argmax(sx).depth;
      if (!sx.visible() || std::abs(dx - s) > tol.de_tol) {
        ok = false;
        magnitude = sx.visible() ? capped(std::abs(dx - s)) : kBigMagnitude;
      }
    }
    report.record(ok, magnitude, *tau);
  }
  return report;
}

PointSetEstimate directly_lit_points(const InducedField& shape, int n_boundary_rays,
                                     Rng& rng) {
  PointSetEstimate out;
  out.kind = PointSetKind::dlp;
  const Domain& dom = shape.domain();
  for (int i = 0; i < n_boundary_rays; ++i) {
    Vec3 p, inward;
    boundary_point(dom, rng, p, inward);
    UnitVec v = uniform_sphere(rng);
    if (v.dot(inward) < 0) v = UnitVec::unchecked(v.vec() - 2 * v.dot(inward) * inward);
    const InducedSample s = shape.query({p, v});
    if (s.visible && dom.contains(s.point)) out.points.push_back(s.point);
  }
  return out;
}

bool probes_as_lvdz(const FieldOracle& field, const Domain& dom, const Vec3& q,
                    const Tolerances& tol, Rng& rng, int dirs) {
  for (int j = 0; j < dirs; ++j) {
    const UnitVec u = uniform_sphere(rng);
    const Real s = tol.s_offsets[0];
    const Vec3 x = q - s * u.vec();
    if (!dom.contains(x)) continue;
    const FieldSample sample = field.sample({x, u});
    if (!sample.visible()) continue;
    if (std::abs(depth_argmax(sample).depth - s) <= tol.de_tol) return true;
  }
  return false;
}

std::vector<ConstraintReport> run_all_checks(const FieldOracle& field, const Domain& dom,
                                             const Tolerances& tol, Rng& rng) {
  std::vector<ConstraintReport> reports;
  reports.push_back(check_vc_inequality(field, dom, tol.probes_per_check, rng, tol));
  reports.push_back(check_bc_d(field, dom, tol, rng));
  reports.push_back(check_bc_xi(field, dom, tol, rng));
  reports.push_back(check_de_d(field, dom, tol, rng));
  reports.push_back(check_de_xi(field, dom, tol, rng));
  reports.push_back(check_io_d(field, dom, tol, rng));
  reports.push_back(check_io_xi(field, dom, tol, rng));
  const PointSets sets =
      estimate_point_sets(field, dom, std::max(256, tol.probes_per_check / 8), rng, tol);
  reports.push_back(
      check_compatibility(field, dom, sets, tol.probes_per_check, rng, tol));
  return reports;
}

namespace {

/// Uniform hash grid for nearest-point queries over a fixed point set.
class PointGrid {
 public:
  explicit PointGrid(const std::vector<Vec3>& points) : points_(points) {
    if (points_.empty()) return;
    lo_ = hi_ = points_[0];
    for (const auto& p : points_) {
      lo_ = lo_.cwiseMin(p);
      hi_ = hi_.cwiseMax(p);
    }
    const Real diag = (hi_ - lo_).norm();
    cell_ = std::max(diag / 64, Real(1e-9));
    for (int i = 0; i < static_cast<int>(points_.size()); ++i)
      cells_[key(points_[i])].push_back(i);
  }

  Real nearest(const Vec3& q) const {
    if (points_.empty()) return kInf;
    Real best = kInf;
    const auto base = coords(q);
    // Chebyshev ring r only holds points at distance >= (r-1)*cell, so once a
    // candidate is found the scan can stop after one guaranteeing ring.
    const long max_ring = 80;
    for (long ring = 0; ring <= max_ring; ++ring) {
      if (best < kInf && Real(ring - 1) * cell_ > best) return best;
      for (long dx = -ring; dx <= ring; ++dx)
        for (long dy = -ring; dy <= ring; ++dy)
          for (long dz = -ring; dz <= ring; ++dz) {
            if (std::max({std::labs(dx), std::labs(dy), std::labs(dz)}) != ring) continue;
            const auto it = cells_.find(pack(base[0] + dx, base[1] + dy, base[2] + dz));
            if (it == cells_.end()) continue;
            for (int idx : it->second)
              best = std::min(best, (points_[idx] - q).norm());
          }
    }
    if (best == kInf)  // query far outside the grid; fall back to a scan
      for (const auto& p : points_) best = std::min(best, (p - q).norm());
    return best;
  }

 private:
  std::array<long, 3> coords(const Vec3& p) const {
    return {static_cast<long>(std::floor((p.x() - lo_.x()) / cell_)),
            static_cast<long>(std::floor((p.y() - lo_.y()) / cell_)),
            static_cast<long>(std::floor((p.z() - lo_.z()) / cell_))};
  }
  long long pack(long x, long y, long z) const {
    return ((x + 512) << 40) ^ ((y + 512) << 20) ^ (z + 512);
  }
  long long key(const Vec3& p) const {
    const auto c = coords(p);
    return pack(c[0], c[1], c[2]);
  }

  std::vector<Vec3> points_;
  Vec3 lo_ = Vec3::Zero(), hi_ = Vec3::Zero();
  Real cell_ = 1;
  std::unordered_map<long long, std::vector<int>> cells_;
};

}  // namespace

Real directed_hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  if (a.empty()) return 0;
  if (b.empty()) return kInf;
  const PointGrid grid(b);
  Real worst = 0;
  for (const auto& p : a) worst = std::max(worst, grid.nearest(p));
  return worst;
}

Real sampled_hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace ddf
