// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace ddf {

using Real = double;
using Vec3 = Eigen::Matrix<Real, 3, 1>;
using Vec2 = Eigen::Matrix<Real, 2, 1>;
using RowVec3 = Eigen::Matrix<Real, 1, 3>;
using Mat3 = Eigen::Matrix<Real, 3, 3>;
using Mat2 = Eigen::Matrix<Real, 2, 2>;

inline constexpr Real kInf = std::numeric_limits<Real>::infinity();

/// Self-intersection guard for all ray casts (bounced rays start on a surface).
inline constexpr Real kRayTmin = 1e-6;

/// |n.v| below this marks a grazing hit; normals there are unreliable.
inline constexpr Real kGrazingEps = 1e-6;

inline constexpr Real kPi = 3.14159265358979323846;

/// Direction on S^2. Construction normalizes, so the unit invariant holds by
/// construction; a near-zero input is a caller bug.
class UnitVec {
 public:
  explicit UnitVec(const Vec3& v) {
    const Real n = v.norm();
    if (!(n > Real(1e-12)) || !std::isfinite(n))
      throw std::invalid_argument("UnitVec: degenerate direction");
    v_ = v / n;
  }

  /// Wraps a vector already known to be unit-norm (within 1e-12).
  static UnitVec unchecked(const Vec3& v) { return UnitVec(v, Unchecked{}); }

  const Vec3& vec() const { return v_; }
  Real x() const { return v_.x(); }
  Real y() const { return v_.y(); }
  Real z() const { return v_.z(); }

  Real dot(const Vec3& u) const { return v_.dot(u); }
  Real dot(const UnitVec& u) const { return v_.dot(u.v_); }
  UnitVec operator-() const { return UnitVec(-v_, Unchecked{}); }

 private:
  struct Unchecked {};
  UnitVec(const Vec3& v, Unchecked) : v_(v) {}
  Vec3 v_;
};

/// A 5D field query tau = (p, v); equivalent to the ray p + t v, t >= 0.
struct OrientedPoint {
  Vec3 p;
  UnitVec v;

  Vec3 at(Real t) const { return p + t * v.vec(); }
};

struct RayBoxHit {
  Real t_enter = 0;
  Real t_exit = 0;
};

/// Axis-aligned field domain B with the margin epsilon defining B_eps.
class Domain {
 public:
  Domain(const Vec3& min_corner, const Vec3& max_corner, Real epsilon = 0.05)
      : min_(min_corner), max_(max_corner), eps_(epsilon) {
    if (!((min_.array() < max_.array()).all()))
      throw std::invalid_argument("Domain: min must be < max componentwise");
    const Real shortest = (max_ - min_).minCoeff();
    if (!(epsilon > 0) || !(epsilon < 0.5 * shortest))
      throw std::invalid_argument("Domain: epsilon must be in (0, shortest_axis/2)");
  }

  /// Cube [-h, h]^3; default matches the longest-axis-2 loading convention.
  static Domain cube(Real half_extent = 1.0, Real epsilon = 0.05) {
    return Domain(Vec3::Constant(-half_extent), Vec3::Constant(half_extent), epsilon);
  }

  const Vec3& min_corner() const { return min_; }
  const Vec3& max_corner() const { return max_; }
  Real epsilon() const { return eps_; }
  Vec3 extent() const { return max_ - min_; }
  Real diagonal() const { return extent().norm(); }

  bool contains(const Vec3& p) const {
    return (p.array() >= min_.array()).all() && (p.array() <= max_.array()).all();
  }

  /// Inside B_eps, i.e. at least epsilon from every face.
  bool contains_eps(const Vec3& p) const {
    return (p.array() >= min_.array() + eps_).all() &&
           (p.array() <= max_.array() - eps_).all();
  }

  /// Signed distance to the nearest face, positive inside B.
  Real boundary_distance(const Vec3& p) const {
    const Vec3 lo = p - min_;
    const Vec3 hi = max_ - p;
    return std::min(lo.minCoeff(), hi.minCoeff());
  }

  /// Slab intersection of the ray with B over t >= 0. Empty if the ray
  /// misses; for p inside, t_enter is 0.
  std::optional<RayBoxHit> intersect_ray(const Vec3& p, const UnitVec& v) const {
    Real t0 = 0, t1 = kInf;
    for (int a = 0; a < 3; ++a) {
      const Real d = v.vec()[a];
      if (std::abs(d) < 1e-15) {
        if (p[a] < min_[a] || p[a] > max_[a]) return std::nullopt;
        continue;
      }
      Real ta = (min_[a] - p[a]) / d;
      Real tb = (max_[a] - p[a]) / d;
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      if (t0 > t1) return std::nullopt;
    }
    return RayBoxHit{t0, t1};
  }

  /// Distance from p (inside B) to the exit point along v.
  Real exit_distance(const Vec3& p, const UnitVec& v) const {
    const auto hit = intersect_ray(p, v);
    return hit ? hit->t_exit : Real(0);
  }

 private:
  Vec3 min_, max_;
  Real eps_;
};

struct DomainEntry {
  Vec3 p_r;     ///< first intersection with the domain boundary
  Real offset;  ///< ||p - p_r||, added to downstream depths
};

/// Routes an exterior query point onto the domain boundary. Returns nullopt
/// when the ray misses B entirely (caller reports xi = 0).
inline std::optional<DomainEntry> domain_entry_point(const Domain& dom, const Vec3& p,
                                                     const UnitVec& v) {
  const auto hit = dom.intersect_ray(p, v);
  if (!hit) return std::nullopt;
  return DomainEntry{p + hit->t_enter * v.vec(), hit->t_enter};
}

}  // namespace ddf
