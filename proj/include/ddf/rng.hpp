// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "ddf/types.hpp"

namespace ddf {

using Rng = std::mt19937_64;

/// splitmix64; used to decorrelate derived stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Deterministic per-item RNG stream; independent of evaluation order, so
/// parallel maps stay reproducible.
inline Rng split_stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(mix64(seed ^ mix64(index + 1)));
}

inline Real uniform_real(Rng& rng, Real lo = 0, Real hi = 1) {
  return std::uniform_real_distribution<Real>(lo, hi)(rng);
}

inline Vec3 uniform_in_box(Rng& rng, const Vec3& lo, const Vec3& hi) {
  return Vec3(uniform_real(rng, lo.x(), hi.x()), uniform_real(rng, lo.y(), hi.y()),
              uniform_real(rng, lo.z(), hi.z()));
}

inline Vec3 uniform_in_domain(Rng& rng, const Domain& dom) {
  return uniform_in_box(rng, dom.min_corner(), dom.max_corner());
}

inline UnitVec uniform_sphere(Rng& rng) {
  const Real z = uniform_real(rng, -1, 1);
  const Real phi = uniform_real(rng, 0, 2 * kPi);
  const Real r = std::sqrt(std::max(Real(0), 1 - z * z));
  return UnitVec::unchecked(Vec3(r * std::cos(phi), r * std::sin(phi), z));
}

/// Uniform over the hemisphere with axis n (v.n >= 0 by reflection).
inline UnitVec uniform_hemisphere(Rng& rng, const UnitVec& n) {
  UnitVec v = uniform_sphere(rng);
  const Real c = v.dot(n);
  if (c < 0) v = UnitVec::unchecked(v.vec() - 2 * c * n.vec());
  return v;
}

inline Vec3 gaussian3(Rng& rng, Real sigma) {
  std::normal_distribution<Real> g(0, sigma);
  const Real a = g(rng), b = g(rng), c = g(rng);
  return Vec3(a, b, c);
}

/// Branchless orthonormal basis completing n.
inline void orthonormal_basis(const Vec3& n, Vec3& t1, Vec3& t2) {
  const Real sign = std::copysign(Real(1), n.z());
  const Real a = -1 / (sign + n.z());
  const Real b = n.x() * n.y() * a;
  t1 = Vec3(1 + sign * n.x() * n.x() * a, sign * b, -sign * n.x());
  t2 = Vec3(b, sign + n.y() * n.y() * a, -n.y());
}

/// i-th of n near-uniform sphere directions (golden-angle spiral).
/// Deterministic; used for direction oracles and candidate spreads.
inline UnitVec fibonacci_direction(int i, int n) {
  const Real golden = (1 + std::sqrt(Real(5))) / 2;
  const Real z = 1 - (2.0 * i + 1) / n;
  const Real r = std::sqrt(std::max(Real(0), 1 - z * z));
  const Real phi = 2 * kPi * (i / golden - std::floor(i / golden));
  return UnitVec::unchecked(Vec3(r * std::cos(phi), r * std::sin(phi), z));
}

}  // namespace ddf
