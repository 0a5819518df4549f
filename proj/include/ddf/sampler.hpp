// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddf/induced.hpp"
#include "ddf/rng.hpp"
#include "ddf/types.hpp"

namespace ddf {

/// The six mesh-derived oriented-point distributions: uniform, at-surface,
/// bounding, surface, tangent, offset.
enum class SampleType : std::uint8_t { U = 0, A = 1, B = 2, S = 3, T = 4, O = 5 };

const char* sample_type_name(SampleType t);

/// Oriented point with ray-cast ground truth. d_gt carries the +inf sentinel
/// and n_gt is absent when xi_gt = 0.
struct LabeledSample {
  OrientedPoint tau{Vec3::Zero(), UnitVec::unchecked(Vec3::UnitZ())};
  std::uint8_t xi_gt = 0;
  Real d_gt = kInf;
  std::optional<UnitVec> n_gt;
  SampleType stype = SampleType::U;
};

struct SamplerConfig {
  Real epsilon_O = 0.05;      ///< offset magnitude for O-type samples
  Real boundary_bias = 0.10;  ///< fraction of A/T/O positions snapped to dB
  std::uint64_t seed = 0;
};

/// Draws one (p, v) by the per-type construction, then labels it by ray
/// casting. A/S/T/O need a sampleable surface (mesh, sphere or box backed).
LabeledSample sample(SampleType stype, const InducedField& shape, const Domain& dom,
                     const SamplerConfig& cfg, Rng& rng);

struct BatchCounts {
  int u = 0, a = 0, b = 0, s = 0, t = 0, o = 0;

  /// Desk-scale default keeping the full preset's 2:1 type ratio.
  static BatchCounts desk_scale() { return {2500, 2500, 1250, 1250, 1250, 1250}; }
  /// Full-size extraction amounts (250K for A/U, 125K for the rest).
  static BatchCounts full_scale() { return {250000, 250000, 125000, 125000, 125000, 125000}; }

  int total() const { return u + a + b + s + t + o; }
};

/// Exact per-type counts, ordered U,A,B,S,T,O. Deterministic under cfg.seed:
/// each sample draws from its own split stream, so the batch is identical
/// regardless of evaluation order.
std::vector<LabeledSample> sample_batch(const BatchCounts& counts, const InducedField& shape,
                                        const Domain& dom, const SamplerConfig& cfg);

/// Flat binary records, little-endian: 3xf64 p, 3xf64 v, u8 xi, f64 d,
/// 3xf64 n, u8 type (82 bytes per record).
void write_samples_binary(const std::string& path, const std::vector<LabeledSample>& samples);
std::vector<LabeledSample> read_samples_binary(const std::string& path);

void write_samples_csv(const std::string& path, const std::vector<LabeledSample>& samples);

}  // namespace ddf
