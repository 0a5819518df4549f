// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "ddf/camera.hpp"
#include "ddf/differential.hpp"
#include "ddf/field.hpp"
#include "ddf/image.hpp"
#include "ddf/tracer.hpp"

namespace ddf {

enum class RenderQuantity {
  depth,
  visibility,
  normals,
  gaussian_curv,
  mean_curv,
  weight_w1,
};

RenderQuantity parse_render_quantity(const std::string& name);

struct RenderStats {
  std::uint64_t field_queries = 0;
  long failed_pixels = 0;  ///< gradient/report failures (grazing etc.)
};

/// Single-query-per-pixel geometry render. Cameras outside B are routed onto
/// the boundary (depth output includes the offset); rays missing B never
/// touch the field. Depth and visibility use exactly one field query per
/// pixel; normals and curvatures add FD probes. Non-visible pixels carry
/// +inf depth / zero normals.
Image render_geometry(const FieldOracle& field, const Domain& dom, const Camera& camera,
                      RenderQuantity quantity, const FdConfig& fd = {},
                      RenderStats* stats = nullptr);

/// HDR path-traced render with per-pixel RNG streams split from cfg.seed.
Image render_trace(const Iaddf& scene, const Camera& camera, const TraceConfig& cfg,
                   TraceStats* stats = nullptr);

struct CloudConfig {
  int n_v = 128;       ///< directions composed per position
  int n_hops = 3;      ///< projection rounds (N_H)
  Real epsilon_p = 0.1;  ///< oversampling fraction
  int n_points = 1024;
  Real eta_t = 1e-2;   ///< composition softmax parameters
  Real epsilon_s = 1e-2;
};

/// Explicit surface point cloud: uniform positions, soft-composed direction
/// estimate, q-mapping hops, visibility-sorted truncation to n_points.
std::vector<Vec3> sample_point_cloud(const FieldOracle& field, const Domain& dom,
                                     const CloudConfig& cfg, Rng& rng);

struct BenchResult {
  std::uint64_t ddf_queries = 0;
  std::uint64_t sphere_tracing_queries = 0;
  int ddf_hits = 0;
  int sphere_tracing_hits = 0;
};

/// Renders depth twice: once as a direct DDF ray-cast (one query per pixel)
/// and once by sphere tracing over the brute-force UDF, counting the field
/// queries each strategy needs.
BenchResult bench_queries(const FieldOracle& field, const Domain& dom,
                          const Camera& camera, int tracer_dirs = 256,
                          Real hit_epsilon = 1e-3, int max_steps = 64);

}  // namespace ddf
