// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <vector>

#include "ddf/field.hpp"
#include "ddf/rng.hpp"
#include "ddf/types.hpp"

namespace ddf {

struct NoSurfaceVisible : std::runtime_error {
  explicit NoSurfaceVisible(const std::string& what) : std::runtime_error(what) {}
};

struct UdfConfig {
  int k_c = 5;          ///< candidate directions
  Real tau_n = 5e-3;    ///< candidate repulsion weight
  Real tau_d = 0.1;     ///< normal-alignment weight
  int iters = 200;      ///< projected-GD refinement steps
  int polish_iters = 60;  ///< extra data-term-only steps after the anneal
  Real step = 0.1;      ///< initial GD step (adapted per candidate)
  int oracle_dirs = 4096;
  int init_dirs = 1024;  ///< probe spread the candidates are seeded from
  Real eta_t = 1e-2;    ///< selection softmax temperature (shared with compose)
  Real epsilon_s = 1e-2;
  Real far_depth = 8.0; ///< finite stand-in for non-visible depths
  Real fd_delta = 1e-4; ///< tangent FD step on S^2
};

struct BruteforceUdf {
  Real udf = kInf;
  UnitVec dir = UnitVec::unchecked(Vec3::UnitZ());
};

/// Min depth over a deterministic Fibonacci direction set, restricted to
/// visible directions. Throws NoSurfaceVisible when nothing is seen.
BruteforceUdf udf_bruteforce(const FieldOracle& field, const Vec3& p, int n_dirs);

struct MdfCandidate {
  UnitVec dir = UnitVec::unchecked(Vec3::UnitZ());
  Real depth = kInf;
  Real xi = 0;
};

struct MdfResult {
  UnitVec v_star = UnitVec::unchecked(Vec3::UnitZ());
  Real udf = kInf;
  std::vector<MdfCandidate> candidates;
  std::vector<Real> weights;  ///< simplex over candidates
};

/// Selection weights over candidates: softmax of eta_t^-1 xi / (eps_s + d),
/// the same form composition uses.
std::vector<Real> mdf_weights(const std::vector<MdfCandidate>& candidates, Real eta_t,
                              Real epsilon_s, Real far_depth = 8.0);

/// Per-point multi-candidate direction optimization: candidates seeded from a
/// Fibonacci spread (best k_c of init_dirs by the d - xi data term, spread
/// randomly rotated from rng), refined by projected gradient descent on the
/// candidate loss (data + repulsion + normal alignment), then blended by
/// mdf_weights into v* and the UDF estimate.
MdfResult mdf_optimize(const FieldOracle& field, const Vec3& p, const UdfConfig& cfg,
                       Rng& rng);

/// Brute-force minimum plus a deterministic local pattern search on S^2,
/// removing the direction-set quantization (~sqrt(4 pi / n_dirs) radians)
/// from the argmin.
BruteforceUdf udf_bruteforce_refined(const FieldOracle& field, const Vec3& p, int n_dirs,
                                     int refine_iters = 48);

/// Central FD gradient of the refined brute-force UDF (the oracle side of
/// the grad UDF = -v* identity; the optimized estimate would only add
/// noise, and the unrefined minimum carries quantization ripple above the
/// identity's tolerance).
RowVec3 udf_bruteforce_gradient(const FieldOracle& field, const Vec3& p, int n_dirs,
                                Real h = 1e-3);

}  // namespace ddf
