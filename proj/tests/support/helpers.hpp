// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "ddf/field.hpp"
#include "ddf/induced.hpp"
#include "ddf/rng.hpp"

namespace ddf::testing {

inline OrientedPoint random_tau(Rng& rng, const Domain& dom) {
  return {uniform_in_domain(rng, dom), uniform_sphere(rng)};
}

/// Rejection-samples a visible oriented point; empty after max_tries misses.
inline std::optional<OrientedPoint> random_visible_tau(Rng& rng, const FieldOracle& field,
                                                       const Domain& dom,
                                                       int max_tries = 256) {
  for (int i = 0; i < max_tries; ++i) {
    const OrientedPoint tau = random_tau(rng, dom);
    if (field.sample(tau).visible()) return tau;
  }
  return std::nullopt;
}

/// Visible and away from the silhouette (|n.v| above the grazing cut).
inline std::optional<OrientedPoint> random_nongrazing_tau(Rng& rng,
                                                          const InducedField& field,
                                                          Real min_cos = 0.1,
                                                          int max_tries = 512) {
  for (int i = 0; i < max_tries; ++i) {
    const OrientedPoint tau = random_tau(rng, field.domain());
    const InducedSample s = field.query(tau);
    if (s.visible && s.normal && std::abs(s.normal->dot(tau.v.vec())) >= min_cos)
      return tau;
  }
  return std::nullopt;
}

}  // namespace ddf::testing
