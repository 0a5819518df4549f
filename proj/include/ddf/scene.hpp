// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ddf/camera.hpp"
#include "ddf/compose.hpp"
#include "ddf/consistency.hpp"
#include "ddf/field.hpp"
#include "ddf/induced.hpp"
#include "ddf/render.hpp"
#include "ddf/sampler.hpp"
#include "ddf/tracer.hpp"
#include "ddf/udf.hpp"

namespace ddf {

/// A fully-loaded scene: geometry parts behind a composite field, plus the
/// appearance, camera and per-module configuration blocks from the JSON
/// scene file.
struct Scene {
  Domain domain = Domain::cube();
  std::vector<std::unique_ptr<InducedField>> parts;
  std::vector<std::unique_ptr<InducedFieldAdapter>> adapters;
  std::vector<RigidScale> transforms;
  std::unique_ptr<CompositeField> composite;

  Material material = Lambertian{};
  Lighting lighting;
  Camera camera;
  TraceConfig trace;
  CloudConfig cloud;
  UdfConfig udf;
  SamplerConfig sampler;
  Tolerances tolerances;
  std::uint64_t seed = 0;

  const FieldOracle& field() const { return *composite; }

  /// The single geometry part (mesh samplers need direct shape access);
  /// throws when the scene composes several.
  const InducedField& single_part() const;

  Iaddf iaddf() const;
};

/// Parses and validates a JSON scene file. Mesh paths resolve relative to
/// the scene file. Throws std::runtime_error with a location message on
/// schema violations or missing files.
Scene load_scene(const std::string& path);

}  // namespace ddf
