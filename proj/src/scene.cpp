// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/scene.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace ddf {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::runtime_error("scene: " + where + ": " + what);
}

Vec3 vec3_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where, "expected an array of 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) fail(where, "expected an array of 3 numbers");
    v[i] = j[i].get<Real>();
  }
  if (!v.allFinite()) fail(where, "components must be finite");
  return v;
}

Vec3 vec3_or(const json& j, const char* key, const Vec3& fallback) {
  return j.contains(key) ? vec3_of(j.at(key), key) : fallback;
}

Spectrum spectrum_of(const json& j, const std::string& where) {
  const Vec3 v = vec3_of(j, where);
  if ((v.array() < 0).any()) fail(where, "spectrum components must be >= 0");
  return Spectrum(v.x(), v.y(), v.z());
}

Real real_or(const json& j, const char* key, Real fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) fail(key, "expected a number");
  return j.at(key).get<Real>();
}

int int_or(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<int>();
}

AnalyticShape shape_of(const json& j, const std::string& type) {
  if (type == "sphere") {
    Sphere s;
    s.center = vec3_or(j, "center", Vec3::Zero());
    s.radius = real_or(j, "radius", 0.5);
    if (!(s.radius > 0)) fail("sphere", "radius must be > 0");
    return s;
  }
  if (type == "plane") {
    Plane p;
    p.point = vec3_or(j, "point", Vec3::Zero());
    p.normal = vec3_or(j, "normal", Vec3::UnitZ()).normalized();
    return p;
  }
  if (type == "box") {
    Box b;
    b.min_corner = vec3_or(j, "min", -Vec3::Ones() * 0.5);
    b.max_corner = vec3_or(j, "max", Vec3::Ones() * 0.5);
    if (!((b.min_corner.array() < b.max_corner.array()).all()))
      fail("box", "min must be < max componentwise");
    return b;
  }
  fail("shape", "unknown type '" + type + "'");
}

std::unique_ptr<InducedField> part_field(const json& shape, const Domain& dom,
                                         const std::filesystem::path& base) {
  if (!shape.contains("type")) fail("shape", "missing 'type'");
  const std::string type = shape.at("type").get<std::string>();
  if (type == "mesh") {
    if (!shape.contains("path")) fail("mesh", "missing 'path'");
    std::filesystem::path mesh_path = shape.at("path").get<std::string>();
    if (mesh_path.is_relative()) mesh_path = base / mesh_path;
    if (!std::filesystem::exists(mesh_path))
      fail("mesh", "file not found: " + mesh_path.string());
    TriangleMesh mesh = load_obj(mesh_path.string());
    if (shape.value("normalize", true)) mesh.normalize_to_box(2.0);
    return std::make_unique<InducedField>(std::move(mesh), dom);
  }
  if (type == "union") {
    if (!shape.contains("shapes") || !shape.at("shapes").is_array())
      fail("union", "missing 'shapes' array");
    std::vector<AnalyticShape> shapes;
    for (const auto& sub : shape.at("shapes"))
      shapes.push_back(shape_of(sub, sub.at("type").get<std::string>()));
    return std::make_unique<InducedField>(std::move(shapes), dom);
  }
  return std::make_unique<InducedField>(shape_of(shape, type), dom);
}

RigidScale transform_of(const json& j) {
  RigidScale t;
  if (j.contains("translation")) t.translation = vec3_of(j.at("translation"), "translation");
  t.scale = real_or(j, "scale", 1.0);
  if (j.contains("rotation_deg")) {
    const Real angle = j.at("rotation_deg").get<Real>() * kPi / 180;
    const Vec3 axis = vec3_or(j, "rotation_axis", Vec3::UnitZ()).normalized();
    t.rotation = Eigen::AngleAxis<Real>(angle, axis).toRotationMatrix();
  }
  t.validate();
  return t;
}

Material material_of(const json& j) {
  const std::string type = j.value("type", "lambertian");
  if (type == "lambertian") {
    Lambertian m;
    if (j.contains("albedo")) m.rho_a = spectrum_of(j.at("albedo"), "albedo");
    if ((m.rho_a > 1).any()) fail("material", "albedo must be in [0,1]");
    return m;
  }
  if (type == "mirror") {
    Mirror m;
    if (j.contains("albedo")) m.rho_m = spectrum_of(j.at("albedo"), "albedo");
    if ((m.rho_m > 1).any()) fail("material", "albedo must be in [0,1]");
    return m;
  }
  if (type == "glossy") {
    Glossy m;
    if (j.contains("albedo")) m.rho_a = spectrum_of(j.at("albedo"), "albedo");
    if (j.contains("mirror_albedo")) m.rho_m = spectrum_of(j.at("mirror_albedo"), "mirror_albedo");
    m.eta_l = real_or(j, "eta_l", 0.5);
    m.alpha = real_or(j, "alpha", 1.0);
    if (!(m.eta_l > 0 && m.eta_l < 1)) fail("material", "eta_l must be in (0,1)");
    if (m.alpha < 0) fail("material", "alpha must be >= 0");
    return m;
  }
  fail("material", "unknown type '" + type + "'");
}

Lighting lighting_of(const json& j) {
  Lighting l;
  if (j.contains("emission")) l.emission = spectrum_of(j.at("emission"), "emission");
  if (j.contains("environment")) {
    const json& env = j.at("environment");
    const std::string type = env.value("type", "constant");
    if (type == "constant")
      l.env_kind = Lighting::EnvKind::constant;
    else if (type == "vertical_gradient")
      l.env_kind = Lighting::EnvKind::vertical_gradient;
    else if (type == "two_tone")
      l.env_kind = Lighting::EnvKind::two_tone;
    else
      fail("environment", "unknown type '" + type + "'");
    if (env.contains("a")) l.env_a = spectrum_of(env.at("a"), "environment.a");
    if (env.contains("b")) l.env_b = spectrum_of(env.at("b"), "environment.b");
  }
  return l;
}

Camera camera_of(const json& j) {
  Camera cam;
  if (j.contains("azimuth_deg") || j.contains("elevation_deg") || j.contains("radius")) {
    cam = Camera::from_azel(real_or(j, "azimuth_deg", 0), real_or(j, "elevation_deg", 0),
                            real_or(j, "radius", 2.5),
                            vec3_or(j, "look_at", Vec3::Zero()));
  } else {
    cam.position = vec3_or(j, "position", Vec3(0, 0, -2.5));
    cam.look_at = vec3_or(j, "look_at", Vec3::Zero());
  }
  if (j.contains("up")) cam.up = vec3_of(j.at("up"), "up");
  cam.vertical_fov_deg = real_or(j, "fov_deg", 40);
  cam.width = int_or(j, "width", 256);
  cam.height = int_or(j, "height", 256);
  cam.validate();
  return cam;
}

}  // namespace

const InducedField& Scene::single_part() const {
  if (parts.size() != 1)
    throw std::runtime_error("scene: operation requires exactly one geometry part");
  return *parts.front();
}

Iaddf Scene::iaddf() const {
  Iaddf scene;
  scene.field = composite.get();
  scene.domain = &domain;
  scene.material = material;
  scene.lighting = lighting;
  return scene;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("scene: cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("scene: JSON parse error in " + path + ": " + e.what());
  }

  Scene scene;
  if (doc.contains("domain")) {
    const json& d = doc.at("domain");
    scene.domain = Domain(vec3_or(d, "min", -Vec3::Ones()), vec3_or(d, "max", Vec3::Ones()),
                          real_or(d, "epsilon", 0.05));
  }

  if (!doc.contains("parts") || !doc.at("parts").is_array() || doc.at("parts").empty())
    fail("parts", "scene needs a non-empty 'parts' array");

  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  for (const auto& part : doc.at("parts")) {
    if (!part.contains("shape")) fail("parts", "part missing 'shape'");
    scene.parts.push_back(part_field(part.at("shape"), scene.domain, base));
    scene.transforms.push_back(part.contains("transform")
                                   ? transform_of(part.at("transform"))
                                   : RigidScale::identity());
  }

  Real eta_t = 1e-2, epsilon_s = 1e-2;
  if (doc.contains("compose")) {
    eta_t = real_or(doc.at("compose"), "eta_t", eta_t);
    epsilon_s = real_or(doc.at("compose"), "epsilon_s", epsilon_s);
  }
  std::vector<CompositeField::Part> cparts;
  for (size_t i = 0; i < scene.parts.size(); ++i) {
    scene.adapters.push_back(std::make_unique<InducedFieldAdapter>(*scene.parts[i]));
    cparts.push_back({scene.transforms[i], scene.adapters.back().get()});
  }
  scene.composite = std::make_unique<CompositeField>(
      std::move(cparts), eta_t, epsilon_s, 2 * scene.domain.diagonal());

  if (doc.contains("material")) scene.material = material_of(doc.at("material"));
  if (doc.contains("lighting")) scene.lighting = lighting_of(doc.at("lighting"));
  if (doc.contains("camera")) scene.camera = camera_of(doc.at("camera"));

  if (doc.contains("trace")) {
    const json& t = doc.at("trace");
    scene.trace.n_bounces = int_or(t, "bounces", 3);
    scene.trace.mc_samples = int_or(t, "samples", 256);
    scene.trace.blur_sigma = real_or(t, "blur_sigma", 1.0);
    scene.trace.gamma = real_or(t, "gamma", 2.2);
    if (scene.trace.n_bounces < 1 || scene.trace.mc_samples < 1)
      fail("trace", "bounces and samples must be >= 1");
  }
  if (doc.contains("cloud")) {
    const json& c = doc.at("cloud");
    scene.cloud.n_v = int_or(c, "n_v", 128);
    scene.cloud.n_hops = int_or(c, "n_hops", 3);
    scene.cloud.epsilon_p = real_or(c, "epsilon_p", 0.1);
    scene.cloud.n_points = int_or(c, "n_points", 1024);
    scene.cloud.eta_t = eta_t;
    scene.cloud.epsilon_s = epsilon_s;
  }
  if (doc.contains("udf")) {
    const json& u = doc.at("udf");
    scene.udf.k_c = int_or(u, "k_c", 5);
    scene.udf.tau_n = real_or(u, "tau_n", 5e-3);
    scene.udf.tau_d = real_or(u, "tau_d", 0.1);
    scene.udf.iters = int_or(u, "iters", 200);
    scene.udf.oracle_dirs = int_or(u, "oracle_dirs", 4096);
    scene.udf.init_dirs = int_or(u, "init_dirs", 64);
  }
  scene.udf.eta_t = eta_t;
  scene.udf.epsilon_s = epsilon_s;
  scene.udf.far_depth = 2 * scene.domain.diagonal();

  if (doc.contains("sampler")) {
    const json& s = doc.at("sampler");
    scene.sampler.epsilon_O = real_or(s, "epsilon_o", 0.05);
    scene.sampler.boundary_bias = real_or(s, "boundary_bias", 0.10);
  }
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    scene.tolerances.de_tol = real_or(t, "de_tol", 1e-3);
    scene.tolerances.io_radius = real_or(t, "io_radius", 1e-3);
    scene.tolerances.io_dirs = int_or(t, "io_dirs", 64);
    scene.tolerances.zero_thresh = real_or(t, "zero_thresh", 1e-4);
    scene.tolerances.probes_per_check = int_or(t, "probes", 10000);
  }
  if (doc.contains("seed")) scene.seed = doc.at("seed").get<std::uint64_t>();
  scene.sampler.seed = scene.seed;
  scene.trace.seed = scene.seed;
  return scene;
}

}  // namespace ddf
