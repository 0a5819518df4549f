// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ddf/render.hpp"
#include "ddf/scene.hpp"
#include "support/helpers.hpp"

using namespace ddf;

namespace {

namespace fs = std::filesystem;

fs::path write_scene(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "ddf_scene_test";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path);
  out << body;
  return path;
}

const char* kSphereScene = R"({
  "domain": {"min": [-1, -1, -1], "max": [1, 1, 1], "epsilon": 0.05},
  "parts": [{"shape": {"type": "sphere", "center": [0, 0, 0], "radius": 0.5}}],
  "camera": {"position": [0, 0, -2.5], "look_at": [0, 0, 0], "fov_deg": 40,
             "width": 65, "height": 65},
  "material": {"type": "lambertian", "albedo": [1, 1, 1]},
  "seed": 11
})";

}  // namespace

TEST_CASE("geometry renders use exactly one query per pixel") {
  const Scene scene = load_scene(write_scene("sphere.json", kSphereScene).string());
  RenderStats stats;

  const Image depth = render_geometry(scene.field(), scene.domain, scene.camera,
                                      RenderQuantity::depth, {}, &stats);
  CHECK(stats.field_queries == 65u * 65u);

  // center depth: camera 2.5 from the center of a 0.5 sphere
  CHECK(depth.at(32, 32) == doctest::Approx(2.0).epsilon(1e-6));  // odd res: exact axis
  // corner rays miss: +inf sentinel
  CHECK(std::isinf(depth.at(0, 0)));

  RenderStats vis_stats;
  const Image vis = render_geometry(scene.field(), scene.domain, scene.camera,
                                    RenderQuantity::visibility, {}, &vis_stats);
  CHECK(vis_stats.field_queries == 65u * 65u);
  CHECK(vis.at(32, 32) == 1.f);
  CHECK(vis.at(0, 0) == 0.f);
}

TEST_CASE("normals render matches analytic sphere normals") {
  const Scene scene = load_scene(write_scene("sphere.json", kSphereScene).string());
  const Image normals = render_geometry(scene.field(), scene.domain, scene.camera,
                                        RenderQuantity::normals);
  const Sphere sphere{Vec3::Zero(), 0.5};
  int checked = 0;
  for (int y = 0; y < 65; y += 3)
    for (int x = 0; x < 65; x += 3) {
      const Vec3 n(normals.at(x, y, 0), normals.at(x, y, 1), normals.at(x, y, 2));
      if (n.norm() < 0.5) continue;  // non-visible sentinel
      const OrientedPoint ray = pixel_ray(scene.camera, x, y);
      const auto hit = analytic_ddf(sphere, ray);
      REQUIRE(hit.visible);
      if (std::abs(hit.normal->dot(ray.v.vec())) < 0.2) continue;  // grazing rim
      const Real cosine = std::clamp(n.normalized().dot(hit.normal->vec()), -1.0, 1.0);
      CHECK(std::acos(cosine) <= 0.5 * kPi / 180);
      ++checked;
    }
  CHECK(checked > 30);
}

TEST_CASE("point cloud lands on the sphere and improves with hops") {
  const Scene scene = load_scene(write_scene("sphere.json", kSphereScene).string());
  CloudConfig cfg = scene.cloud;
  cfg.n_points = 300;

  Rng rng(443);
  const auto cloud = sample_point_cloud(scene.field(), scene.domain, cfg, rng);
  REQUIRE(static_cast<int>(cloud.size()) == cfg.n_points);
  int close = 0;
  Real mean3 = 0;
  for (const auto& p : cloud) {
    const Real dist = std::abs(p.norm() - 0.5);
    mean3 += dist;
    if (dist <= 5e-3) ++close;
  }
  mean3 /= cloud.size();
  CHECK(Real(close) / cloud.size() >= 0.99);

  SUBCASE("single-hop clouds are no better on average") {
    CloudConfig one = cfg;
    one.n_hops = 1;
    Rng rng1(443);
    const auto cloud1 = sample_point_cloud(scene.field(), scene.domain, one, rng1);
    Real mean1 = 0;
    for (const auto& p : cloud1) mean1 += std::abs(p.norm() - 0.5);
    mean1 /= cloud1.size();
    CHECK(mean3 <= mean1 + 1e-12);
  }
  SUBCASE("zero requested points give an empty cloud") {
    CloudConfig none = cfg;
    none.n_points = 0;
    Rng rng0(1);
    CHECK(sample_point_cloud(scene.field(), scene.domain, none, rng0).empty());
  }
  SUBCASE("empty scenes raise") {
    const LambdaField empty([](const OrientedPoint&) { return FieldSample{}; });
    CloudConfig small = cfg;
    small.n_points = 8;
    small.n_v = 16;
    Rng rng2(2);
    CHECK_THROWS_AS(sample_point_cloud(empty, scene.domain, small, rng2),
                    NoSurfaceVisible);
  }
}

TEST_CASE("bench: ddf renders with one query per pixel, sphere tracing needs far more") {
  const Scene scene = load_scene(write_scene("sphere.json", kSphereScene).string());
  Camera cam = scene.camera;
  cam.width = 32;
  cam.height = 32;
  const BenchResult r = bench_queries(scene.field(), scene.domain, cam, 64);
  CHECK(r.ddf_queries == 32u * 32u);
  CHECK(r.sphere_tracing_queries >= 10 * r.ddf_queries);
  CHECK(r.ddf_hits > 0);
  // both strategies agree on what they hit
  CHECK(std::abs(r.ddf_hits - r.sphere_tracing_hits) <= r.ddf_hits / 10 + 8);
}

TEST_CASE("weight-field and curvature renders") {
  // K = 2 mixture over nested spheres: w1 marks which component is active
  const Sphere outer{Vec3::Zero(), 0.7};
  const Sphere inner{Vec3::Zero(), 0.35};
  const DeltaMixtureField mixture(
      [&](const OrientedPoint& tau) { return analytic_ddf(outer, tau).visible ? 1.0 : 0.0; },
      [&](const OrientedPoint& tau) { return analytic_ddf(outer, tau).depth; },
      [&](const OrientedPoint& tau) { return analytic_ddf(inner, tau).depth; },
      [&](const OrientedPoint& tau) {
        return 1 / (1 + std::exp(-(tau.p.norm() - outer.radius) / 0.05));
      });
  Camera cam;
  cam.position = Vec3(0, 0, -2);
  cam.width = 17;
  cam.height = 17;
  cam.vertical_fov_deg = 45;
  const Domain dom = Domain::cube();

  RenderStats stats;
  const Image w1 = render_geometry(mixture, dom, cam, RenderQuantity::weight_w1, {}, &stats);
  CHECK(stats.field_queries == 17u * 17u);
  // the camera sits outside the outer sphere, so w1 > 0.5 everywhere
  CHECK(w1.at(8, 8) > 0.5f);

  const InducedField sphere(AnalyticShape(Sphere{Vec3::Zero(), 0.5}), dom);
  const InducedFieldAdapter adapter(sphere);
  const Image curv =
      render_geometry(adapter, dom, cam, RenderQuantity::gaussian_curv);
  CHECK(curv.at(8, 8) == doctest::Approx(4.0).epsilon(0.02));  // 1/r^2, r = 0.5
  const Image mean = render_geometry(adapter, dom, cam, RenderQuantity::mean_curv);
  CHECK(std::abs(mean.at(8, 8)) == doctest::Approx(4.0).epsilon(0.05));  // |2/r|
}

TEST_CASE("scene schema errors are reported") {
  CHECK_THROWS(load_scene("/nonexistent/scene.json"));
  CHECK_THROWS(load_scene(write_scene("bad1.json", "{ not json").string()));
  CHECK_THROWS(load_scene(write_scene("bad2.json", R"({"parts": []})").string()));
  CHECK_THROWS(load_scene(
      write_scene("bad3.json", R"({"parts": [{"shape": {"type": "wedge"}}]})").string()));
  CHECK_THROWS(load_scene(write_scene(
      "bad4.json",
      R"({"parts": [{"shape": {"type": "mesh", "path": "missing.obj"}}]})").string()));
}

TEST_CASE("scene with transforms, mesh parts and full config blocks loads") {
  const TriangleMesh mesh = make_icosphere(0.8, 2);
  const fs::path dir = fs::temp_directory_path() / "ddf_scene_test";
  fs::create_directories(dir);
  save_obj(mesh, (dir / "part.obj").string());

  const std::string body = R"({
    "domain": {"min": [-2, -2, -2], "max": [2, 2, 2], "epsilon": 0.05},
    "parts": [
      {"shape": {"type": "mesh", "path": "part.obj", "normalize": true},
       "transform": {"translation": [0.8, 0, 0], "scale": 0.5}},
      {"shape": {"type": "union", "shapes": [
         {"type": "sphere", "center": [0, 0, 0], "radius": 0.3},
         {"type": "box", "min": [-1.2, -0.2, -0.2], "max": [-0.8, 0.2, 0.2]}]}}
    ],
    "compose": {"eta_t": 0.001, "epsilon_s": 0.01},
    "material": {"type": "glossy", "albedo": [0.5, 0.5, 0.5], "eta_l": 0.25, "alpha": 3},
    "lighting": {"environment": {"type": "two_tone", "a": [1, 1, 1], "b": [0.1, 0.1, 0.1]},
                 "emission": [0, 0, 0]},
    "camera": {"azimuth_deg": 20, "elevation_deg": 30, "radius": 4,
               "fov_deg": 50, "width": 32, "height": 32},
    "trace": {"bounces": 2, "samples": 4},
    "udf": {"k_c": 4, "iters": 50},
    "tolerances": {"probes": 500},
    "seed": 99
  })";
  const Scene scene = load_scene(write_scene("full.json", body).string());
  CHECK(scene.parts.size() == 2);
  CHECK(scene.composite->part_count() == 2);
  CHECK(scene.udf.k_c == 4);
  CHECK(scene.trace.mc_samples == 4);
  CHECK(scene.seed == 99);
  CHECK_THROWS(scene.single_part());  // two parts

  // the composed field is queryable through the world transform
  Rng rng(5);
  int visible = 0;
  for (int i = 0; i < 500; ++i)
    if (scene.field().sample(testing::random_tau(rng, scene.domain)).visible()) ++visible;
  CHECK(visible > 10);
}
