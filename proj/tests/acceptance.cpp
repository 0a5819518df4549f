// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: every shipped guarantee gets one pass/fail line.
// Usage: acceptance <cli-binary> <scenes-dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ddf/consistency.hpp"
#include "ddf/losses.hpp"
#include "ddf/render.hpp"
#include "ddf/scene.hpp"
#include "ddf/udf.hpp"
#include "support/corruptions.hpp"
#include "support/helpers.hpp"

using namespace ddf;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d [%s] %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

constexpr Real kNonGrazingCos = 0.1;

/// Mesh gradient probes are only meaningful where d is differentiable, i.e.
/// when the whole FD stencil stays on one facet; crease-straddling stencils
/// measure the stencil, not the field.
bool single_facet_stencil(const InducedField& mesh, const OrientedPoint& tau, Real h) {
  const InducedSample center = mesh.query(tau);
  if (!center.visible || center.face_id < 0) return false;
  for (int a = 0; a < 3; ++a) {
    for (const Real sign : {-1.0, 1.0}) {
      Vec3 p = tau.p;
      p[a] += sign * h;
      const InducedSample probe = mesh.query({p, tau.v});
      if (!probe.visible || probe.face_id != center.face_id) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- criterion 1
void criterion_eikonal() {
  const auto start = std::chrono::steady_clock::now();
  const InducedField mesh(make_icosphere(0.6, 4), Domain::cube());  // 5120 tris
  const InducedFieldAdapter field(mesh);
  const FdConfig cfg;
  Rng rng(10001);

  int accepted = 0, residual_ok = 0, norm_ok = 0;
  while (accepted < 10000) {
    const auto tau = testing::random_nongrazing_tau(rng, mesh, kNonGrazingCos);
    if (!tau) break;
    if (!single_facet_stencil(mesh, *tau, cfg.h_p)) continue;
    const auto r = eikonal_residual(field, *tau, cfg);
    if (!r.ok()) continue;
    ++accepted;
    if (std::abs(r.value.residual) <= 1e-3) ++residual_ok;
    if (r.value.grad_norm >= 1 - 1e-6) ++norm_ok;
  }
  const Real seconds =
      std::chrono::duration<Real>(std::chrono::steady_clock::now() - start).count();

  const bool pass = accepted == 10000 && residual_ok >= 9900 && norm_ok == 10000 &&
                    seconds < 10.0;
  std::ostringstream detail;
  detail << "eikonal on 5120-tri icosphere: |grad.v+1|<=1e-3 on " << residual_ok
         << "/10000, ||grad||>=1-1e-6 on " << norm_ok << "/10000, " << seconds << " s";
  report(1, pass, detail.str());
}

// ---------------------------------------------------------------- criterion 2
void criterion_normals() {
  const FdConfig cfg;
  int sphere_ok = 0, sphere_n = 0;
  {
    const Sphere sphere{Vec3::Zero(), 0.6};
    const InducedField induced(AnalyticShape(sphere), Domain::cube());
    const InducedFieldAdapter field(induced);
    Rng rng(10002);
    while (sphere_n < 10000) {
      const auto tau = testing::random_nongrazing_tau(rng, induced, kNonGrazingCos);
      if (!tau) break;
      const auto g = grad_p(field, *tau, cfg);
      if (!g.ok()) continue;
      const auto n = normal_from_gradient(g.value, tau->v);
      if (!n.ok()) continue;
      const auto hit = induced.query(*tau);
      const Real cosine = std::clamp(n.value.dot(hit.normal->vec()), Real(-1), Real(1));
      ++sphere_n;
      if (std::acos(cosine) <= 0.1 * kPi / 180) ++sphere_ok;
    }
  }
  int mesh_ok = 0, mesh_n = 0;
  {
    const InducedField mesh(make_blob(0.55, 4), Domain::cube());
    const InducedFieldAdapter field(mesh);
    Rng rng(10003);
    while (mesh_n < 10000) {
      const auto tau = testing::random_nongrazing_tau(rng, mesh, kNonGrazingCos);
      if (!tau) break;
      if (!single_facet_stencil(mesh, *tau, cfg.h_p)) continue;
      const auto g = grad_p(field, *tau, cfg);
      if (!g.ok()) continue;
      const auto n = normal_from_gradient(g.value, tau->v);
      if (!n.ok()) continue;
      const auto hit = mesh.query(*tau);
      const Real cosine = std::clamp(n.value.dot(hit.normal->vec()), Real(-1), Real(1));
      ++mesh_n;
      if (std::acos(cosine) <= 2.0 * kPi / 180) ++mesh_ok;
    }
  }
  const bool pass = sphere_n == 10000 && mesh_n == 10000 && sphere_ok >= 9900 &&
                    mesh_ok >= 9900;
  std::ostringstream detail;
  detail << "normals: sphere <=0.1deg on " << sphere_ok << "/10000, mesh <=2deg on "
         << mesh_ok << "/10000";
  report(2, pass, detail.str());
}

// ---------------------------------------------------------------- criterion 3
void criterion_gradient_consistency() {
  const Sphere sphere{Vec3::Zero(), 0.6};
  const InducedField induced(AnalyticShape(sphere), Domain::cube());
  const InducedFieldAdapter field(induced);
  Rng rng(10004);
  int n = 0, ok = 0;
  while (n < 1000) {
    const auto tau = testing::random_nongrazing_tau(rng, induced, kNonGrazingCos);
    if (!tau) break;
    const auto r = grad_consistency_residual(field, *tau);
    if (!r.ok()) continue;
    const Real d = depth_argmax(field.sample(*tau)).depth;
    ++n;
    if (r.value.norm() <= 1e-3 * (1 + d)) ++ok;
  }
  const bool pass = n == 1000 && ok >= 950;
  std::ostringstream detail;
  detail << "gradient consistency: ||dv - d dp Pv|| <= 1e-3(1+d) on " << ok << "/1000";
  report(3, pass, detail.str());
}

// ---------------------------------------------------------------- criterion 4
void criterion_curvature() {
  bool pass = true;
  std::ostringstream detail;
  detail << "curvature:";
  for (const Real radius : {0.5, 1.0, 2.0}) {
    const InducedField induced(AnalyticShape(Sphere{Vec3::Zero(), radius}),
                               Domain::cube(radius + 0.6, 0.05));
    const InducedFieldAdapter field(induced);
    Rng rng(10005 + static_cast<int>(radius * 2));
    const Real expected = 1 / (radius * radius);
    int n = 0, ok = 0;
    while (n < 1000) {
      const auto tau = testing::random_nongrazing_tau(rng, induced, 0.3);
      if (!tau) break;
      const auto r = differential_report(field, *tau);
      if (!r.ok()) continue;
      ++n;
      if (std::abs(r.value.gaussian_curv - expected) <= 0.02 * expected) ++ok;
    }
    pass = pass && n == 1000 && ok == n;
    detail << " r=" << radius << ": " << ok << "/" << n;
  }
  {
    const InducedField plane(AnalyticShape(Plane{Vec3::Zero(), Vec3::UnitZ()}),
                             Domain::cube());
    const InducedFieldAdapter field(plane);
    Rng rng(10006);
    int n = 0, ok = 0;
    while (n < 1000) {
      const auto tau = testing::random_nongrazing_tau(rng, plane, 0.3);
      if (!tau) break;
      const auto r = differential_report(field, *tau);
      if (!r.ok()) continue;
      ++n;
      if (std::abs(r.value.gaussian_curv) <= 1e-3) ++ok;
    }
    pass = pass && n == 1000 && ok == n;
    detail << " plane: " << ok << "/" << n;
  }
  report(4, pass, detail.str());
}

// ---------------------------------------------------------------- criterion 5
void criterion_udf() {
  struct SceneDef {
    const char* name;
    std::vector<AnalyticShape> shapes;
  };
  const SceneDef defs[2] = {
      {"sphere", {Sphere{Vec3::Zero(), 0.5}}},
      {"two-sphere", {Sphere{Vec3(-0.5, 0, 0), 0.25}, Sphere{Vec3(0.5, 0, 0), 0.25}}}};

  bool pass = true;
  std::ostringstream detail;
  detail << "udf/mdf:";
  UdfConfig cfg;
  for (const auto& def : defs) {
    const InducedField induced(def.shapes, Domain::cube());
    const InducedFieldAdapter field(induced);
    Rng rng(10007);

    const auto exterior_clearance = [&](const Vec3& p) {
      Real nearest = kInf;
      Real gap = kInf;
      std::vector<Real> ds;
      for (const auto& s : def.shapes) {
        const auto& sphere = std::get<Sphere>(s);
        ds.push_back((p - sphere.center).norm() - sphere.radius);
      }
      for (Real d : ds) nearest = std::min(nearest, d);
      if (ds.size() == 2) gap = std::abs(ds[0] - ds[1]);
      return std::pair<Real, Real>(nearest, gap);
    };

    int n = 0, udf_ok = 0, dir_ok = 0, grad_ok = 0, grad_n = 0;
    while (n < 1000) {
      const Vec3 p = uniform_in_domain(rng, induced.domain());
      const auto [nearest, gap] = exterior_clearance(p);
      if (nearest < 0.05) continue;            // exterior, off-surface
      if (gap < 0.1) continue;                 // away from the medial plane
      if (induced.domain().boundary_distance(p) < 0.05) continue;
      Rng opt = split_stream(777000, n);
      const MdfResult r = mdf_optimize(field, p, cfg, opt);
      const auto oracle = udf_bruteforce(field, p, cfg.oracle_dirs);
      // the 4096-direction set quantizes the argmin direction by up to ~2
      // degrees; the angular comparison uses the same oracle converged by
      // local descent so the tolerance measures the estimator, not the grid
      const auto oracle_dir = udf_bruteforce_refined(field, p, cfg.oracle_dirs);
      ++n;
      if (std::abs(r.udf - oracle.udf) / oracle.udf <= 0.01) ++udf_ok;
      const Real cosine = std::clamp(r.v_star.dot(oracle_dir.dir.vec()), Real(-1), Real(1));
      if (std::acos(cosine) <= 2.0 * kPi / 180) ++dir_ok;
      if (n % 5 == 0 && grad_n < 200) {
        const RowVec3 grad = udf_bruteforce_gradient(field, p, cfg.oracle_dirs);
        const Vec3 neg = -grad.transpose();
        ++grad_n;
        if (r.v_star.dot(neg.normalized()) >= 0.999) ++grad_ok;
      }
    }
    pass = pass && n == 1000 && udf_ok == n && dir_ok == n && grad_ok == grad_n;
    detail << " " << def.name << ": udf " << udf_ok << "/" << n << ", v* " << dir_ok
           << "/" << n << ", grad " << grad_ok << "/" << grad_n;
  }
  report(5, pass, detail.str());
}

// ---------------------------------------------------------------- criterion 6
void criterion_composition() {
  const TriangleMesh part_mesh = make_icosphere(1.0, 4);
  const Domain world(Vec3::Constant(-2.4), Vec3::Constant(2.4), 0.05);
  const InducedField part(TriangleMesh(part_mesh), Domain::cube(1.2));
  const InducedFieldAdapter adapter(part);
  RigidScale left, right;
  left.translation = Vec3(-1.2, 0, 0);
  right.translation = Vec3(1.2, 0, 0);
  const InducedField union_field(
      merge_meshes({translated(part_mesh, left.translation),
                    translated(part_mesh, right.translation)}),
      world);

  Real means[3];
  int within = 0, total = 0;
  const Real etas[3] = {1e-1, 1e-2, 1e-3};
  for (int e = 0; e < 3; ++e) {
    CompositeField composite({{left, &adapter}, {right, &adapter}}, etas[e], 1e-2);
    Rng rng(10008);
    Real sum = 0;
    int n = 0;
    while (n < 10000) {
      const OrientedPoint tau = testing::random_tau(rng, world);
      const auto oracle = union_field.query(tau);
      if (!oracle.visible) continue;
      const Real rel =
          std::abs(composite.depth(tau).depth - oracle.depth) / oracle.depth;
      sum += rel;
      if (e == 2) {
        ++total;
        if (rel <= 1e-3) ++within;
      }
      ++n;
    }
    means[e] = sum / n;
  }
  const bool pass = within >= 9900 && total == 10000 && means[0] >= means[1] &&
                    means[1] >= means[2];
  std::ostringstream detail;
  detail << "composition: " << within << "/10000 within 1e-3 at eta 1e-3; mean err "
         << means[0] << " >= " << means[1] << " >= " << means[2];
  report(6, pass, detail.str());
}

// ------------------------------------------------------------- criteria 7 + 8
void criterion_consistency() {
  struct SceneDef {
    std::string name;
    std::unique_ptr<InducedField> field;
  };
  std::vector<SceneDef> scenes;
  scenes.push_back({"sphere", std::make_unique<InducedField>(
                                  AnalyticShape(Sphere{Vec3::Zero(), 0.6}), Domain::cube())});
  scenes.push_back({"box", std::make_unique<InducedField>(
                               AnalyticShape(Box{Vec3::Constant(-0.5), Vec3::Constant(0.5)}),
                               Domain::cube())});
  scenes.push_back({"blob-mesh", std::make_unique<InducedField>(make_blob(0.55, 4),
                                                                Domain::cube())});
  scenes.push_back(
      {"nested", std::make_unique<InducedField>(
                     std::vector<AnalyticShape>{Sphere{Vec3::Zero(), 0.7},
                                                Sphere{Vec3::Zero(), 0.35}},
                     Domain::cube())});

  Tolerances tol;
  tol.probes_per_check = 12000;

  bool soundness = true;
  bool vc_pass = true;
  long vc_pairs = 0;
  std::ostringstream sound_detail;
  Real worst_hausdorff = 0;
  bool dlp_pass = true;

  for (const auto& scene : scenes) {
    const InducedFieldAdapter adapter(*scene.field);
    Rng rng(10009);
    const auto reports = run_all_checks(adapter, scene.field->domain(), tol, rng);
    long violations = 0, checked_min = 1 << 30;
    for (const auto& r : reports) {
      violations += r.violations;
      checked_min = std::min(checked_min, r.checked);
      if (r.name == "vc_inequality") {
        vc_pass = vc_pass && r.violations == 0 && r.checked >= 10000;
        vc_pairs += r.checked;
      }
      if (r.violations > 0)
        sound_detail << " [" << scene.name << "/" << r.name << ": " << r.violations
                     << "]";
    }
    soundness = soundness && violations == 0 && checked_min >= 10000;

    // directly-lit points against the visibility discontinuities; both sets
    // need enough samples that coverage, not field error, sets the Hausdorff
    Rng rng2(10010);
    const auto dlp = directly_lit_points(*scene.field, 700000, rng2);
    const auto sets =
        estimate_point_sets(adapter, scene.field->domain(), 280000, rng2, tol);
    const Real hausdorff = sampled_hausdorff(dlp.points, sets.q_xi.points);
    worst_hausdorff = std::max(worst_hausdorff, hausdorff);
    dlp_pass = dlp_pass && hausdorff <= 2e-2;
  }

  // sensitivity: each catalogued corruption is flagged by its targeted check
  const InducedField base(AnalyticShape(Sphere{Vec3::Zero(), 0.6}), Domain::cube());
  Tolerances small_tol;
  small_tol.probes_per_check = 2000;
  Rng crng(10011);
  int flagged = 0;

  const auto scaled = testing::depth_scaled(base, 1.1);
  if (check_de_d(scaled, base.domain(), small_tol, crng).violations > 0) ++flagged;
  const auto squared = testing::depth_squared(base);
  if (check_de_d(squared, base.domain(), small_tol, crng).violations > 0) ++flagged;
  const auto dilated = testing::visibility_dilated(base, Sphere{Vec3::Zero(), 0.6}, 0.1);
  {
    const auto sets = estimate_point_sets(dilated, base.domain(), 500, crng, small_tol);
    if (check_compatibility(dilated, base.domain(), sets, 2000, crng, small_tol)
            .violations > 0)
      ++flagged;
  }
  const auto hole = testing::anisotropic_hole(base, Vec3::UnitZ());
  if (check_io_xi(hole, base.domain(), small_tol, crng).violations > 0) ++flagged;
  const auto flip = testing::midray_flip(base, Vec3(0.85, 0, 0), 0.13);
  Tolerances flip_tol = small_tol;
  flip_tol.probes_per_check = 64000;  // the ball subtends under 1% of rays
  if (check_de_xi(flip, base.domain(), flip_tol, crng).violations > 0) ++flagged;

  {
    std::ostringstream detail;
    detail << "consistency: 4 scenes x 8 checks sound=" << (soundness ? "yes" : "no")
           << sound_detail.str() << ", corruptions flagged " << flagged
           << "/5, worst DLP-vs-Qxi hausdorff " << worst_hausdorff;
    report(7, soundness && flagged == 5 && dlp_pass, detail.str());
  }
  {
    std::ostringstream detail;
    detail << "vc inequality: 0 violations over " << vc_pairs << " pairs across 4 scenes";
    report(8, vc_pass, detail.str());
  }
}

// ---------------------------------------------------------------- criterion 9
void criterion_furnace() {
  const InducedField sphere(AnalyticShape(Sphere{Vec3::Zero(), 0.5}), Domain::cube());
  const InducedFieldAdapter adapter(sphere);

  Camera cam;
  cam.position = Vec3(0, 0, -2);
  cam.width = 25;
  cam.height = 25;
  cam.vertical_fov_deg = 32;

  bool pass = true;
  std::ostringstream detail;
  detail << "furnace:";

  // per-pixel mean vs rho * L0 at m = 256
  for (const Real rho : {0.25, 0.5, 1.0}) {
    Iaddf scene;
    scene.field = &adapter;
    scene.domain = &sphere.domain();
    scene.material = Lambertian{Spectrum::Constant(rho)};
    scene.lighting = Lighting{};  // constant E = 1

    TraceConfig cfg;
    cfg.n_bounces = 2;
    cfg.mc_samples = 1;
    int on_shape = 0, within = 0;
    for (int y = 0; y < cam.height; ++y)
      for (int x = 0; x < cam.width; ++x) {
        const OrientedPoint ray = pixel_ray(cam, x, y);
        if (!adapter.sample(ray).visible()) continue;
        const int m = 256;
        Real sum = 0, sum2 = 0;
        for (int k = 0; k < m; ++k) {
          Rng rng = split_stream(20000 + static_cast<int>(rho * 8),
                                 (static_cast<std::uint64_t>(y) * cam.width + x) * m + k);
          const Real c = path_trace_pixel(scene, ray, cfg, rng)[0];
          sum += c;
          sum2 += c * c;
        }
        const Real mean = sum / m;
        const Real se = std::sqrt(std::max(Real(0), sum2 / m - mean * mean) / m);
        ++on_shape;
        if (std::abs(mean - rho) <= 3 * se + 1e-12) ++within;
      }
    pass = pass && on_shape > 100 && within >= on_shape * 99 / 100;
    detail << " rho=" << rho << ": " << within << "/" << on_shape;
  }

  // standard error scaling ~ 1/sqrt(m) within 20%
  {
    Iaddf scene;
    scene.field = &adapter;
    scene.domain = &sphere.domain();
    scene.material = Lambertian{Spectrum::Constant(0.5)};
    scene.lighting = Lighting{};
    TraceConfig cfg;
    cfg.n_bounces = 2;
    cfg.mc_samples = 1;
    const OrientedPoint ray{Vec3(0.05, 0.02, -2), UnitVec(Vec3(-0.02, -0.01, 1))};
    Real se[3];
    const int ms[3] = {64, 256, 1024};
    for (int i = 0; i < 3; ++i) {
      // average the SE estimate over repeats to stabilize the ratio
      const int repeats = 40;
      Real se_acc = 0;
      for (int rep = 0; rep < repeats; ++rep) {
        Real sum = 0, sum2 = 0;
        for (int k = 0; k < ms[i]; ++k) {
          Rng rng = split_stream(31000 + i * 100 + rep, k);
          const Real c = path_trace_pixel(scene, ray, cfg, rng)[0];
          sum += c;
          sum2 += c * c;
        }
        const Real mean = sum / ms[i];
        se_acc += std::sqrt(std::max(Real(0), sum2 / ms[i] - mean * mean) / ms[i]);
      }
      se[i] = se_acc / repeats;
    }
    const Real r1 = se[0] / se[1];  // ideal 2
    const Real r2 = se[1] / se[2];  // ideal 2
    pass = pass && r1 >= 1.6 && r1 <= 2.4 && r2 >= 1.6 && r2 <= 2.4;
    detail << " se-ratios " << r1 << "," << r2;
  }

  // mirror: deterministic pixel equals reflected environment
  {
    Lighting sky;
    sky.env_kind = Lighting::EnvKind::two_tone;
    sky.env_a = Spectrum(0.9, 0.7, 0.5);
    sky.env_b = Spectrum(0.2, 0.3, 0.4);
    Iaddf scene;
    scene.field = &adapter;
    scene.domain = &sphere.domain();
    scene.material = Mirror{Spectrum(0.8, 0.6, 0.4)};
    scene.lighting = sky;
    TraceConfig cfg;
    Rng rng(32000);
    const OrientedPoint center = pixel_ray(cam, 12, 12);  // odd res: exact axis
    const Spectrum traced = path_trace_pixel(scene, center, cfg, rng);
    const Spectrum expected = Spectrum(0.8, 0.6, 0.4) * sky.env_b;  // reflects to -z
    const Real err = (traced - expected).abs().maxCoeff();
    pass = pass && err <= 1e-6;
    detail << " mirror err " << err;
  }
  report(9, pass, detail.str());
}

// --------------------------------------------------------------- criterion 10
void criterion_efficiency(const fs::path& scenes_dir) {
  const Scene scene = load_scene((scenes_dir / "sphere.json").string());
  Camera cam = scene.camera;
  cam.width = 128;
  cam.height = 128;
  const BenchResult r = bench_queries(scene.field(), scene.domain, cam, 64);
  const bool pass =
      r.ddf_queries == 128u * 128u && r.sphere_tracing_queries >= 10 * r.ddf_queries;
  std::ostringstream detail;
  detail << "efficiency: ddf " << r.ddf_queries << " queries vs sphere tracing "
         << r.sphere_tracing_queries << " ("
         << double(r.sphere_tracing_queries) / double(r.ddf_queries) << "x)";
  report(10, pass, detail.str());
}

// --------------------------------------------------------------- criterion 11
void criterion_point_cloud(const fs::path& scenes_dir) {
  const Scene scene = load_scene((scenes_dir / "sphere.json").string());
  CloudConfig cfg = scene.cloud;
  cfg.n_points = 1024;

  Rng rng3(10012);
  const auto cloud3 = sample_point_cloud(scene.field(), scene.domain, cfg, rng3);
  int close = 0;
  Real mean3 = 0;
  for (const auto& p : cloud3) {
    const Real dist = std::abs(p.norm() - 0.5);
    mean3 += dist;
    if (dist <= 5e-3) ++close;
  }
  mean3 /= cloud3.size();

  CloudConfig one = cfg;
  one.n_hops = 1;
  Rng rng1(10012);
  const auto cloud1 = sample_point_cloud(scene.field(), scene.domain, one, rng1);
  Real mean1 = 0;
  for (const auto& p : cloud1) mean1 += std::abs(p.norm() - 0.5);
  mean1 /= cloud1.size();

  const bool pass = cloud3.size() == 1024 && close >= 1024 * 99 / 100 && mean3 <= mean1;
  std::ostringstream detail;
  detail << "point cloud: " << close << "/1024 within 5e-3, mean dist N_H=3 " << mean3
         << " <= N_H=1 " << mean1;
  report(11, pass, detail.str());
}

// --------------------------------------------------------------- criterion 12
bool files_equal(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  const std::string da((std::istreambuf_iterator<char>(fa)),
                       std::istreambuf_iterator<char>());
  const std::string db((std::istreambuf_iterator<char>(fb)),
                       std::istreambuf_iterator<char>());
  return !da.empty() && da == db;
}

void criterion_determinism(const std::string& cli, const fs::path& scenes_dir) {
  const fs::path work = fs::temp_directory_path() / "ddf_acceptance";
  fs::remove_all(work);
  fs::create_directories(work / "a");
  fs::create_directories(work / "b");
  const std::string scene = (scenes_dir / "sphere.json").string();

  struct Cmd {
    std::string name;
    std::string args;      // with OUT placeholder
    std::vector<std::string> outputs;
  };
  const std::vector<Cmd> commands = {
      {"render",
       "render --scene " + scene + " --out OUT/depth.pfm --quantity depth --width 64 "
       "--height 64 --seed 5",
       {"depth.pfm", "depth.ppm"}},
      {"trace",
       "trace --scene " + scene + " --out OUT/trace.pfm --width 16 --height 16 "
       "--samples 8 --seed 5",
       {"trace.pfm", "trace.ppm"}},
      {"sample-data",
       "sample-data --scene " + scene + " --out OUT/data.bin --per-type 50 --csv --seed 5",
       {"data.bin", "data.csv"}},
      {"extract-udf",
       "extract-udf --scene " + scene + " --out OUT/udf.csv --grid-res 6 --slices 2 "
       "--seed 5",
       {"udf.csv", "udf_z0.pfm", "udf_z1.pfm"}},
      {"check-consistency",
       "check-consistency --scene " + scene + " --out OUT/report.json --probes 400 "
       "--seed 5",
       {"report.json"}},
      {"sample-cloud",
       "sample-cloud --scene " + scene + " --out OUT/cloud.csv --n-points 100 --seed 5",
       {"cloud.csv"}},
      {"bench-queries",
       "bench-queries --scene " + scene + " --out OUT/bench.json --width 16 --height 16 "
       "--seed 5",
       {"bench.json"}},
  };

  bool pass = true;
  std::string failed;
  for (const auto& cmd : commands) {
    for (const char* run : {"a", "b"}) {
      std::string args = cmd.args;
      const std::string out_dir = (work / run).string();
      for (size_t pos; (pos = args.find("OUT")) != std::string::npos;)
        args.replace(pos, 3, out_dir);
      const std::string full = cli + " " + args + " > /dev/null 2>&1";
      if (std::system(full.c_str()) != 0) {
        pass = false;
        failed += " " + cmd.name + "(exit)";
        break;
      }
    }
    for (const auto& out : cmd.outputs) {
      if (!files_equal(work / "a" / out, work / "b" / out)) {
        pass = false;
        failed += " " + cmd.name + "/" + out;
      }
    }
  }
  report(12, pass, "determinism: two seeded runs of every subcommand byte-identical" +
                       (failed.empty() ? "" : "; mismatches:" + failed));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli-binary> <scenes-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path scenes_dir = argv[2];

  criterion_eikonal();
  criterion_normals();
  criterion_gradient_consistency();
  criterion_curvature();
  criterion_udf();
  criterion_composition();
  criterion_consistency();
  criterion_furnace();
  criterion_efficiency(scenes_dir);
  criterion_point_cloud(scenes_dir);
  criterion_determinism(cli, scenes_dir);

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
