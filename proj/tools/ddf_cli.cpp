// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
//
// ddf: ray-based shape queries on exact directed distance fields. Geometry
// renders, path tracing, labeled-sample extraction, UDF/MDF grids,
// view-consistency verification, point clouds, and query-count benchmarks.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "ddf/scene.hpp"

namespace {

using namespace ddf;

struct CommonArgs {
  std::string scene_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int width = 0;
  int height = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_out = true) {
  cmd->add_option("--scene", args.scene_path, "scene JSON file")->required();
  auto* out = cmd->add_option("--out", args.out_path, "output path");
  if (needs_out) out->required();
  cmd->add_option("--seed", args.seed, "RNG seed override")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--width", args.width, "image width override");
  cmd->add_option("--height", args.height, "image height override");
}

Scene load(const CommonArgs& args) {
  Scene scene = load_scene(args.scene_path);
  if (args.seed_set) {
    scene.seed = args.seed;
    scene.sampler.seed = args.seed;
    scene.trace.seed = args.seed;
  }
  if (args.width > 0) scene.camera.width = args.width;
  if (args.height > 0) scene.camera.height = args.height;
  return scene;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.find_last_of('.');
  return (dot == std::string::npos ? path : path.substr(0, dot)) + suffix;
}

int cmd_render(const CommonArgs& args, const std::string& quantity_name) {
  const Scene scene = load(args);
  const RenderQuantity quantity = parse_render_quantity(quantity_name);
  RenderStats stats;
  const Image image =
      render_geometry(scene.field(), scene.domain, scene.camera, quantity, {}, &stats);
  write_pfm(image, args.out_path);

  // preview: normalize finite values, non-visible pixels white
  Image preview = image;
  float lo = std::numeric_limits<float>::infinity(), hi = -lo;
  for (float v : preview.data)
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  const float range = hi > lo ? hi - lo : 1.f;
  for (auto& v : preview.data)
    if (std::isfinite(v)) v = (v - lo) / range;
  write_ppm(preview, with_suffix(args.out_path, ".ppm"));

  std::cout << "wrote " << args.out_path << " (" << image.width << "x" << image.height
            << ", " << stats.field_queries << " field queries)\n";
  return 0;
}

int cmd_trace(const CommonArgs& args, int bounces, int samples) {
  Scene scene = load(args);
  if (bounces > 0) scene.trace.n_bounces = bounces;
  if (samples > 0) scene.trace.mc_samples = samples;
  TraceStats stats;
  const Image hdr = render_trace(scene.iaddf(), scene.camera, scene.trace, &stats);
  write_pfm(hdr, args.out_path);
  const Image display = postprocess(hdr, scene.trace.blur_sigma, scene.trace.gamma);
  write_ppm(display, with_suffix(args.out_path, ".ppm"));
  std::cout << "wrote " << args.out_path << " (bounces " << scene.trace.n_bounces
            << ", samples " << scene.trace.mc_samples << ", degenerate normals "
            << stats.degenerate_normals << ")\n";
  return 0;
}

int cmd_sample_data(const CommonArgs& args, const std::string& preset, int per_type,
                    bool csv) {
  const Scene scene = load(args);
  BatchCounts counts = BatchCounts::desk_scale();
  if (preset == "full") counts = BatchCounts::full_scale();
  if (per_type > 0)
    counts = {per_type, per_type, per_type / 2, per_type / 2, per_type / 2, per_type / 2};
  const auto batch =
      sample_batch(counts, scene.single_part(), scene.domain, scene.sampler);
  write_samples_binary(args.out_path, batch);
  if (csv) write_samples_csv(with_suffix(args.out_path, ".csv"), batch);
  std::cout << "wrote " << batch.size() << " samples to " << args.out_path << "\n";
  return 0;
}

int cmd_extract_udf(const CommonArgs& args, int grid_res, int slices) {
  const Scene scene = load(args);
  std::ofstream csv(args.out_path);
  if (!csv) throw std::runtime_error("cannot open " + args.out_path);
  csv.precision(10);
  csv << "px,py,pz,vx,vy,vz,udf\n";

  const Vec3 lo = scene.domain.min_corner();
  const Vec3 ext = scene.domain.extent();
  for (int sz = 0; sz < slices; ++sz) {
    Image slice(grid_res, grid_res, 1);
    const Real z = lo.z() + ext.z() * (sz + 0.5) / slices;
    for (int iy = 0; iy < grid_res; ++iy)
      for (int ix = 0; ix < grid_res; ++ix) {
        const Vec3 p(lo.x() + ext.x() * (ix + 0.5) / grid_res,
                     lo.y() + ext.y() * (iy + 0.5) / grid_res, z);
        Rng rng = split_stream(scene.seed,
                               (static_cast<std::uint64_t>(sz) * grid_res + iy) * grid_res + ix);
        try {
          const MdfResult r = mdf_optimize(scene.field(), p, scene.udf, rng);
          csv << p.x() << ',' << p.y() << ',' << p.z() << ',' << r.v_star.x() << ','
              << r.v_star.y() << ',' << r.v_star.z() << ',' << r.udf << '\n';
          slice.at(ix, iy) = static_cast<float>(r.udf);
        } catch (const NoSurfaceVisible&) {
          csv << p.x() << ',' << p.y() << ',' << p.z() << ",0,0,0,inf\n";
          slice.at(ix, iy) = std::numeric_limits<float>::infinity();
        }
      }
    write_pfm(slice, with_suffix(args.out_path, "_z" + std::to_string(sz) + ".pfm"));
  }
  std::cout << "wrote " << args.out_path << " and " << slices << " PFM slices\n";
  return 0;
}

int cmd_check_consistency(const CommonArgs& args, int probes) {
  Scene scene = load(args);
  if (probes > 0) scene.tolerances.probes_per_check = probes;
  Rng rng(mix64(scene.seed + 1));
  const auto reports = run_all_checks(scene.field(), scene.domain, scene.tolerances, rng);

  bool all_pass = true;
  nlohmann::json out;
  out["scene"] = args.scene_path;
  out["probes_per_check"] = scene.tolerances.probes_per_check;
  for (const auto& r : reports) {
    nlohmann::json jr;
    jr["checked"] = r.checked;
    jr["violations"] = r.violations;
    jr["worst_magnitude"] = r.worst_magnitude;
    for (const auto& w : r.witnesses) {
      jr["witnesses"].push_back({{"p", {w.p.x(), w.p.y(), w.p.z()}},
                                 {"v", {w.v.x(), w.v.y(), w.v.z()}}});
    }
    out["checks"][r.name] = jr;
    all_pass = all_pass && r.pass();
    std::cout << r.name << ": " << (r.pass() ? "pass" : "FAIL") << " (" << r.violations
              << "/" << r.checked << " violations)\n";
  }
  out["verdict"] = all_pass ? "consistent" : "inconsistent";
  if (!args.out_path.empty()) {
    std::ofstream f(args.out_path);
    f << out.dump(2) << '\n';
  }
  return all_pass ? 0 : 1;
}

int cmd_sample_cloud(const CommonArgs& args, int n_points) {
  Scene scene = load(args);
  if (n_points >= 0) scene.cloud.n_points = n_points;
  Rng rng(mix64(scene.seed + 2));
  const auto cloud = sample_point_cloud(scene.field(), scene.domain, scene.cloud, rng);
  std::ofstream out(args.out_path);
  if (!out) throw std::runtime_error("cannot open " + args.out_path);
  out.precision(10);
  out << "x,y,z\n";
  for (const auto& p : cloud) out << p.x() << ',' << p.y() << ',' << p.z() << '\n';
  std::cout << "wrote " << cloud.size() << " points to " << args.out_path << "\n";
  return 0;
}

int cmd_bench_queries(const CommonArgs& args, int dirs) {
  Scene scene = load(args);
  if (args.width == 0) scene.camera.width = 128;
  if (args.height == 0) scene.camera.height = 128;
  const BenchResult r =
      bench_queries(scene.field(), scene.domain, scene.camera, dirs);
  const double ratio =
      r.ddf_queries ? double(r.sphere_tracing_queries) / double(r.ddf_queries) : 0;
  std::cout << "ddf render:      " << r.ddf_queries << " field queries ("
            << r.ddf_hits << " hit pixels)\n"
            << "sphere tracing:  " << r.sphere_tracing_queries << " field queries ("
            << r.sphere_tracing_hits << " hit pixels, " << dirs << "-direction UDF)\n"
            << "query ratio:     " << ratio << "x\n";
  if (!args.out_path.empty()) {
    nlohmann::json out{{"ddf_queries", r.ddf_queries},
                       {"sphere_tracing_queries", r.sphere_tracing_queries},
                       {"ratio", ratio}};
    std::ofstream f(args.out_path);
    f << out.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact directed-distance-field toolkit"};
  app.require_subcommand(1);

  CommonArgs render_args, trace_args, data_args, udf_args, check_args, cloud_args,
      bench_args;
  std::string quantity = "depth";
  int bounces = 0, samples = 0;
  std::string preset = "desk";
  int per_type = 0;
  bool csv = false;
  int grid_res = 64, slices = 4;
  int probes = 0;
  int n_points = -1;
  int dirs = 256;

  auto* render = app.add_subcommand("render", "geometry render (one query per pixel)");
  add_common(render, render_args);
  render->add_option("--quantity", quantity,
                     "depth|visibility|normals|gaussian_curv|mean_curv|weight_w1");

  auto* trace = app.add_subcommand("trace", "Monte-Carlo path trace");
  add_common(trace, trace_args);
  trace->add_option("--bounces", bounces, "max bounces override");
  trace->add_option("--samples", samples, "MC samples per pixel override");

  auto* data = app.add_subcommand("sample-data", "extract labeled oriented-point samples");
  add_common(data, data_args);
  data->add_option("--preset", preset, "desk|full");
  data->add_option("--per-type", per_type, "override: U/A count (B/S/T/O get half)");
  data->add_flag("--csv", csv, "also write a CSV dump");

  auto* udf = app.add_subcommand("extract-udf", "MDF/UDF grid extraction");
  add_common(udf, udf_args);
  udf->add_option("--grid-res", grid_res, "grid resolution per slice");
  udf->add_option("--slices", slices, "number of z slices");

  auto* check = app.add_subcommand("check-consistency", "run the view-consistency verifier");
  add_common(check, check_args, false);
  check->add_option("--probes", probes, "probes per check override");

  auto* cloud = app.add_subcommand("sample-cloud", "explicit surface point cloud");
  add_common(cloud, cloud_args);
  cloud->add_option("--n-points", n_points, "points to return");

  auto* bench = app.add_subcommand("bench-queries", "query-count comparison vs sphere tracing");
  add_common(bench, bench_args, false);
  bench->add_option("--dirs", dirs, "directions for the brute-force UDF baseline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (render->parsed()) return cmd_render(render_args, quantity);
    if (trace->parsed()) return cmd_trace(trace_args, bounces, samples);
    if (data->parsed()) return cmd_sample_data(data_args, preset, per_type, csv);
    if (udf->parsed()) return cmd_extract_udf(udf_args, grid_res, slices);
    if (check->parsed()) return cmd_check_consistency(check_args, probes);
    if (cloud->parsed()) return cmd_sample_cloud(cloud_args, n_points);
    if (bench->parsed()) return cmd_bench_queries(bench_args, dirs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
