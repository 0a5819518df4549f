// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/render.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <thread>

#include "ddf/compose.hpp"
#include "ddf/udf.hpp"

namespace ddf {

RenderQuantity parse_render_quantity(const std::string& name) {
  if (name == "depth") return RenderQuantity::depth;
  if (name == "visibility") return RenderQuantity::visibility;
  if (name == "normals") return RenderQuantity::normals;
  if (name == "gaussian_curv") return RenderQuantity::gaussian_curv;
  if (name == "mean_curv") return RenderQuantity::mean_curv;
  if (name == "weight_w1") return RenderQuantity::weight_w1;
  throw std::invalid_argument("unknown render quantity: " + name);
}

namespace {

/// Parallel map over rows; deterministic because pixels write disjoint slots.
void for_each_row(int height, const std::function<void(int)>& body) {
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw <= 1 || height < 8) {
    for (int y = 0; y < height; ++y) body(y);
    return;
  }
  const unsigned workers = std::min(hw, 8u);
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int y = next.fetch_add(1); y < height; y = next.fetch_add(1)) body(y);
    });
  for (auto& t : pool) t.join();
}

struct RoutedRay {
  bool enters = false;
  OrientedPoint tau;
  Real offset = 0;
};

RoutedRay route(const Domain& dom, const OrientedPoint& ray) {
  if (dom.contains(ray.p)) return {true, ray, 0};
  const auto entry = domain_entry_point(dom, ray.p, ray.v);
  if (!entry) return {false, ray, 0};
  return {true, {entry->p_r, ray.v}, entry->offset};
}

}  // namespace

Image render_geometry(const FieldOracle& field, const Domain& dom, const Camera& camera,
                      RenderQuantity quantity, const FdConfig& fd, RenderStats* stats) {
  camera.validate();
  const bool vector_valued = quantity == RenderQuantity::normals;
  Image image(camera.width, camera.height, vector_valued ? 3 : 1);
  if (quantity == RenderQuantity::depth) image.data.assign(image.data.size(),
                                                           std::numeric_limits<float>::infinity());

  CountingField counted(field);
  std::atomic<long> failed{0};

  for_each_row(camera.height, [&](int y) {
    for (int x = 0; x < camera.width; ++x) {
      const RoutedRay routed = route(dom, pixel_ray(camera, x, y));
      // missing B means xi = 0 with no field query; sentinel values are the
      // buffer defaults (inf depth, zeros elsewhere)
      if (!routed.enters) continue;
      const OrientedPoint& tau = routed.tau;
      switch (quantity) {
        case RenderQuantity::depth: {
          const FieldSample s = counted.sample(tau);
          image.at(x, y) = s.visible()
                               ? static_cast<float>(depth_argmax(s).depth + routed.offset)
                               : std::numeric_limits<float>::infinity();
          break;
        }
        case RenderQuantity::visibility: {
          image.at(x, y) = static_cast<float>(counted.sample(tau).xi);
          break;
        }
        case RenderQuantity::weight_w1: {
          const FieldSample s = counted.sample(tau);
          image.at(x, y) = s.k() > 0 ? static_cast<float>(s.components[0].weight) : 1.f;
          break;
        }
        case RenderQuantity::normals: {
          const FieldSample s = counted.sample(tau);
          if (!s.visible()) break;  // zero normal sentinel
          const auto grad = grad_p(counted, tau, fd);
          if (!grad.ok()) {
            ++failed;
            break;
          }
          const auto n = normal_from_gradient(grad.value, tau.v);
          if (!n.ok()) {
            ++failed;
            break;
          }
          for (int c = 0; c < 3; ++c)
            image.at(x, y, c) = static_cast<float>(n.value.vec()[c]);
          break;
        }
        case RenderQuantity::gaussian_curv:
        case RenderQuantity::mean_curv: {
          const FieldSample s = counted.sample(tau);
          if (!s.visible()) break;
          const auto report = differential_report(counted, tau, fd);
          if (!report.ok()) {
            ++failed;
            break;
          }
          image.at(x, y) = static_cast<float>(quantity == RenderQuantity::gaussian_curv
                                                  ? report.value.gaussian_curv
                                                  : report.value.mean_curv);
          break;
        }
      }
    }
  });

  if (stats) {
    stats->field_queries = counted.count();
    stats->failed_pixels = failed.load();
  }
  return image;
}

Image render_trace(const Iaddf& scene, const Camera& camera, const TraceConfig& cfg,
                   TraceStats* stats) {
  camera.validate();
  Image image(camera.width, camera.height, 3);
  std::vector<TraceStats> row_stats(camera.height);

  for_each_row(camera.height, [&](int y) {
    for (int x = 0; x < camera.width; ++x) {
      Rng rng = split_stream(cfg.seed, static_cast<std::uint64_t>(y) * camera.width + x);
      const Spectrum c =
          path_trace_pixel(scene, pixel_ray(camera, x, y), cfg, rng, &row_stats[y]);
      for (int ch = 0; ch < 3; ++ch) image.at(x, y, ch) = static_cast<float>(c[ch]);
    }
  });

  if (stats)
    for (const auto& rs : row_stats) {
      stats->degenerate_normals += rs.degenerate_normals;
      stats->gauss_fallbacks += rs.gauss_fallbacks;
    }
  return image;
}

std::vector<Vec3> sample_point_cloud(const FieldOracle& field, const Domain& dom,
                                     const CloudConfig& cfg, Rng& rng) {
  if (cfg.n_points == 0) return {};
  const int n_draw = static_cast<int>(std::ceil((1 + cfg.epsilon_p) * cfg.n_points));

  struct Candidate {
    Vec3 p;
    Real xi = 0;
  };
  std::vector<Candidate> candidates(n_draw);
  bool any_visible = false;

  for (int i = 0; i < n_draw; ++i) {
    Vec3 p = uniform_in_domain(rng, dom);
    Real final_xi = 0;
    for (int hop = 0; hop < cfg.n_hops; ++hop) {
      std::vector<Real> xi(cfg.n_v), depth(cfg.n_v);
      std::vector<Vec3> dirs(cfg.n_v);
      for (int j = 0; j < cfg.n_v; ++j) {
        const UnitVec v = uniform_sphere(rng);
        const FieldSample s = field.sample({p, v});
        dirs[j] = v.vec();
        xi[j] = s.xi;
        depth[j] = depth_argmax(s).depth;
      }
      const auto w = softmax_visibility_weights(xi, depth, cfg.eta_t, cfg.epsilon_s);
      Vec3 blend = Vec3::Zero();
      for (int j = 0; j < cfg.n_v; ++j) blend += w[j] * dirs[j];
      if (blend.norm() < 1e-12) {
        final_xi = 0;
        break;
      }
      const UnitVec v_hat = UnitVec(blend);
      const FieldSample s = field.sample({p, v_hat});
      final_xi = s.xi;
      if (!s.visible() || !std::isfinite(depth_argmax(s).depth)) break;  // keep p
      p = p + depth_argmax(s).depth * v_hat.vec();
    }
    candidates[i] = {p, final_xi};
    any_visible = any_visible || final_xi > 0.5;
  }
  if (!any_visible)
    throw NoSurfaceVisible("sample_point_cloud: scene is empty from every sampled ray");

  // sort by final visibility, keep the top n_points
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.xi > b.xi; });
  std::vector<Vec3> out;
  out.reserve(cfg.n_points);
  for (int i = 0; i < cfg.n_points && i < n_draw; ++i) out.push_back(candidates[i].p);
  return out;
}

BenchResult bench_queries(const FieldOracle& field, const Domain& dom,
                          const Camera& camera, int tracer_dirs, Real hit_epsilon,
                          int max_steps) {
  camera.validate();
  BenchResult result;

  {
    CountingField counted(field);
    for (int y = 0; y < camera.height; ++y)
      for (int x = 0; x < camera.width; ++x) {
        const RoutedRay routed = route(dom, pixel_ray(camera, x, y));
        if (!routed.enters) continue;
        if (counted.sample(routed.tau).visible()) ++result.ddf_hits;
      }
    result.ddf_queries = counted.count();
  }

  {
    CountingField counted(field);
    for (int y = 0; y < camera.height; ++y)
      for (int x = 0; x < camera.width; ++x) {
        const RoutedRay routed = route(dom, pixel_ray(camera, x, y));
        if (!routed.enters) continue;
        Vec3 p = routed.tau.p + 1e-6 * routed.tau.v.vec();
        for (int step = 0; step < max_steps && dom.contains(p); ++step) {
          Real radius;
          try {
            radius = udf_bruteforce(counted, p, tracer_dirs).udf;
          } catch (const NoSurfaceVisible&) {
            break;
          }
          if (radius < hit_epsilon) {
            ++result.sphere_tracing_hits;
            break;
          }
          p += radius * routed.tau.v.vec();
        }
      }
    result.sphere_tracing_queries = counted.count();
  }
  return result;
}

}  // namespace ddf
