// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace ddf {

Real TriangleMesh::total_area() const {
  Real a = 0;
  for (Real fa : face_areas) a += fa;
  return a;
}

void TriangleMesh::finalize() {
  const int nv = static_cast<int>(vertices.size());
  std::vector<std::array<int, 3>> kept;
  kept.reserve(faces.size());
  face_normals.clear();
  face_areas.clear();
  for (const auto& f : faces) {
    if (f[0] < 0 || f[1] < 0 || f[2] < 0 || f[0] >= nv || f[1] >= nv || f[2] >= nv)
      throw std::invalid_argument("TriangleMesh: face index out of range");
    const Vec3 e1 = vertices[f[1]] - vertices[f[0]];
    const Vec3 e2 = vertices[f[2]] - vertices[f[0]];
    const Vec3 c = e1.cross(e2);
    const Real n2 = c.norm();
    if (n2 < 1e-16) continue;  // degenerate
    kept.push_back(f);
    face_normals.push_back(c / n2);
    face_areas.push_back(0.5 * n2);
  }
  faces = std::move(kept);
}

Vec3 TriangleMesh::centroid() const {
  Vec3 c = Vec3::Zero();
  for (const auto& v : vertices) c += v;
  return vertices.empty() ? c : Vec3(c / Real(vertices.size()));
}

void TriangleMesh::bounds(Vec3& lo, Vec3& hi) const {
  lo = Vec3::Constant(kInf);
  hi = Vec3::Constant(-kInf);
  for (const auto& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
}

void TriangleMesh::normalize_to_box(Real target_extent) {
  if (vertices.empty()) return;
  Vec3 lo, hi;
  bounds(lo, hi);
  const Vec3 center = 0.5 * (lo + hi);
  const Real longest = (hi - lo).maxCoeff();
  const Real s = longest > 0 ? target_extent / longest : Real(1);
  for (auto& v : vertices) v = s * (v - center);
  finalize();
}

SurfacePoint area_weighted_surface_sample(const TriangleMesh& mesh, Rng& rng) {
  const Real total = mesh.total_area();
  if (!(total > 0)) throw std::invalid_argument("surface sample: mesh has zero area");
  // Linear scan over the CDF; callers needing bulk draws should prefix-sum,
  // but batch sizes here keep this out of any profile.
  Real u = uniform_real(rng, 0, total);
  int face = 0;
  for (int i = 0; i < mesh.face_count(); ++i) {
    u -= mesh.face_areas[i];
    if (u <= 0) {
      face = i;
      break;
    }
    face = i;
  }
  Real a = uniform_real(rng);
  Real b = uniform_real(rng);
  if (a + b > 1) {
    a = 1 - a;
    b = 1 - b;
  }
  const Vec3 q = mesh.face_vertex(face, 0) +
                 a * (mesh.face_vertex(face, 1) - mesh.face_vertex(face, 0)) +
                 b * (mesh.face_vertex(face, 2) - mesh.face_vertex(face, 0));
  return SurfacePoint{q, UnitVec::unchecked(mesh.face_normals[face]), face};
}

TriangleMesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_obj: cannot open " + path);
  TriangleMesh mesh;
  std::string line;
  while (std::getline(in, line)) {
    if (line.size() < 2) continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      Real x, y, z;
      ss >> x >> y >> z;
      if (!ss && !(ss.eof())) throw std::runtime_error("load_obj: bad vertex in " + path);
      mesh.vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ss >> tok) {
        // accept v, v/t, v//n, v/t/n
        const auto slash = tok.find('/');
        const std::string head = slash == std::string::npos ? tok : tok.substr(0, slash);
        int i = std::stoi(head);
        if (i < 0) i = static_cast<int>(mesh.vertices.size()) + i + 1;
        idx.push_back(i - 1);
      }
      if (idx.size() < 3) throw std::runtime_error("load_obj: face with <3 vertices");
      for (size_t k = 2; k < idx.size(); ++k)
        mesh.faces.push_back({idx[0], idx[k - 1], idx[k]});
    }
  }
  mesh.finalize();
  if (mesh.faces.empty()) throw std::runtime_error("load_obj: no faces in " + path);
  return mesh;
}

void save_obj(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_obj: cannot open " + path);
  out.precision(17);
  for (const auto& v : mesh.vertices)
    out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& f : mesh.faces)
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

namespace {

int midpoint_index(std::map<std::pair<int, int>, int>& cache, std::vector<Vec3>& verts,
                   int a, int b) {
  const auto key = std::minmax(a, b);
  const auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const int idx = static_cast<int>(verts.size());
  verts.push_back(0.5 * (verts[a] + verts[b]));
  cache.emplace(key, idx);
  return idx;
}

}  // namespace

TriangleMesh make_icosphere(Real radius, int subdivisions, const Vec3& center) {
  const Real t = (1 + std::sqrt(Real(5))) / 2;
  std::vector<Vec3> verts = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},
      {5, 11, 4}, {11, 10, 2}, {10, 7, 6},  {7, 1, 8},  {3, 9, 4},   {3, 4, 2},
      {3, 2, 6},  {3, 6, 8},  {3, 8, 9},   {4, 9, 5},  {2, 4, 11},  {6, 2, 10},
      {8, 6, 7},  {9, 8, 1}};
  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> cache;
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = midpoint_index(cache, verts, f[0], f[1]);
      const int bc = midpoint_index(cache, verts, f[1], f[2]);
      const int ca = midpoint_index(cache, verts, f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  TriangleMesh mesh;
  mesh.vertices.reserve(verts.size());
  for (const auto& v : verts) mesh.vertices.push_back(center + radius * v.normalized());
  mesh.faces = std::move(faces);
  mesh.finalize();
  return mesh;
}

TriangleMesh make_box_mesh(const Vec3& lo, const Vec3& hi) {
  TriangleMesh mesh;
  mesh.vertices = {{lo.x(), lo.y(), lo.z()}, {hi.x(), lo.y(), lo.z()},
                   {hi.x(), hi.y(), lo.z()}, {lo.x(), hi.y(), lo.z()},
                   {lo.x(), lo.y(), hi.z()}, {hi.x(), lo.y(), hi.z()},
                   {hi.x(), hi.y(), hi.z()}, {lo.x(), hi.y(), hi.z()}};
  mesh.faces = {{0, 2, 1}, {0, 3, 2},   // z = lo (outward -z)
                {4, 5, 6}, {4, 6, 7},   // z = hi
                {0, 1, 5}, {0, 5, 4},   // y = lo
                {3, 6, 2}, {3, 7, 6},   // y = hi
                {0, 4, 7}, {0, 7, 3},   // x = lo
                {1, 2, 6}, {1, 6, 5}};  // x = hi
  mesh.finalize();
  return mesh;
}

TriangleMesh make_blob(Real base_radius, int subdivisions, Real amplitude) {
  TriangleMesh mesh = make_icosphere(1.0, subdivisions);
  for (auto& v : mesh.vertices) {
    const Vec3 u = v.normalized();
    const Real bump = std::sin(3 * u.x()) * std::cos(2 * u.y()) + std::sin(2 * u.z());
    v = base_radius * (1 + amplitude * 0.5 * bump) * u;
  }
  mesh.finalize();
  return mesh;
}

TriangleMesh merge_meshes(const std::vector<TriangleMesh>& parts) {
  TriangleMesh out;
  for (const auto& part : parts) {
    const int base = static_cast<int>(out.vertices.size());
    out.vertices.insert(out.vertices.end(), part.vertices.begin(), part.vertices.end());
    for (const auto& f : part.faces)
      out.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
  }
  out.finalize();
  return out;
}

TriangleMesh translated(TriangleMesh mesh, const Vec3& offset) {
  for (auto& v : mesh.vertices) v += offset;
  mesh.finalize();
  return mesh;
}

}  // namespace ddf
