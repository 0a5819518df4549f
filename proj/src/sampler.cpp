// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/sampler.hpp"

#include <cstring>
#include <fstream>

namespace ddf {

const char* sample_type_name(SampleType t) {
  switch (t) {
    case SampleType::U: return "U";
    case SampleType::A: return "A";
    case SampleType::B: return "B";
    case SampleType::S: return "S";
    case SampleType::T: return "T";
    case SampleType::O: return "O";
  }
  return "?";
}

namespace {

/// Uniform over the box boundary dB, faces weighted by area. Returns the
/// point and the inward unit normal of its face.
void sample_boundary(Rng& rng, const Domain& dom, Vec3& p, Vec3& inward) {
  const Vec3 e = dom.extent();
  const Real areas[3] = {e.y() * e.z(), e.z() * e.x(), e.x() * e.y()};
  const Real total = 2 * (areas[0] + areas[1] + areas[2]);
  Real u = uniform_real(rng, 0, total);
  for (int axis = 0; axis < 3; ++axis) {
    for (int side = 0; side < 2; ++side) {
      u -= areas[axis];
      if (u > 0) continue;
      p = uniform_in_domain(rng, dom);
      p[axis] = side ? dom.max_corner()[axis] : dom.min_corner()[axis];
      inward = Vec3::Zero();
      inward[axis] = side ? -1 : 1;
      return;
    }
  }
  p = dom.max_corner();
  inward = Vec3(-1, 0, 0);
}

LabeledSample label(const InducedField& shape, const OrientedPoint& tau, SampleType stype) {
  const InducedSample s = shape.query(tau);
  LabeledSample out;
  out.tau = tau;
  out.stype = stype;
  out.xi_gt = s.visible ? 1 : 0;
  out.d_gt = s.depth;
  if (s.visible && s.normal && !s.grazing) out.n_gt = s.normal;
  return out;
}

/// Shared A/T/O construction: surface anchor q0, outgoing direction v0,
/// position on the segment to the domain boundary, query direction -v0.
/// 10% of positions are snapped to the boundary endpoint itself.
OrientedPoint at_surface_tau(const InducedField& shape, const Domain& dom,
                             const SamplerConfig& cfg, Rng& rng, bool tangent,
                             SurfacePoint* anchor_out) {
  const SurfacePoint anchor = shape.surface_sample(rng);
  UnitVec v0 = uniform_sphere(rng);
  if (tangent) {
    Vec3 t1, t2;
    orthonormal_basis(anchor.n.vec(), t1, t2);
    const Real phi = uniform_real(rng, 0, 2 * kPi);
    v0 = UnitVec::unchecked(std::cos(phi) * t1 + std::sin(phi) * t2);
  }
  const Real s_exit = dom.exit_distance(anchor.q, v0);
  const Real along = uniform_real(rng) < cfg.boundary_bias
                         ? s_exit
                         : uniform_real(rng, 0, s_exit);
  if (anchor_out) *anchor_out = anchor;
  return {anchor.q + along * v0.vec(), -v0};
}

}  // namespace

LabeledSample sample(SampleType stype, const InducedField& shape, const Domain& dom,
                     const SamplerConfig& cfg, Rng& rng) {
  switch (stype) {
    case SampleType::U:
      return label(shape, {uniform_in_domain(rng, dom), uniform_sphere(rng)}, stype);
    case SampleType::B: {
      Vec3 p, inward;
      sample_boundary(rng, dom, p, inward);
      UnitVec v = uniform_sphere(rng);
      if (v.dot(inward) < 0) v = UnitVec::unchecked(v.vec() - 2 * v.dot(inward) * inward);
      return label(shape, {p, v}, stype);
    }
    case SampleType::S: {
      const SurfacePoint anchor = shape.surface_sample(rng);
      return label(shape, {anchor.q, uniform_sphere(rng)}, stype);
    }
    case SampleType::A:
      return label(shape, at_surface_tau(shape, dom, cfg, rng, false, nullptr), stype);
    case SampleType::T:
      return label(shape, at_surface_tau(shape, dom, cfg, rng, true, nullptr), stype);
    case SampleType::O: {
      SurfacePoint anchor;
      OrientedPoint tau = at_surface_tau(shape, dom, cfg, rng, true, &anchor);
      const Real sign = uniform_real(rng) < 0.5 ? -1 : 1;
      tau.p += sign * cfg.epsilon_O * anchor.n.vec();
      return label(shape, tau, stype);
    }
  }
  throw std::invalid_argument("sample: unknown sample type");
}

std::vector<LabeledSample> sample_batch(const BatchCounts& counts, const InducedField& shape,
                                        const Domain& dom, const SamplerConfig& cfg) {
  const std::pair<SampleType, int> plan[6] = {
      {SampleType::U, counts.u}, {SampleType::A, counts.a}, {SampleType::B, counts.b},
      {SampleType::S, counts.s}, {SampleType::T, counts.t}, {SampleType::O, counts.o}};
  std::vector<LabeledSample> out;
  out.reserve(counts.total());
  std::uint64_t index = 0;
  for (const auto& [stype, n] : plan) {
    for (int i = 0; i < n; ++i, ++index) {
      Rng stream = split_stream(cfg.seed, index);
      out.push_back(sample(stype, shape, dom, cfg, stream));
    }
  }
  return out;
}

namespace {

template <typename T>
void put(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

}  // namespace

void write_samples_binary(const std::string& path, const std::vector<LabeledSample>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_samples_binary: cannot open " + path);
  for (const auto& s : samples) {
    for (int a = 0; a < 3; ++a) put(out, s.tau.p[a]);
    for (int a = 0; a < 3; ++a) put(out, s.tau.v.vec()[a]);
    put(out, s.xi_gt);
    put(out, s.d_gt);
    const Vec3 n = s.n_gt ? s.n_gt->vec() : Vec3::Zero();
    for (int a = 0; a < 3; ++a) put(out, n[a]);
    put(out, static_cast<std::uint8_t>(s.stype));
  }
}

std::vector<LabeledSample> read_samples_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_samples_binary: cannot open " + path);
  std::vector<LabeledSample> out;
  while (true) {
    Vec3 p;
    p[0] = get<Real>(in);
    if (!in) break;
    p[1] = get<Real>(in);
    p[2] = get<Real>(in);
    Vec3 v;
    for (int a = 0; a < 3; ++a) v[a] = get<Real>(in);
    LabeledSample s;
    s.tau = {p, UnitVec::unchecked(v)};
    s.xi_gt = get<std::uint8_t>(in);
    s.d_gt = get<Real>(in);
    Vec3 n;
    for (int a = 0; a < 3; ++a) n[a] = get<Real>(in);
    if (n.norm() > 0.5) s.n_gt = UnitVec::unchecked(n);
    s.stype = static_cast<SampleType>(get<std::uint8_t>(in));
    if (!in) throw std::runtime_error("read_samples_binary: truncated record");
    out.push_back(s);
  }
  return out;
}

void write_samples_csv(const std::string& path, const std::vector<LabeledSample>& samples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_samples_csv: cannot open " + path);
  out.precision(17);
  out << "px,py,pz,vx,vy,vz,xi,d,nx,ny,nz,type\n";
  for (const auto& s : samples) {
    const Vec3 n = s.n_gt ? s.n_gt->vec() : Vec3::Zero();
    out << s.tau.p.x() << ',' << s.tau.p.y() << ',' << s.tau.p.z() << ','
        << s.tau.v.x() << ',' << s.tau.v.y() << ',' << s.tau.v.z() << ','
        << int(s.xi_gt) << ',' << s.d_gt << ',' << n.x() << ',' << n.y() << ','
        << n.z() << ',' << sample_type_name(s.stype) << '\n';
  }
}

}  // namespace ddf
