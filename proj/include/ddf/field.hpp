// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <vector>

#include "ddf/induced.hpp"
#include "ddf/types.hpp"

namespace ddf {

struct DeltaComponent {
  Real depth = kInf;
  Real weight = 1;
};

/// Field output record: visibility xi in [0,1] plus a K-component mixture of
/// depth deltas. Weights sum to 1; non-visible components carry the +inf
/// depth sentinel.
struct FieldSample {
  Real xi = 0;
  std::vector<DeltaComponent> components;

  int k() const { return static_cast<int>(components.size()); }
  bool visible() const { return xi > 0.5; }
};

struct DepthArgmax {
  Real depth = kInf;
  int index = 0;
};

/// Output depth of a mixture: the max-weight component, ties broken toward
/// the smaller index.
inline DepthArgmax depth_argmax(const FieldSample& sample) {
  DepthArgmax out;
  Real best = -1;
  for (int i = 0; i < sample.k(); ++i) {
    if (sample.components[i].weight > best) {
      best = sample.components[i].weight;
      out.index = i;
      out.depth = sample.components[i].depth;
    }
  }
  return out;
}

/// Abstract (xi, d) query interface. Implementations are deterministic and
/// pure, hence safe for unrestricted concurrent reads.
class FieldOracle {
 public:
  virtual ~FieldOracle() = default;
  virtual FieldSample sample(const OrientedPoint& tau) const = 0;
};

/// Exact shape-backed field exposed as a K=1 mixture (w1 = 1).
class InducedFieldAdapter : public FieldOracle {
 public:
  explicit InducedFieldAdapter(const InducedField& field) : field_(&field) {}

  FieldSample sample(const OrientedPoint& tau) const override {
    const InducedSample s = field_->query(tau);
    FieldSample out;
    out.xi = s.visible ? 1 : 0;
    out.components = {{s.depth, 1}};
    return out;
  }

  const InducedField& induced() const { return *field_; }

 private:
  const InducedField* field_;
};

/// Hand-constructed K=2 delta mixture: two closed-form depth sub-fields and a
/// weight sub-field w1 (w2 = 1 - w1). Used to exercise discontinuity
/// handling without a learned field.
class DeltaMixtureField : public FieldOracle {
 public:
  using ScalarField = std::function<Real(const OrientedPoint&)>;

  DeltaMixtureField(ScalarField xi, ScalarField d1, ScalarField d2, ScalarField w1)
      : xi_(std::move(xi)), d1_(std::move(d1)), d2_(std::move(d2)), w1_(std::move(w1)) {}

  FieldSample sample(const OrientedPoint& tau) const override {
    FieldSample out;
    out.xi = xi_(tau);
    const Real w = std::clamp(w1_(tau), Real(0), Real(1));
    out.components = {{d1_(tau), w}, {d2_(tau), 1 - w}};
    return out;
  }

 private:
  ScalarField xi_, d1_, d2_, w1_;
};

/// Forwarding wrapper that counts queries (render instrumentation).
class CountingField : public FieldOracle {
 public:
  explicit CountingField(const FieldOracle& inner) : inner_(&inner) {}

  FieldSample sample(const OrientedPoint& tau) const override {
    count_.fetch_add(1, std::memory_order_relaxed);
    return inner_->sample(tau);
  }

  std::uint64_t count() const { return count_.load(std::memory_order_relaxed); }
  void reset() { count_.store(0, std::memory_order_relaxed); }

 private:
  const FieldOracle* inner_;
  mutable std::atomic<std::uint64_t> count_{0};
};

/// Arbitrary closed-form K=1 field; handy for corrupted-field fixtures.
class LambdaField : public FieldOracle {
 public:
  using Fn = std::function<FieldSample(const OrientedPoint&)>;
  explicit LambdaField(Fn fn) : fn_(std::move(fn)) {}
  FieldSample sample(const OrientedPoint& tau) const override { return fn_(tau); }

 private:
  Fn fn_;
};

}  // namespace ddf
