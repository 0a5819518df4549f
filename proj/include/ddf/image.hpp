// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "ddf/types.hpp"

namespace ddf {

/// Row-major float image, top row first; 1 (grayscale) or 3 (RGB) channels.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<float> data;

  Image() = default;
  Image(int w, int h, int c) : width(w), height(h), channels(c),
                               data(static_cast<size_t>(w) * h * c, 0.f) {}

  float& at(int x, int y, int c = 0) {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  float at(int x, int y, int c = 0) const {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
};

/// PFM, little-endian (scale header -1.0): "Pf" grayscale or "PF" color,
/// rows bottom-to-top. Round-trips float32 exactly, including inf.
void write_pfm(const Image& image, const std::string& path);
Image read_pfm(const std::string& path);

/// 8-bit binary PPM; input values are clamped to [0,1], non-finite pixels
/// write white.
void write_ppm(const Image& image, const std::string& path);

/// Display pipeline: separable Gaussian blur (sigma = 0 is the identity),
/// joint min-max normalization to [0,1] (degenerate range maps to 0), then
/// gamma 1/gamma.
Image postprocess(const Image& hdr, Real blur_sigma, Real gamma);

}  // namespace ddf
