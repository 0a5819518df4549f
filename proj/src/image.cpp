// Copyright Contributors to the ddf project
// SPDX-License-Identifier: Apache-2.0
#include "ddf/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace ddf {

void write_pfm(const Image& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pfm: cannot open " + path);
  out << (image.channels == 3 ? "PF" : "Pf") << '\n'
      << image.width << ' ' << image.height << '\n'
      << "-1.0\n";  // negative scale marks little-endian
  for (int y = image.height - 1; y >= 0; --y) {
    const float* row = &image.data[static_cast<size_t>(y) * image.width * image.channels];
    out.write(reinterpret_cast<const char*>(row),
              static_cast<std::streamsize>(sizeof(float)) * image.width * image.channels);
  }
}

Image read_pfm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_pfm: cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "PF" && magic != "Pf") throw std::runtime_error("read_pfm: bad magic");
  Image image;
  image.channels = magic == "PF" ? 3 : 1;
  double scale;
  in >> image.width >> image.height >> scale;
  if (!in || image.width <= 0 || image.height <= 0)
    throw std::runtime_error("read_pfm: bad header");
  if (scale >= 0) throw std::runtime_error("read_pfm: big-endian data unsupported");
  in.get();  // single whitespace after the scale
  image.data.resize(static_cast<size_t>(image.width) * image.height * image.channels);
  for (int y = image.height - 1; y >= 0; --y) {
    float* row = &image.data[static_cast<size_t>(y) * image.width * image.channels];
    in.read(reinterpret_cast<char*>(row),
            static_cast<std::streamsize>(sizeof(float)) * image.width * image.channels);
  }
  if (!in) throw std::runtime_error("read_pfm: truncated data");
  return image;
}

void write_ppm(const Image& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_ppm: cannot open " + path);
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  std::vector<unsigned char> row(static_cast<size_t>(image.width) * 3);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      for (int c = 0; c < 3; ++c) {
        const float v = image.at(x, y, image.channels == 3 ? c : 0);
        // non-visible sentinels (inf depth) preview as white
        const float clamped = std::isfinite(v) ? std::clamp(v, 0.f, 1.f) : 1.f;
        row[x * 3 + c] = static_cast<unsigned char>(std::lround(clamped * 255));
      }
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
}

namespace {

std::vector<float> gaussian_kernel(Real sigma) {
  if (sigma <= 0) return {1.f};
  const int radius = static_cast<int>(std::ceil(3 * sigma));
  std::vector<float> k(2 * radius + 1);
  float sum = 0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = static_cast<float>(std::exp(-0.5 * i * i / (sigma * sigma)));
    sum += k[i + radius];
  }
  for (auto& v : k) v /= sum;
  return k;
}

Image blur_axis(const Image& src, const std::vector<float>& kernel, bool horizontal) {
  if (kernel.size() == 1) return src;
  const int radius = static_cast<int>(kernel.size() / 2);
  Image dst(src.width, src.height, src.channels);
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      for (int c = 0; c < src.channels; ++c) {
        float acc = 0;
        for (int i = -radius; i <= radius; ++i) {
          // clamp-to-edge keeps constants constant
          const int xs = horizontal ? std::clamp(x + i, 0, src.width - 1) : x;
          const int ys = horizontal ? y : std::clamp(y + i, 0, src.height - 1);
          acc += kernel[i + radius] * src.at(xs, ys, c);
        }
        dst.at(x, y, c) = acc;
      }
    }
  }
  return dst;
}

}  // namespace

Image postprocess(const Image& hdr, Real blur_sigma, Real gamma) {
  const auto kernel = gaussian_kernel(blur_sigma);
  Image out = blur_axis(blur_axis(hdr, kernel, true), kernel, false);

  float lo = std::numeric_limits<float>::infinity();
  float hi = -std::numeric_limits<float>::infinity();
  for (float v : out.data) {
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const float range = hi - lo;
  const float inv_gamma = static_cast<float>(1 / gamma);
  for (auto& v : out.data) {
    if (!std::isfinite(v) || range <= 0) {
      v = 0;
      continue;
    }
    v = std::pow((v - lo) / range, inv_gamma);
  }
  return out;
}

}  // namespace ddf
