#pragma once

#include <vector>

namespace s2s {

// Row-major interleaved float image, values nominally in [0,1].
struct ImageF {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> data;

  ImageF() = default;
  ImageF(int w, int h, int c, float fill = 0.f)
      : width(w), height(h), channels(c), data(size_t(w) * h * c, fill) {}

  float& at(int x, int y, int c = 0) {
    return data[(size_t(y) * width + x) * channels + c];
  }
  float at(int x, int y, int c = 0) const {
    return data[(size_t(y) * width + x) * channels + c];
  }
  size_t pixel_count() const { return size_t(width) * height; }
  bool empty() const { return data.empty(); }
  bool same_shape(const ImageF& o) const {
    return width == o.width && height == o.height && channels == o.channels;
  }
};

// Per-pixel luminance (Rec. 601 weights); grayscale input passes through.
ImageF luminance(const ImageF& img);

ImageF flip_horizontal(const ImageF& img);

// Bilinear resampling to (w, h), channel count preserved.
ImageF resize_bilinear(const ImageF& img, int w, int h);

// Aspect-preserving resize so max(w,h) == size, then pad to size x size
// with `fill` (centered).
ImageF fit_to_square(const ImageF& img, int size, float fill);

}  // namespace s2s
