#include "core/image.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace s2s {

ImageF luminance(const ImageF& img) {
  if (img.channels == 1) return img;
  if (img.channels != 3 && img.channels != 4)
    throw_invalid("luminance: expected 1, 3 or 4 channels, got " + std::to_string(img.channels));
  ImageF out(img.width, img.height, 1);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      out.at(x, y) = 0.299f * img.at(x, y, 0) + 0.587f * img.at(x, y, 1) + 0.114f * img.at(x, y, 2);
  return out;
}

ImageF flip_horizontal(const ImageF& img) {
  ImageF out(img.width, img.height, img.channels);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < img.channels; ++c)
        out.at(x, y, c) = img.at(img.width - 1 - x, y, c);
  return out;
}

ImageF resize_bilinear(const ImageF& img, int w, int h) {
  if (w <= 0 || h <= 0) throw_invalid("resize_bilinear: non-positive target size");
  if (w == img.width && h == img.height) return img;
  ImageF out(w, h, img.channels);
  const float sx = float(img.width) / float(w);
  const float sy = float(img.height) / float(h);
  for (int y = 0; y < h; ++y) {
    float fy = (y + 0.5f) * sy - 0.5f;
    int y0 = std::clamp(int(std::floor(fy)), 0, img.height - 1);
    int y1 = std::min(y0 + 1, img.height - 1);
    float wy = std::clamp(fy - float(y0), 0.f, 1.f);
    for (int x = 0; x < w; ++x) {
      float fx = (x + 0.5f) * sx - 0.5f;
      int x0 = std::clamp(int(std::floor(fx)), 0, img.width - 1);
      int x1 = std::min(x0 + 1, img.width - 1);
      float wx = std::clamp(fx - float(x0), 0.f, 1.f);
      for (int c = 0; c < img.channels; ++c) {
        float top = img.at(x0, y0, c) * (1.f - wx) + img.at(x1, y0, c) * wx;
        float bot = img.at(x0, y1, c) * (1.f - wx) + img.at(x1, y1, c) * wx;
        out.at(x, y, c) = top * (1.f - wy) + bot * wy;
      }
    }
  }
  return out;
}

ImageF fit_to_square(const ImageF& img, int size, float fill) {
  if (size <= 0) throw_invalid("fit_to_square: non-positive size");
  if (img.empty()) throw_invalid("fit_to_square: empty image");
  int w = img.width, h = img.height;
  ImageF scaled = img;
  if (std::max(w, h) != size) {
    float s = float(size) / float(std::max(w, h));
    int nw = std::max(1, int(std::lround(w * s)));
    int nh = std::max(1, int(std::lround(h * s)));
    scaled = resize_bilinear(img, nw, nh);
  }
  ImageF out(size, size, img.channels, fill);
  int ox = (size - scaled.width) / 2;
  int oy = (size - scaled.height) / 2;
  for (int y = 0; y < scaled.height; ++y)
    for (int x = 0; x < scaled.width; ++x)
      for (int c = 0; c < img.channels; ++c)
        out.at(x + ox, y + oy, c) = scaled.at(x, y, c);
  return out;
}

}  // namespace s2s
