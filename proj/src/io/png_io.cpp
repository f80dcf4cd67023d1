#include "io/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include "core/error.hpp"

namespace s2s::io {

namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

uint16_t quant16(float v) {
  float c = std::clamp(v, 0.f, 1.f);
  return uint16_t(std::lround(c * 65535.f));
}

uint8_t quant8(float v) {
  float c = std::clamp(v, 0.f, 1.f);
  return uint8_t(std::lround(c * 255.f));
}

void write_png_impl(const std::string& path, const ImageF& img, int bit_depth) {
  if (img.empty()) throw_invalid("write_png: empty image");
  if (bit_depth == 16 && img.channels != 1)
    throw_invalid("write_png: 16-bit output is grayscale only");
  if (img.channels != 1 && img.channels != 3)
    throw_invalid("write_png: expected 1 or 3 channels");

  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw_io("cannot open for writing: " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw_io("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw_io("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw_io("png write failed: " + path);
  }
  png_init_io(png, fp.get());

  const int color = img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
  png_set_IHDR(png, info, png_uint_32(img.width), png_uint_32(img.height), bit_depth, color,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  const size_t row_bytes = size_t(img.width) * img.channels * (bit_depth / 8);
  std::vector<uint8_t> row(row_bytes);
  for (int y = 0; y < img.height; ++y) {
    if (bit_depth == 8) {
      for (int x = 0; x < img.width; ++x)
        for (int c = 0; c < img.channels; ++c)
          row[size_t(x) * img.channels + c] = quant8(img.at(x, y, c));
    } else {
      for (int x = 0; x < img.width; ++x) {
        uint16_t v = quant16(img.at(x, y));
        row[size_t(x) * 2] = uint8_t(v >> 8);  // PNG is big-endian
        row[size_t(x) * 2 + 1] = uint8_t(v & 0xff);
      }
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

void write_png8(const std::string& path, const ImageF& img) { write_png_impl(path, img, 8); }

void write_png16(const std::string& path, const ImageF& img) { write_png_impl(path, img, 16); }

ImageF read_png(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw_io("cannot open: " + path);

  uint8_t sig[8];
  if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8))
    throw_parse("not a png file: " + path);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw_io("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw_io("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw_parse("png decode failed: " + path);
  }
  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  png_uint_32 w = png_get_image_width(png, info);
  png_uint_32 h = png_get_image_height(png, info);
  int bit_depth = png_get_bit_depth(png, info);
  int color = png_get_color_type(png, info);

  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS))
    png_set_strip_alpha(png);

  const bool keep16 = bit_depth == 16 && (color == PNG_COLOR_TYPE_GRAY);
  if (bit_depth == 16 && !keep16) png_set_strip_16(png);

  png_read_update_info(png, info);
  int channels = png_get_channels(png, info);
  bit_depth = png_get_bit_depth(png, info);
  if (channels != 1 && channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw_parse("unsupported png channel count (" + std::to_string(channels) + "): " + path);
  }

  ImageF out(int(w), int(h), channels);
  std::vector<uint8_t> row(size_t(w) * channels * (bit_depth / 8));
  for (png_uint_32 y = 0; y < h; ++y) {
    png_read_row(png, row.data(), nullptr);
    if (bit_depth == 8) {
      for (png_uint_32 x = 0; x < w; ++x)
        for (int c = 0; c < channels; ++c)
          out.at(int(x), int(y), c) = float(row[size_t(x) * channels + c]) / 255.f;
    } else {
      for (png_uint_32 x = 0; x < w; ++x) {
        uint16_t v = uint16_t((row[size_t(x) * 2] << 8) | row[size_t(x) * 2 + 1]);
        out.at(int(x), int(y)) = float(v) / 65535.f;
      }
    }
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

bool read_png_size(const std::string& path, int& width, int& height) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) return false;
  uint8_t sig[8];
  if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8)) return false;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  width = int(png_get_image_width(png, info));
  height = int(png_get_image_height(png, info));
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

}  // namespace s2s::io
