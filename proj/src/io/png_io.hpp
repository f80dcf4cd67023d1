#pragma once

#include <string>

#include "core/image.hpp"

namespace s2s::io {

// 8-bit PNG, 1 (gray) or 3 (RGB) channels; values clamped to [0,1].
void write_png8(const std::string& path, const ImageF& img);

// 16-bit grayscale PNG; values clamped to [0,1] and scaled by 65535.
void write_png16(const std::string& path, const ImageF& img);

// Reads gray8 / gray16 / rgb8 (palette and alpha variants are converted);
// returns floats in [0,1]. 16-bit stays at 1/65535 resolution.
ImageF read_png(const std::string& path);

// Width/height without decoding the pixel data.
bool read_png_size(const std::string& path, int& width, int& height);

}  // namespace s2s::io
