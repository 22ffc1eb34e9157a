#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace swipekit {

// 8-bit interleaved RGB raster.
struct ImageRgb {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // size = width * height * 3

  bool empty() const { return width <= 0 || height <= 0; }
  std::uint8_t* at(int x, int y) { return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
  const std::uint8_t* at(int x, int y) const {
    return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }

  static ImageRgb solid(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b);
};

// Grayscale raster with intensities in [0, 1].
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<float> intensity;  // row-major, size = width * height

  bool empty() const { return width <= 0 || height <= 0; }
  float at(int x, int y) const { return intensity[static_cast<std::size_t>(y) * width + x]; }
};

// BT.601 luma, pinned: (0.299 R + 0.587 G + 0.114 B) / 255.
// Throws Errc::invalid_image on an empty input.
GrayImage to_gray(const ImageRgb& img);

// PNG codec. decode accepts 8/16-bit gray, palette, RGB and RGBA input and
// always yields 8-bit RGB (alpha dropped). encode emits 8-bit RGB with fixed
// settings so identical rasters produce identical bytes.
ImageRgb decode_png(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_png(const ImageRgb& img);

ImageRgb read_png_file(const std::string& path);
void write_png_file(const std::string& path, const ImageRgb& img);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace swipekit
