#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace skinseg {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

/// 8-bit RGB raster, pixels stored row-major: pixel(x, y) = pixels[y * width + x].
struct Image {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;

  Image() = default;
  Image(int w, int h);
  Image(int w, int h, std::vector<Rgb> px);  // throws if px.size() != w * h

  const Rgb& at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  Rgb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }

  std::int64_t pixel_count() const {
    return static_cast<std::int64_t>(width) * height;
  }

  bool operator==(const Image&) const = default;
};

/// Rectangular view into an Image. Valid only while the parent image is alive.
struct Region {
  const Image* image = nullptr;
  int x0 = 0;
  int y0 = 0;
  int w = 0;
  int h = 0;

  Region(const Image& img, int x, int y, int width, int height);

  // Region-local coordinates.
  const Rgb& at(int rx, int ry) const { return image->at(x0 + rx, y0 + ry); }

  std::int64_t pixel_count() const {
    return static_cast<std::int64_t>(w) * h;
  }
};

/// Non-overlapping partition of an image into windows, row-major.
/// Interior windows are exactly window_w x window_h; the last column/row
/// keeps its remainder size.
struct WindowGrid {
  int window_w = 0;
  int window_h = 0;
  int columns = 0;
  int rows = 0;
  int image_width = 0;
  int image_height = 0;
  std::vector<Region> regions;
};

WindowGrid tile(const Image& image, int window_w, int window_h);

/// 8-bit grayscale raster, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h);
  GrayImage(int w, int h, std::vector<std::uint8_t> px);

  bool operator==(const GrayImage&) const = default;
};

/// Per-pixel class labels produced by detection, row-major, constant within
/// each window. -1 means no class.
struct DetectionMask {
  int width = 0;
  int height = 0;
  int num_classes = 0;
  std::vector<std::int16_t> labels;
};

inline constexpr std::int16_t kNoLabel = -1;

// Binary PPM (P6, maxval 255). Header comments (# to end of line) accepted.
Image decode_ppm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_ppm(const Image& image);

// Binary PGM (P5, maxval 255).
GrayImage decode_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const GrayImage& image);

// Mask encoding: no label -> 0, class k (0-based) -> floor(255 * (k+1) / K)
// for K classes. Throws if the mask has more than 255 classes.
std::vector<std::uint8_t> encode_pgm(const DetectionMask& mask);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace skinseg
