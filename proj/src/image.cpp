#include "skinseg/image.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace skinseg {

namespace {

constexpr std::int64_t kMaxDimension = 1 << 20;

std::string dim_str(int w, int h) {
  return std::to_string(w) + "x" + std::to_string(h);
}

// Token scanner for netpbm headers: whitespace-separated tokens, with
// '#' comments running to end of line.
struct HeaderScanner {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  void skip_space_and_comments() {
    while (pos < bytes.size()) {
      const char c = static_cast<char>(bytes[pos]);
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  std::string token(const char* format) {
    skip_space_and_comments();
    std::string t;
    while (pos < bytes.size() &&
           !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
           bytes[pos] != '#') {
      t.push_back(static_cast<char>(bytes[pos]));
      ++pos;
    }
    if (t.empty()) {
      throw std::runtime_error(std::string(format) +
                               ": malformed header: unexpected end of header");
    }
    return t;
  }

  std::int64_t number(const char* format, const char* what) {
    const std::string t = token(format);
    std::int64_t value = 0;
    for (const char c : t) {
      if (c < '0' || c > '9') {
        throw std::runtime_error(std::string(format) + ": malformed header: bad " +
                                 what + " '" + t + "'");
      }
      value = value * 10 + (c - '0');
      if (value > kMaxDimension * kMaxDimension) break;
    }
    return value;
  }

  // The header ends with exactly one whitespace byte before the payload.
  void finish_header(const char* format) {
    if (pos >= bytes.size() ||
        !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      throw std::runtime_error(std::string(format) +
                               ": malformed header: missing whitespace before pixel data");
    }
    ++pos;
  }
};

std::span<const std::uint8_t> decode_netpbm(std::span<const std::uint8_t> bytes,
                                            const char* format,
                                            const char* magic,
                                            int bytes_per_pixel, int& width,
                                            int& height) {
  HeaderScanner scan{bytes};
  const std::string m = scan.token(format);
  if (m != magic) {
    throw std::runtime_error(std::string(format) + ": bad magic '" + m +
                             "', expected '" + magic + "'");
  }
  const std::int64_t w = scan.number(format, "width");
  const std::int64_t h = scan.number(format, "height");
  if (w < 1 || h < 1 || w > kMaxDimension || h > kMaxDimension) {
    throw std::runtime_error(std::string(format) + ": malformed header: dimensions " +
                             std::to_string(w) + "x" + std::to_string(h));
  }
  const std::int64_t maxval = scan.number(format, "maxval");
  if (maxval != 255) {
    throw std::runtime_error(std::string(format) + ": unsupported maxval " +
                             std::to_string(maxval) + " (only 255 is accepted)");
  }
  scan.finish_header(format);

  const std::int64_t need = w * h * bytes_per_pixel;
  const std::int64_t have = static_cast<std::int64_t>(bytes.size() - scan.pos);
  if (have < need) {
    throw std::runtime_error(std::string(format) + ": truncated pixel data: expected " +
                             std::to_string(need) + " bytes, found " +
                             std::to_string(have));
  }
  width = static_cast<int>(w);
  height = static_cast<int>(h);
  return bytes.subspan(scan.pos, static_cast<std::size_t>(need));
}

void append_header(std::vector<std::uint8_t>& out, const char* magic, int w,
                   int h) {
  const std::string header = std::string(magic) + "\n" + std::to_string(w) +
                             " " + std::to_string(h) + "\n255\n";
  out.insert(out.end(), header.begin(), header.end());
}

}  // namespace

Image::Image(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1) {
    throw std::invalid_argument("image: dimensions must be positive, got " +
                                dim_str(w, h));
  }
  pixels.resize(static_cast<std::size_t>(pixel_count()));
}

Image::Image(int w, int h, std::vector<Rgb> px) : width(w), height(h) {
  if (w < 1 || h < 1) {
    throw std::invalid_argument("image: dimensions must be positive, got " +
                                dim_str(w, h));
  }
  if (px.size() != static_cast<std::size_t>(pixel_count())) {
    throw std::invalid_argument(
        "image: pixel count " + std::to_string(px.size()) + " does not match " +
        dim_str(w, h));
  }
  pixels = std::move(px);
}

Region::Region(const Image& img, int x, int y, int width, int height)
    : image(&img), x0(x), y0(y), w(width), h(height) {
  if (w < 1 || h < 1) {
    throw std::invalid_argument("region: extent must be positive, got " +
                                dim_str(w, h));
  }
  if (x0 < 0 || y0 < 0 || x0 + w > img.width || y0 + h > img.height) {
    throw std::invalid_argument("region: (" + std::to_string(x0) + "," +
                                std::to_string(y0) + ") " + dim_str(w, h) +
                                " lies outside image " +
                                dim_str(img.width, img.height));
  }
}

WindowGrid tile(const Image& image, int window_w, int window_h) {
  if (window_w < 1 || window_h < 1) {
    throw std::invalid_argument("tile: window must be at least 1x1, got " +
                                dim_str(window_w, window_h));
  }
  if (window_w > image.width || window_h > image.height) {
    throw std::invalid_argument("tile: window " + dim_str(window_w, window_h) +
                                " larger than image " +
                                dim_str(image.width, image.height));
  }

  WindowGrid grid;
  grid.window_w = window_w;
  grid.window_h = window_h;
  grid.columns = (image.width + window_w - 1) / window_w;
  grid.rows = (image.height + window_h - 1) / window_h;
  grid.image_width = image.width;
  grid.image_height = image.height;
  grid.regions.reserve(static_cast<std::size_t>(grid.columns) * grid.rows);
  for (int row = 0; row < grid.rows; ++row) {
    const int y0 = row * window_h;
    const int h = std::min(window_h, image.height - y0);
    for (int col = 0; col < grid.columns; ++col) {
      const int x0 = col * window_w;
      const int w = std::min(window_w, image.width - x0);
      grid.regions.emplace_back(image, x0, y0, w, h);
    }
  }
  return grid;
}

GrayImage::GrayImage(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1) {
    throw std::invalid_argument("image: dimensions must be positive, got " +
                                dim_str(w, h));
  }
  pixels.resize(static_cast<std::size_t>(w) * h);
}

GrayImage::GrayImage(int w, int h, std::vector<std::uint8_t> px)
    : width(w), height(h) {
  if (w < 1 || h < 1) {
    throw std::invalid_argument("image: dimensions must be positive, got " +
                                dim_str(w, h));
  }
  if (px.size() != static_cast<std::size_t>(w) * h) {
    throw std::invalid_argument(
        "image: pixel count " + std::to_string(px.size()) + " does not match " +
        dim_str(w, h));
  }
  pixels = std::move(px);
}

Image decode_ppm(std::span<const std::uint8_t> bytes) {
  int w = 0;
  int h = 0;
  const auto payload = decode_netpbm(bytes, "ppm", "P6", 3, w, h);
  std::vector<Rgb> px(static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = Rgb{payload[3 * i], payload[3 * i + 1], payload[3 * i + 2]};
  }
  return Image(w, h, std::move(px));
}

std::vector<std::uint8_t> encode_ppm(const Image& image) {
  std::vector<std::uint8_t> out;
  out.reserve(32 + static_cast<std::size_t>(image.pixel_count()) * 3);
  append_header(out, "P6", image.width, image.height);
  for (const Rgb& p : image.pixels) {
    out.push_back(p.r);
    out.push_back(p.g);
    out.push_back(p.b);
  }
  return out;
}

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  int w = 0;
  int h = 0;
  const auto payload = decode_netpbm(bytes, "pgm", "P5", 1, w, h);
  return GrayImage(w, h, std::vector<std::uint8_t>(payload.begin(), payload.end()));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
  std::vector<std::uint8_t> out;
  out.reserve(32 + image.pixels.size());
  append_header(out, "P5", image.width, image.height);
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

std::vector<std::uint8_t> encode_pgm(const DetectionMask& mask) {
  if (mask.num_classes > 255) {
    throw std::invalid_argument("pgm: cannot encode " +
                                std::to_string(mask.num_classes) +
                                " classes (limit 255)");
  }
  if (mask.labels.size() !=
      static_cast<std::size_t>(mask.width) * mask.height) {
    throw std::invalid_argument("pgm: mask label count does not match " +
                                dim_str(mask.width, mask.height));
  }
  std::vector<std::uint8_t> out;
  out.reserve(32 + mask.labels.size());
  append_header(out, "P5", mask.width, mask.height);
  for (const std::int16_t label : mask.labels) {
    if (label < 0) {
      out.push_back(0);
    } else if (label >= mask.num_classes) {
      throw std::invalid_argument("pgm: mask label " + std::to_string(label) +
                                  " out of range for " +
                                  std::to_string(mask.num_classes) + " classes");
    } else {
      out.push_back(static_cast<std::uint8_t>(255 * (label + 1) /
                                              mask.num_classes));
    }
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw std::runtime_error("i/o error reading file: " + path);
  }
  return bytes;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot create file: " + path);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) {
    throw std::runtime_error("i/o error writing file: " + path);
  }
}

}  // namespace skinseg
