#pragma once

// Shared helpers for the test binaries: deterministic data generators and
// independently coded oracles the library implementations are checked against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "skinseg/image.hpp"
#include "skinseg/synth.hpp"

namespace test_support {

// --- deterministic random data ------------------------------------------

inline int rand_int(skinseg::SplitMix64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.next() %
                               static_cast<std::uint64_t>(hi - lo + 1));
}

inline double rand_unit(skinseg::SplitMix64& rng) {
  return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline skinseg::Image uniform_image(int w, int h, skinseg::Rgb color) {
  skinseg::Image image(w, h);
  std::fill(image.pixels.begin(), image.pixels.end(), color);
  return image;
}

inline skinseg::Image random_image(skinseg::SplitMix64& rng, int w, int h) {
  skinseg::Image image(w, h);
  for (skinseg::Rgb& px : image.pixels) {
    px.r = static_cast<std::uint8_t>(rand_int(rng, 0, 255));
    px.g = static_cast<std::uint8_t>(rand_int(rng, 0, 255));
    px.b = static_cast<std::uint8_t>(rand_int(rng, 0, 255));
  }
  return image;
}

inline std::vector<double> random_vector(skinseg::SplitMix64& rng,
                                         std::size_t len) {
  std::vector<double> v(len);
  for (double& x : v) x = rand_unit(rng);
  return v;
}

// --- oracles --------------------------------------------------------------

// Buckets every pixel's channel value into floor(v / n) directly, without
// going through 256-bin histograms.
inline std::vector<double> features_oracle(const skinseg::Region& region,
                                           int n) {
  const int groups = 256 / n;
  std::vector<double> out(static_cast<std::size_t>(3) * groups, 0.0);
  for (int ry = 0; ry < region.h; ++ry) {
    for (int rx = 0; rx < region.w; ++rx) {
      const skinseg::Rgb& px = region.at(rx, ry);
      out[static_cast<std::size_t>(px.r / n)] += 1.0;
      out[static_cast<std::size_t>(groups + px.g / n)] += 1.0;
      out[static_cast<std::size_t>(2 * groups + px.b / n)] += 1.0;
    }
  }
  const double m = static_cast<double>(region.pixel_count());
  for (double& v : out) v /= m;
  return out;
}

inline double euclidean_oracle(std::span<const double> a,
                               std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::abs(a[i] - b[i]) * std::abs(a[i] - b[i]);
  }
  return std::sqrt(sum);
}

inline double gower_oracle(std::span<const double> a,
                           std::span<const double> b,
                           std::span<const double> r) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::abs(a[i] - b[i]) / r[i];
  }
  return sum / static_cast<double>(a.size());
}

inline double city_block_oracle(std::span<const double> a,
                                std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

inline double soergel_oracle(std::span<const double> a,
                             std::span<const double> b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::abs(a[i] - b[i]);
    den += std::max(a[i], b[i]);
  }
  return num / den;
}

inline double bhattacharyya_oracle(std::span<const double> a,
                                   std::span<const double> b) {
  double mass_a = 0.0;
  double mass_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mass_a += a[i];
    mass_b += b[i];
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::sqrt((a[i] / mass_a) * (b[i] / mass_b));
  }
  return -std::log(sum);
}

struct BruteCounts {
  std::int64_t tp = 0, tn = 0, fp = 0, fn = 0;
};

inline BruteCounts brute_confusion(const std::vector<bool>& predicted,
                                   const std::vector<bool>& truth) {
  BruteCounts c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] && truth[i]) ++c.tp;
    if (!predicted[i] && !truth[i]) ++c.tn;
    if (predicted[i] && !truth[i]) ++c.fp;
    if (!predicted[i] && truth[i]) ++c.fn;
  }
  return c;
}

// --- comparisons ------------------------------------------------------------

// Runs fn and returns the exception message it throws, or "" if it doesn't.
template <typename Fn>
std::string message_of(Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

inline double max_abs_diff(std::span<const double> a,
                           std::span<const double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace test_support
