#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "skinseg/image.hpp"

namespace skinseg {

enum class Channel { red = 0, green = 1, blue = 2 };

/// 256-bin histogram of one color channel over one region.
struct ChannelHistogram {
  std::array<std::uint32_t, 256> counts{};
  std::int64_t total = 0;
};

/// Normalized, quantized color descriptor of one region: each channel's
/// 256-bin histogram is collapsed into groups of quant_n adjacent bins and
/// divided by the region's pixel count, then the three channels are
/// concatenated in red, green, blue order. Length is 3 * (256 / quant_n)
/// and each channel's groups sum to 1.
struct FeatureVector {
  std::vector<double> values;
  int quant_n = 0;

  int groups_per_channel() const { return 256 / quant_n; }
  bool operator==(const FeatureVector&) const = default;
};

ChannelHistogram channel_histogram(const Region& region, Channel channel);

// n must divide 256; the three histograms must share the same positive total.
FeatureVector quantize(const std::array<ChannelHistogram, 3>& histograms, int n);

FeatureVector extract_features(const Region& region, int n);

}  // namespace skinseg
