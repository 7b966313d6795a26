#include "skinseg/features.hpp"

#include <stdexcept>
#include <string>

namespace skinseg {

namespace {

void check_quant(int n) {
  if (n < 1 || 256 % n != 0) {
    throw std::invalid_argument("features: quantization width " +
                                std::to_string(n) + " does not divide 256");
  }
}

FeatureVector group_and_normalize(
    const std::array<std::array<std::uint32_t, 256>, 3>& counts,
    std::int64_t total, int n) {
  const int groups = 256 / n;
  FeatureVector f;
  f.quant_n = n;
  f.values.reserve(static_cast<std::size_t>(groups) * 3);
  for (int c = 0; c < 3; ++c) {
    for (int g = 0; g < groups; ++g) {
      std::uint64_t sum = 0;
      for (int b = g * n; b < (g + 1) * n; ++b) sum += counts[c][b];
      f.values.push_back(static_cast<double>(sum) / static_cast<double>(total));
    }
  }
  return f;
}

}  // namespace

ChannelHistogram channel_histogram(const Region& region, Channel channel) {
  ChannelHistogram hist;
  for (int ry = 0; ry < region.h; ++ry) {
    for (int rx = 0; rx < region.w; ++rx) {
      const Rgb& p = region.at(rx, ry);
      switch (channel) {
        case Channel::red: ++hist.counts[p.r]; break;
        case Channel::green: ++hist.counts[p.g]; break;
        case Channel::blue: ++hist.counts[p.b]; break;
      }
    }
  }
  hist.total = region.pixel_count();
  return hist;
}

FeatureVector quantize(const std::array<ChannelHistogram, 3>& histograms,
                       int n) {
  check_quant(n);
  const std::int64_t total = histograms[0].total;
  if (total <= 0) {
    throw std::invalid_argument("features: cannot quantize an empty histogram");
  }
  if (histograms[1].total != total || histograms[2].total != total) {
    throw std::invalid_argument(
        "features: channel histograms disagree on pixel count");
  }
  std::array<std::array<std::uint32_t, 256>, 3> counts{};
  for (int c = 0; c < 3; ++c) counts[c] = histograms[c].counts;
  return group_and_normalize(counts, total, n);
}

FeatureVector extract_features(const Region& region, int n) {
  check_quant(n);
  std::array<std::array<std::uint32_t, 256>, 3> counts{};
  for (int ry = 0; ry < region.h; ++ry) {
    for (int rx = 0; rx < region.w; ++rx) {
      const Rgb& p = region.at(rx, ry);
      ++counts[0][p.r];
      ++counts[1][p.g];
      ++counts[2][p.b];
    }
  }
  return group_and_normalize(counts, region.pixel_count(), n);
}

}  // namespace skinseg
