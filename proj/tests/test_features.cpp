#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>

#include "skinseg/features.hpp"
#include "skinseg/image.hpp"
#include "skinseg/synth.hpp"
#include "test_support.hpp"

using namespace skinseg;
using test_support::message_of;
using test_support::rand_int;
using test_support::random_image;
using test_support::uniform_image;

namespace {

Region whole(const Image& image) {
  return Region(image, 0, 0, image.width, image.height);
}

}  // namespace

TEST_CASE("channel_histogram tallies per-channel values") {
  const Image image = uniform_image(2, 2, Rgb{200, 0, 0});
  const Region region = whole(image);

  const ChannelHistogram red = channel_histogram(region, Channel::red);
  CHECK(red.total == 4);
  CHECK(red.counts[200] == 4);
  CHECK(std::accumulate(red.counts.begin(), red.counts.end(), 0u) == 4);

  const ChannelHistogram green = channel_histogram(region, Channel::green);
  CHECK(green.counts[0] == 4);
}

TEST_CASE("channel_histogram matches a per-pixel tally on random regions") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Image image = random_image(rng, 24, 24);
    const Region region(image, rand_int(rng, 0, 8), rand_int(rng, 0, 8), 16,
                        16);
    std::array<std::array<std::uint32_t, 256>, 3> tally{};
    for (int y = 0; y < 16; ++y) {
      for (int x = 0; x < 16; ++x) {
        const Rgb& px = region.at(x, y);
        ++tally[0][px.r];
        ++tally[1][px.g];
        ++tally[2][px.b];
      }
    }
    CHECK(channel_histogram(region, Channel::red).counts == tally[0]);
    CHECK(channel_histogram(region, Channel::green).counts == tally[1]);
    CHECK(channel_histogram(region, Channel::blue).counts == tally[2]);
  }
}

TEST_CASE("quantize collapses bins into groups") {
  const Image image = uniform_image(4, 4, Rgb{255, 0, 0});
  const Region region = whole(image);
  const std::array<ChannelHistogram, 3> histograms = {
      channel_histogram(region, Channel::red),
      channel_histogram(region, Channel::green),
      channel_histogram(region, Channel::blue),
  };

  const FeatureVector f = quantize(histograms, 16);
  REQUIRE(f.values.size() == 48);
  CHECK(f.quant_n == 16);
  CHECK(f.values[15] == 1.0);   // red bin 255 -> last group
  CHECK(f.values[16] == 1.0);   // green bin 0 -> first group
  CHECK(f.values[32] == 1.0);   // blue bin 0 -> first group
  CHECK(std::count(f.values.begin(), f.values.end(), 0.0) == 45);

  CHECK(quantize(histograms, 64).values.size() == 12);
  CHECK(quantize(histograms, 256).values == std::vector<double>{1, 1, 1});
}

TEST_CASE("quantize splits mass at group boundaries") {
  // Red values half 0 and half 16: bin 0 is in group 0, bin 16 in group 1.
  Image image(2, 1);
  image.at(0, 0) = Rgb{0, 0, 0};
  image.at(1, 0) = Rgb{16, 0, 0};
  const FeatureVector f = extract_features(whole(image), 16);
  CHECK(f.values[0] == 0.5);
  CHECK(f.values[1] == 0.5);
  CHECK(f.values[2] == 0.0);
}

TEST_CASE("extract_features equals the quantize composition exactly") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Image image = random_image(rng, 17, 13);
    const Region region = whole(image);
    const std::array<ChannelHistogram, 3> histograms = {
        channel_histogram(region, Channel::red),
        channel_histogram(region, Channel::green),
        channel_histogram(region, Channel::blue),
    };
    for (const int n : {8, 16, 32}) {
      CHECK(extract_features(region, n) == quantize(histograms, n));
    }
  }
}

TEST_CASE("features are layout-blind") {
  SplitMix64 rng(9);
  Image image = random_image(rng, 8, 8);
  Image shuffled = image;
  // Deterministic Fisher-Yates on the pixel multiset.
  for (std::size_t i = shuffled.pixels.size(); i > 1; --i) {
    std::swap(shuffled.pixels[i - 1],
              shuffled.pixels[rand_int(rng, 0, static_cast<int>(i) - 1)]);
  }
  CHECK(extract_features(whole(image), 16) ==
        extract_features(whole(shuffled), 16));
}

TEST_CASE("per-channel group sums are 1 and values lie in [0, 1]") {
  SplitMix64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const Image image = random_image(rng, 15, 11);
    const FeatureVector f = extract_features(whole(image), 16);
    const int groups = f.groups_per_channel();
    for (int c = 0; c < 3; ++c) {
      double sum = 0.0;
      for (int g = 0; g < groups; ++g) {
        const double v = f.values[static_cast<std::size_t>(c) * groups + g];
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        sum += v;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("width-2n groups equal the sum of their width-n children") {
  SplitMix64 rng(11);
  const Image image = random_image(rng, 16, 16);
  const FeatureVector fine = extract_features(whole(image), 16);
  const FeatureVector coarse = extract_features(whole(image), 32);
  const int fine_groups = fine.groups_per_channel();
  const int coarse_groups = coarse.groups_per_channel();
  for (int c = 0; c < 3; ++c) {
    for (int g = 0; g < coarse_groups; ++g) {
      const double parent =
          coarse.values[static_cast<std::size_t>(c) * coarse_groups + g];
      const double children =
          fine.values[static_cast<std::size_t>(c) * fine_groups + 2 * g] +
          fine.values[static_cast<std::size_t>(c) * fine_groups + 2 * g + 1];
      CHECK(parent == doctest::Approx(children).epsilon(1e-12));
    }
  }
}

TEST_CASE("extract_features matches the per-pixel bucketing oracle") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 25; ++trial) {
    const Image image = random_image(rng, 48, 48);
    const Region region(image, rand_int(rng, 0, 32), rand_int(rng, 0, 32), 16,
                        16);
    for (const int n : {8, 16, 32, 64}) {
      const FeatureVector f = extract_features(region, n);
      const std::vector<double> oracle = test_support::features_oracle(region, n);
      CHECK(test_support::max_abs_diff(f.values, oracle) <= 1e-12);
    }
  }
}

TEST_CASE("invalid quantization widths and empty histograms are rejected") {
  const Image image = uniform_image(2, 2, Rgb{1, 2, 3});
  const auto bad_n =
      message_of([&] { extract_features(whole(image), 7); });
  CHECK(bad_n.find("quantization width 7 does not divide 256") !=
        std::string::npos);
  CHECK_THROWS_AS(extract_features(whole(image), 0), std::invalid_argument);

  std::array<ChannelHistogram, 3> empty{};
  const auto zero = message_of([&] { quantize(empty, 16); });
  CHECK(zero.find("empty histogram") != std::string::npos);

  std::array<ChannelHistogram, 3> mixed = {
      channel_histogram(whole(image), Channel::red),
      channel_histogram(whole(image), Channel::green),
      channel_histogram(whole(image), Channel::blue),
  };
  mixed[2].total = 3;
  const auto disagree = message_of([&] { quantize(mixed, 16); });
  CHECK(disagree.find("disagree") != std::string::npos);
}
