#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "skinseg/detection.hpp"
#include "skinseg/model.hpp"
#include "skinseg/synth.hpp"
#include "test_support.hpp"

using namespace skinseg;
using test_support::uniform_image;

namespace {

FeatureVector vec(std::vector<double> values) {
  FeatureVector f;
  f.values = std::move(values);
  f.quant_n = 16;
  return f;
}

SkinClassModel manual_class(const std::string& name, std::vector<double> center,
                            double threshold) {
  SkinClassModel model;
  model.class_name = name;
  model.centroid = vec(std::move(center));
  model.ranges.values.assign(model.centroid.values.size(), 1.0);
  model.threshold = threshold;
  model.train_window_count = 1;
  return model;
}

// A one-dimensional city-block model set: distances are plain |f - center|.
SkinModelSet manual_set(std::vector<SkinClassModel> classes) {
  SkinModelSet set;
  set.config.window_w = 16;
  set.config.window_h = 16;
  set.config.quant_n = 256;
  set.config.metric = MetricId::city_block;
  set.classes = std::move(classes);
  return set;
}

Image jittered_image(int w, int h, int r, int g, int b, int jitter,
                     std::uint64_t seed) {
  SynthSpec spec;
  spec.width = w;
  spec.height = h;
  spec.seed = seed;
  spec.patches = {{0, 0, w, h, r, g, b, jitter, true}};
  return generate(spec).first;
}

}  // namespace

TEST_CASE("classify_window compares distance against the threshold") {
  const SkinClassModel model = manual_class("a", {0.0}, 0.25);

  const ClassifyResult zero =
      classify_window(vec({0.0}), model, MetricId::city_block);
  CHECK(zero.is_skin);
  CHECK(zero.distance == 0.0);

  // Exactly on the boundary is skin: the rule is D <= T.
  const ClassifyResult boundary =
      classify_window(vec({0.25}), model, MetricId::city_block);
  CHECK(boundary.distance == 0.25);
  CHECK(boundary.is_skin);

  const ClassifyResult outside =
      classify_window(vec({0.26}), model, MetricId::city_block);
  CHECK(!outside.is_skin);
}

TEST_CASE("a window of a foreign color is rejected for any tight threshold") {
  const Image red = uniform_image(16, 16, Rgb{255, 0, 0});
  const SkinModelSet set =
      train_multi({{"red", std::vector<Image>{red}}}, TrainConfig{});

  const Image blue = uniform_image(16, 16, Rgb{0, 0, 255});
  const FeatureVector f = extract_features(Region(blue, 0, 0, 16, 16), 16);
  const ClassifyResult r =
      classify_window(f, set.classes[0], set.config.metric);
  CHECK(!r.is_skin);
  CHECK(r.distance > 0.0);
}

TEST_CASE("classify_window_multi picks the smallest distance-to-threshold ratio") {
  // Spec'd ratio example: (D, T) = (0.1, 0.4) vs (0.2, 0.5).
  const SkinModelSet set = manual_set({
      manual_class("near", {0.0}, 0.4),   // D = 0.1, ratio 0.25
      manual_class("far", {0.3}, 0.5),    // D = 0.2, ratio 0.4
  });
  const WindowDecision d = classify_window_multi(vec({0.1}), set);
  CHECK(d.label == 0);
  REQUIRE(d.distances.size() == 2);
  CHECK(d.distances[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(d.distances[1] == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("classify_window_multi labels none when no class qualifies") {
  const SkinModelSet set = manual_set({
      manual_class("a", {0.0}, 0.05),
      manual_class("b", {1.0}, 0.05),
  });
  const WindowDecision d = classify_window_multi(vec({0.5}), set);
  CHECK(d.label == -1);
  CHECK(d.distances.size() == 2);  // distances still reported
}

TEST_CASE("exactly one qualifying class wins regardless of raw distance") {
  // Class b is closer but does not qualify; class a qualifies.
  const SkinModelSet set = manual_set({
      manual_class("a", {0.0}, 0.5),
      manual_class("b", {0.3}, 0.01),
  });
  const WindowDecision d = classify_window_multi(vec({0.4}), set);
  CHECK(d.label == 0);
}

TEST_CASE("ratio ties keep the earliest class") {
  // All values are exact in binary: distances 0.25 and 0.5 against
  // thresholds 0.5 and 1.0 give the identical ratio 0.5.
  const SkinModelSet tie = manual_set({
      manual_class("first", {0.0}, 0.5),    // D = 0.25
      manual_class("second", {0.75}, 1.0),  // D = 0.5
  });
  CHECK(classify_window_multi(vec({0.25}), tie).label == 0);

  const SkinModelSet swapped = manual_set({
      manual_class("second", {0.75}, 1.0),
      manual_class("first", {0.0}, 0.5),
  });
  CHECK(classify_window_multi(vec({0.25}), swapped).label == 0);
}

TEST_CASE("a zero-threshold exact match ranks first") {
  const SkinModelSet set = manual_set({
      manual_class("loose", {0.001}, 1.0),  // D = 0.001, tiny ratio
      manual_class("exact", {0.0}, 0.0),    // D = 0, T = 0
  });
  CHECK(classify_window_multi(vec({0.0}), set).label == 1);
}

TEST_CASE("detect paints every pixel of a window with its label") {
  const Image skin = uniform_image(16, 16, Rgb{210, 150, 120});
  const SkinModelSet set =
      train_multi({{"skin", std::vector<Image>{skin}}}, TrainConfig{});

  // 40x32 forces partial windows on both axes.
  const Image image = uniform_image(40, 32, Rgb{210, 150, 120});
  const DetectionResult result = detect(image, set);
  CHECK(result.mask.width == 40);
  CHECK(result.mask.height == 32);
  CHECK(result.mask.num_classes == 1);
  CHECK(result.decisions.size() == 6);
  CHECK(std::all_of(result.mask.labels.begin(), result.mask.labels.end(),
                    [](std::int16_t label) { return label == 0; }));
  for (std::size_t i = 0; i < result.decisions.size(); ++i) {
    CHECK(result.decisions[i].window_index ==
          static_cast<std::int64_t>(i));
  }
}

TEST_CASE("mask and decisions agree on every pixel") {
  const Image train_img = jittered_image(48, 48, 200, 140, 110, 10, 3);
  const SkinModelSet set =
      train_multi({{"skin", std::vector<Image>{train_img}}}, TrainConfig{});

  SynthSpec spec;
  spec.width = 56;  // partial windows in both directions
  spec.height = 40;
  spec.seed = 4;
  spec.patches = {
      {0, 0, 28, 40, 200, 140, 110, 10, true},
      {28, 0, 28, 40, 20, 20, 220, 10, false},
  };
  const Image image = generate(spec).first;
  const DetectionResult result = detect(image, set);
  const WindowGrid grid = tile(image, 16, 16);

  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const int col = x / 16;
      const int row = y / 16;
      const WindowDecision& d =
          result.decisions[static_cast<std::size_t>(row) * grid.columns + col];
      CHECK(result.mask.labels[static_cast<std::size_t>(y) * image.width + x] ==
            d.label);
    }
  }
}

TEST_CASE("window-aligned composite splits into skin and non-skin halves") {
  const Image skin = uniform_image(32, 32, Rgb{210, 150, 120});
  const SkinModelSet set =
      train_multi({{"skin", std::vector<Image>{skin}}}, TrainConfig{});

  Image composite(64, 32);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 64; ++x) {
      composite.at(x, y) = x < 32 ? Rgb{210, 150, 120} : Rgb{0, 0, 255};
    }
  }
  const DetectionResult result = detect(composite, set);
  const WindowGrid grid = tile(composite, 16, 16);
  for (std::size_t i = 0; i < result.decisions.size(); ++i) {
    const bool left = grid.regions[i].x0 < 32;
    CHECK(result.decisions[i].label == (left ? 0 : -1));
  }
}

TEST_CASE("raising thresholds never unlabels a window") {
  const Image train_img = jittered_image(48, 48, 190, 130, 100, 14, 9);
  const SkinModelSet tight =
      train_multi({{"skin", std::vector<Image>{train_img}}}, TrainConfig{});
  SkinModelSet loose = tight;
  for (SkinClassModel& cls : loose.classes) cls.threshold *= 1.5;

  const Image test_img = jittered_image(64, 48, 190, 130, 100, 20, 10);
  const DetectionResult before = detect(test_img, tight);
  const DetectionResult after = detect(test_img, loose);
  for (std::size_t i = 0; i < before.decisions.size(); ++i) {
    if (before.decisions[i].label >= 0) {
      CHECK(after.decisions[i].label >= 0);
    }
  }
}

TEST_CASE("detect validates its model set") {
  const Image image = uniform_image(16, 16, Rgb{1, 2, 3});
  SkinModelSet empty;
  CHECK_THROWS_AS(detect(image, empty), std::invalid_argument);

  const Image skin = uniform_image(16, 16, Rgb{210, 150, 120});
  const SkinModelSet set =
      train_multi({{"skin", std::vector<Image>{skin}}}, TrainConfig{});
  const Image small(8, 8);
  CHECK_THROWS_AS(detect(small, set), std::invalid_argument);  // window > image
}

TEST_CASE("format_decisions writes one tab-separated row per window") {
  const Image skin = uniform_image(16, 16, Rgb{210, 150, 120});
  TrainConfig config;
  config.metric = MetricId::bhattacharyya;
  const SkinModelSet set =
      train_multi({{"skin", std::vector<Image>{skin}}}, config);

  Image composite(32, 16);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 32; ++x) {
      // The right half shares no histogram bins with the training color.
      composite.at(x, y) = x < 16 ? Rgb{210, 150, 120} : Rgb{0, 0, 255};
    }
  }
  const DetectionResult result = detect(composite, set);
  const std::string text = format_decisions(result, set);

  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# window\tlabel\tskin");
  std::getline(in, line);
  CHECK(line == "0\tskin\t0");  // exact match: distance 0
  std::getline(in, line);
  CHECK(line == "1\t-\tinf");  // disjoint support: infinite distance
  CHECK(!std::getline(in, line));
}
