#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skinseg/exec.hpp"
#include "skinseg/features.hpp"
#include "skinseg/image.hpp"
#include "skinseg/metrics.hpp"

namespace skinseg {

struct TrainConfig {
  int window_w = 16;
  int window_h = 16;
  int quant_n = 16;
  MetricId metric = MetricId::gower;
  double threshold_slack = 1.0;
};

void validate(const TrainConfig& config);  // throws on hard violations

// Non-fatal configuration issues the caller should surface (currently only
// threshold_slack below 1, which can reject training windows).
std::vector<std::string> config_warnings(const TrainConfig& config);

/// One skin type: its centroid feature vector, the per-dimension training
/// ranges used by the Gower distance, and the tuned admission threshold.
struct SkinClassModel {
  std::string class_name;
  FeatureVector centroid;
  RangeVector ranges;
  double threshold = 0.0;
  std::int64_t train_window_count = 0;
};

struct SkinModelSet {
  TrainConfig config;
  std::vector<SkinClassModel> classes;  // ordered, unique names
};

// Dimension-wise mean of same-length feature vectors.
FeatureVector average_vector(std::span<const FeatureVector> features);

inline constexpr double kDefaultRangeFloor = 1e-6;

// Per-dimension max - min over the feature set, floored so constant
// dimensions cannot blow up Gower's division.
RangeVector dimension_ranges(std::span<const FeatureVector> features,
                             double floor = kDefaultRangeFloor);

// slack * max distance between any training feature and the centroid.
// Throws if any training distance is non-finite (degenerate window).
double tune_threshold(std::span<const FeatureVector> features,
                      const FeatureVector& centroid, MetricId metric,
                      const RangeVector& ranges, double slack,
                      Exec exec = Exec::Parallel);

SkinClassModel train_class(const std::string& name,
                           std::span<const Image> pure_skin_images,
                           const TrainConfig& config,
                           Exec exec = Exec::Parallel);

using ClassImages = std::vector<std::pair<std::string, std::vector<Image>>>;

SkinModelSet train_multi(const ClassImages& class_images,
                         const TrainConfig& config, Exec exec = Exec::Parallel);

// Model file: UTF-8 JSON, schema_version 1, numbers emitted with shortest
// round-trip precision. load_model rejects unknown fields and any document
// that violates the model invariants.
std::string save_model(const SkinModelSet& set);
SkinModelSet load_model(std::string_view json_text);

}  // namespace skinseg
