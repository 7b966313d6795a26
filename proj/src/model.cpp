#include "skinseg/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "skinseg/kernels.hpp"

namespace skinseg {

namespace {

void check_same_shape(std::span<const FeatureVector> features,
                      const char* what) {
  if (features.empty()) {
    throw std::invalid_argument(std::string(what) +
                                ": empty feature sequence");
  }
  const std::size_t len = features.front().values.size();
  const int n = features.front().quant_n;
  for (const FeatureVector& f : features) {
    if (f.values.size() != len || f.quant_n != n) {
      throw std::invalid_argument(std::string(what) +
                                  ": mixed feature vector shapes");
    }
  }
}

const RangeVector* ranges_for(MetricId metric, const RangeVector& ranges) {
  return metric == MetricId::gower ? &ranges : nullptr;
}

[[noreturn]] void fail_load(const std::string& message) {
  throw std::runtime_error("model: " + message);
}

void check_known_fields(const nlohmann::ordered_json& obj,
                        std::initializer_list<const char*> allowed,
                        const char* where) {
  for (const auto& item : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        })) {
      fail_load(std::string("unknown ") + where + " field '" + item.key() +
                "'");
    }
  }
}

const nlohmann::ordered_json& require_field(const nlohmann::ordered_json& obj,
                                            const char* key,
                                            const char* where) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    fail_load(std::string("missing ") + where + " field '" + key + "'");
  }
  return *it;
}

std::int64_t load_int(const nlohmann::ordered_json& obj, const char* key,
                      const char* where) {
  const auto& v = require_field(obj, key, where);
  if (!v.is_number_integer()) {
    fail_load(std::string("field '") + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

double load_number(const nlohmann::ordered_json& obj, const char* key,
                   const char* where) {
  const auto& v = require_field(obj, key, where);
  if (!v.is_number()) {
    fail_load(std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

std::string load_string(const nlohmann::ordered_json& obj, const char* key,
                        const char* where) {
  const auto& v = require_field(obj, key, where);
  if (!v.is_string()) {
    fail_load(std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::vector<double> load_number_array(const nlohmann::ordered_json& obj,
                                      const char* key, const char* where) {
  const auto& v = require_field(obj, key, where);
  if (!v.is_array()) {
    fail_load(std::string("field '") + key + "' must be an array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) {
      fail_load(std::string("field '") + key + "' must contain only numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

void validate(const TrainConfig& config) {
  if (config.window_w < 1 || config.window_h < 1) {
    throw std::invalid_argument("config: window dimensions must be positive");
  }
  if (config.quant_n < 1 || 256 % config.quant_n != 0) {
    throw std::invalid_argument("config: quant_n " +
                                std::to_string(config.quant_n) +
                                " does not divide 256");
  }
  if (!(config.threshold_slack >= 0.0) ||
      !std::isfinite(config.threshold_slack)) {
    throw std::invalid_argument(
        "config: threshold_slack must be a finite non-negative number");
  }
}

std::vector<std::string> config_warnings(const TrainConfig& config) {
  std::vector<std::string> warnings;
  if (config.threshold_slack < 1.0) {
    warnings.push_back(
        "threshold_slack below 1.0: some training windows will fall outside "
        "their own class threshold");
  }
  return warnings;
}

FeatureVector average_vector(std::span<const FeatureVector> features) {
  check_same_shape(features, "average_vector");
  FeatureVector mean;
  mean.quant_n = features.front().quant_n;
  mean.values.assign(features.front().values.size(), 0.0);
  for (const FeatureVector& f : features) {
    for (std::size_t i = 0; i < mean.values.size(); ++i) {
      mean.values[i] += f.values[i];
    }
  }
  const double m = static_cast<double>(features.size());
  for (double& v : mean.values) v /= m;
  return mean;
}

RangeVector dimension_ranges(std::span<const FeatureVector> features,
                             double floor) {
  check_same_shape(features, "dimension_ranges");
  if (!(floor > 0.0)) {
    throw std::invalid_argument("dimension_ranges: floor must be positive");
  }
  const std::size_t len = features.front().values.size();
  std::vector<double> lo(len, std::numeric_limits<double>::infinity());
  std::vector<double> hi(len, -std::numeric_limits<double>::infinity());
  for (const FeatureVector& f : features) {
    for (std::size_t i = 0; i < len; ++i) {
      lo[i] = std::min(lo[i], f.values[i]);
      hi[i] = std::max(hi[i], f.values[i]);
    }
  }
  RangeVector r;
  r.values.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    r.values[i] = std::max(hi[i] - lo[i], floor);
  }
  return r;
}

double tune_threshold(std::span<const FeatureVector> features,
                      const FeatureVector& centroid, MetricId metric,
                      const RangeVector& ranges, double slack, Exec exec) {
  check_same_shape(features, "tune_threshold");
  const std::vector<double> distances = kernels::centroid_distances(
      features, centroid, metric, ranges_for(metric, ranges), exec);
  double max_distance = 0.0;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (!std::isfinite(distances[i])) {
      throw std::runtime_error(
          "tune_threshold: non-finite distance for training window " +
          std::to_string(i) + " (degenerate training window)");
    }
    max_distance = std::max(max_distance, distances[i]);
  }
  return slack * max_distance;
}

SkinClassModel train_class(const std::string& name,
                           std::span<const Image> pure_skin_images,
                           const TrainConfig& config, Exec exec) {
  validate(config);
  if (name.empty()) {
    throw std::invalid_argument("train: class name must not be empty");
  }
  if (pure_skin_images.empty()) {
    throw std::invalid_argument("train: class '" + name +
                                "' has no training images");
  }

  std::vector<FeatureVector> features;
  for (const Image& image : pure_skin_images) {
    const WindowGrid grid = tile(image, config.window_w, config.window_h);
    std::vector<FeatureVector> window_feats =
        kernels::window_features(grid, config.quant_n, exec);
    features.insert(features.end(),
                    std::make_move_iterator(window_feats.begin()),
                    std::make_move_iterator(window_feats.end()));
  }

  SkinClassModel model;
  model.class_name = name;
  model.centroid = average_vector(features);
  model.ranges = dimension_ranges(features);
  model.threshold = tune_threshold(features, model.centroid, config.metric,
                                   model.ranges, config.threshold_slack, exec);
  model.train_window_count = static_cast<std::int64_t>(features.size());
  return model;
}

SkinModelSet train_multi(const ClassImages& class_images,
                         const TrainConfig& config, Exec exec) {
  validate(config);
  if (class_images.empty()) {
    throw std::invalid_argument("train: at least one class is required");
  }
  std::set<std::string> seen;
  for (const auto& [name, images] : class_images) {
    if (!seen.insert(name).second) {
      throw std::invalid_argument("train: duplicate class name '" + name + "'");
    }
  }

  SkinModelSet set;
  set.config = config;
  set.classes.reserve(class_images.size());
  for (const auto& [name, images] : class_images) {
    set.classes.push_back(train_class(name, images, config, exec));
  }
  return set;
}

std::string save_model(const SkinModelSet& set) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["window_w"] = set.config.window_w;
  doc["window_h"] = set.config.window_h;
  doc["quant_n"] = set.config.quant_n;
  doc["metric"] = metric_name(set.config.metric);
  doc["threshold_slack"] = set.config.threshold_slack;
  doc["classes"] = nlohmann::ordered_json::array();
  for (const SkinClassModel& cls : set.classes) {
    nlohmann::ordered_json c;
    c["name"] = cls.class_name;
    c["train_window_count"] = cls.train_window_count;
    c["centroid"] = cls.centroid.values;
    c["ranges"] = cls.ranges.values;
    c["threshold"] = cls.threshold;
    doc["classes"].push_back(std::move(c));
  }
  return doc.dump(2) + "\n";
}

SkinModelSet load_model(std::string_view json_text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail_load(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    fail_load("document root must be an object");
  }
  check_known_fields(doc,
                     {"schema_version", "window_w", "window_h", "quant_n",
                      "metric", "threshold_slack", "classes"},
                     "top-level");

  const std::int64_t version = load_int(doc, "schema_version", "top-level");
  if (version != 1) {
    fail_load("unsupported schema_version " + std::to_string(version));
  }

  SkinModelSet set;
  set.config.window_w =
      static_cast<int>(load_int(doc, "window_w", "top-level"));
  set.config.window_h =
      static_cast<int>(load_int(doc, "window_h", "top-level"));
  set.config.quant_n = static_cast<int>(load_int(doc, "quant_n", "top-level"));
  const std::string metric = load_string(doc, "metric", "top-level");
  const auto metric_id = try_metric_from_name(metric);
  if (!metric_id) {
    fail_load("field 'metric': unknown metric name '" + metric + "'");
  }
  set.config.metric = *metric_id;
  set.config.threshold_slack = load_number(doc, "threshold_slack", "top-level");
  try {
    validate(set.config);
  } catch (const std::invalid_argument& e) {
    fail_load(e.what());
  }

  const auto& classes = require_field(doc, "classes", "top-level");
  if (!classes.is_array() || classes.empty()) {
    fail_load("field 'classes' must be a non-empty array");
  }

  const std::size_t expected_len =
      static_cast<std::size_t>(3) * (256 / set.config.quant_n);
  std::set<std::string> seen;
  for (const auto& c : classes) {
    if (!c.is_object()) {
      fail_load("each class entry must be an object");
    }
    check_known_fields(
        c, {"name", "train_window_count", "centroid", "ranges", "threshold"},
        "class");

    SkinClassModel cls;
    cls.class_name = load_string(c, "name", "class");
    if (cls.class_name.empty()) {
      fail_load("field 'name' must not be empty");
    }
    if (!seen.insert(cls.class_name).second) {
      fail_load("duplicate class name '" + cls.class_name + "'");
    }
    cls.train_window_count = load_int(c, "train_window_count", "class");
    if (cls.train_window_count < 0) {
      fail_load("field 'train_window_count' must be non-negative");
    }
    cls.centroid.values = load_number_array(c, "centroid", "class");
    cls.centroid.quant_n = set.config.quant_n;
    if (cls.centroid.values.size() != expected_len) {
      fail_load("field 'centroid' has length " +
                std::to_string(cls.centroid.values.size()) + ", expected " +
                std::to_string(expected_len) + " for quant_n " +
                std::to_string(set.config.quant_n));
    }
    for (const double v : cls.centroid.values) {
      if (!std::isfinite(v) || v < 0.0 || v > 1.0 + 1e-9) {
        fail_load("field 'centroid' entries must lie in [0, 1]");
      }
    }
    cls.ranges.values = load_number_array(c, "ranges", "class");
    if (cls.ranges.values.size() != cls.centroid.values.size()) {
      fail_load("field 'ranges' has length " +
                std::to_string(cls.ranges.values.size()) +
                ", expected centroid length " +
                std::to_string(cls.centroid.values.size()));
    }
    for (const double v : cls.ranges.values) {
      if (!std::isfinite(v) || v <= 0.0) {
        fail_load("field 'ranges' entries must be positive");
      }
    }
    cls.threshold = load_number(c, "threshold", "class");
    if (!std::isfinite(cls.threshold) || cls.threshold < 0.0) {
      fail_load("field 'threshold' must be a finite non-negative number");
    }
    set.classes.push_back(std::move(cls));
  }
  return set;
}

}  // namespace skinseg
