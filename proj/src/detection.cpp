#include "skinseg/detection.hpp"

#include <algorithm>
#include <stdexcept>

#include "skinseg/kernels.hpp"
#include "skinseg/numfmt.hpp"

namespace skinseg {

ClassifyResult classify_window(const FeatureVector& features,
                               const SkinClassModel& model, MetricId metric) {
  const RangeVector* r = metric == MetricId::gower ? &model.ranges : nullptr;
  ClassifyResult result;
  result.distance =
      distance(metric, features.values, model.centroid.values, r);
  result.is_skin = result.distance <= model.threshold;
  return result;
}

WindowDecision classify_window_multi(const FeatureVector& features,
                                     const SkinModelSet& set) {
  WindowDecision decision;
  decision.distances.reserve(set.classes.size());

  double best_ratio = 0.0;
  for (std::size_t i = 0; i < set.classes.size(); ++i) {
    const ClassifyResult r =
        classify_window(features, set.classes[i], set.config.metric);
    decision.distances.push_back(r.distance);
    if (!r.is_skin) continue;
    // A zero distance is a perfect match regardless of the threshold.
    const double ratio = r.distance == 0.0
                             ? 0.0
                             : r.distance / set.classes[i].threshold;
    if (decision.label < 0 || ratio < best_ratio) {
      decision.label = static_cast<int>(i);
      best_ratio = ratio;
    }
  }
  return decision;
}

DetectionResult detect(const Image& image, const SkinModelSet& set,
                       Exec exec) {
  validate(set.config);
  if (set.classes.empty()) {
    throw std::invalid_argument("detect: model has no classes");
  }
  const WindowGrid grid = tile(image, set.config.window_w, set.config.window_h);
  std::vector<WindowDecision> decisions =
      kernels::classify_windows(grid, set, exec);

  // Paint every pixel of each window with its window's label so the mask
  // aligns with the source image.
  DetectionMask mask;
  mask.width = image.width;
  mask.height = image.height;
  mask.num_classes = static_cast<int>(set.classes.size());
  mask.labels.assign(static_cast<std::size_t>(image.pixel_count()), kNoLabel);
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    const Region& region = grid.regions[i];
    const auto label = static_cast<std::int16_t>(decisions[i].label);
    for (int ry = 0; ry < region.h; ++ry) {
      std::int16_t* row = mask.labels.data() +
                          static_cast<std::size_t>(region.y0 + ry) *
                              image.width +
                          region.x0;
      std::fill(row, row + region.w, label);
    }
  }
  return DetectionResult{std::move(mask), std::move(decisions)};
}

std::string format_decisions(const DetectionResult& result,
                             const SkinModelSet& set) {
  std::string out = "# window\tlabel";
  for (const SkinClassModel& cls : set.classes) {
    out += '\t';
    out += cls.class_name;
  }
  out += '\n';
  for (const WindowDecision& d : result.decisions) {
    out += std::to_string(d.window_index);
    out += '\t';
    out += d.label < 0 ? "-" : set.classes[static_cast<std::size_t>(d.label)]
                                   .class_name;
    for (const double dist : d.distances) {
      out += '\t';
      out += shortest_double(dist);
    }
    out += '\n';
  }
  return out;
}

}  // namespace skinseg
