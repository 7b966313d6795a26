#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skinseg/exec.hpp"
#include "skinseg/image.hpp"
#include "skinseg/model.hpp"

namespace skinseg {

struct ClassifyResult {
  bool is_skin = false;
  double distance = 0.0;
};

// Distance from one window's features to a class centroid, compared
// against that class's threshold.
ClassifyResult classify_window(const FeatureVector& features,
                               const SkinClassModel& model, MetricId metric);

struct WindowDecision {
  std::int64_t window_index = 0;
  int label = -1;  // class index, or -1 for non-skin
  std::vector<double> distances;  // one per class, in model order
};

// Multi-class routing: a window qualifies for class i when its distance
// is within that class's threshold; among qualifying classes the one
// with the smallest distance-to-threshold ratio wins (ties keep the
// earliest class).
WindowDecision classify_window_multi(const FeatureVector& features,
                                     const SkinModelSet& set);

struct DetectionResult {
  DetectionMask mask;
  std::vector<WindowDecision> decisions;  // one per window, row-major
};

// Tile the image with the model's window size, extract features per
// window, and classify each window independently.
DetectionResult detect(const Image& image, const SkinModelSet& set,
                       Exec exec = Exec::Parallel);

// Tab-separated sidecar: a header line naming the classes, then one row
// per window with its index, assigned class name (or "-"), and the
// distance to every class centroid.
std::string format_decisions(const DetectionResult& result,
                             const SkinModelSet& set);

}  // namespace skinseg
