#pragma once

#include <span>
#include <vector>

#include "skinseg/detection.hpp"
#include "skinseg/exec.hpp"
#include "skinseg/features.hpp"
#include "skinseg/image.hpp"
#include "skinseg/metrics.hpp"
#include "skinseg/model.hpp"

// Per-window batch kernels. Every kernel writes each window's result into a
// preallocated slot, so Exec::Serial and Exec::Parallel produce bit-identical
// output; the serial path is the reference implementation.
namespace skinseg::kernels {

// One feature vector per grid window, in row-major window order.
std::vector<FeatureVector> window_features(const WindowGrid& grid, int quant_n,
                                           Exec exec);

// Distance from every feature vector to one centroid. `ranges` must be
// non-null exactly when `metric` is gower.
std::vector<double> centroid_distances(std::span<const FeatureVector> features,
                                       const FeatureVector& centroid,
                                       MetricId metric,
                                       const RangeVector* ranges, Exec exec);

// Feature extraction plus multi-class routing for every grid window.
std::vector<WindowDecision> classify_windows(const WindowGrid& grid,
                                             const SkinModelSet& set,
                                             Exec exec);

}  // namespace skinseg::kernels
