#include "skinseg/kernels.hpp"

#include <cstdint>
#include <exception>

namespace skinseg::kernels {

namespace {

// Runs fn(i) for i in [0, count). The parallel path stores any exception in
// the slot where it occurred and rethrows the lowest-index one afterwards, so
// both paths surface the same error for the same inputs.
template <typename Fn>
void for_each_index(std::int64_t count, Exec exec, Fn&& fn) {
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<FeatureVector> window_features(const WindowGrid& grid, int quant_n,
                                           Exec exec) {
  const auto count = static_cast<std::int64_t>(grid.regions.size());
  std::vector<FeatureVector> out(static_cast<std::size_t>(count));
  for_each_index(count, exec, [&](std::int64_t i) {
    out[static_cast<std::size_t>(i)] =
        extract_features(grid.regions[static_cast<std::size_t>(i)], quant_n);
  });
  return out;
}

std::vector<double> centroid_distances(std::span<const FeatureVector> features,
                                       const FeatureVector& centroid,
                                       MetricId metric,
                                       const RangeVector* ranges, Exec exec) {
  const auto count = static_cast<std::int64_t>(features.size());
  std::vector<double> out(static_cast<std::size_t>(count));
  for_each_index(count, exec, [&](std::int64_t i) {
    out[static_cast<std::size_t>(i)] =
        distance(metric, features[static_cast<std::size_t>(i)].values,
                 centroid.values, ranges);
  });
  return out;
}

std::vector<WindowDecision> classify_windows(const WindowGrid& grid,
                                             const SkinModelSet& set,
                                             Exec exec) {
  const auto count = static_cast<std::int64_t>(grid.regions.size());
  std::vector<WindowDecision> out(static_cast<std::size_t>(count));
  for_each_index(count, exec, [&](std::int64_t i) {
    const auto idx = static_cast<std::size_t>(i);
    const FeatureVector features =
        extract_features(grid.regions[idx], set.config.quant_n);
    out[idx] = classify_window_multi(features, set);
    out[idx].window_index = i;
  });
  return out;
}

}  // namespace skinseg::kernels
