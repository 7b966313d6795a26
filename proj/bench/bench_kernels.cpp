// Times each per-window kernel in serial and parallel mode on a 2048x2048
// synthetic image and checks that both modes produce identical results.
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "skinseg/detection.hpp"
#include "skinseg/image.hpp"
#include "skinseg/kernels.hpp"
#include "skinseg/model.hpp"
#include "skinseg/synth.hpp"

using namespace skinseg;

namespace {

Image quadrant_image(int side, std::uint64_t seed) {
  const int half = side / 2;
  SynthSpec spec;
  spec.width = side;
  spec.height = side;
  spec.seed = seed;
  spec.patches = {
      {0, 0, half, half, 210, 150, 120, 12, true},
      {half, 0, side - half, half, 190, 120, 90, 12, true},
      {0, half, half, side - half, 30, 60, 200, 12, false},
      {half, half, side - half, side - half, 60, 200, 60, 12, false},
  };
  return generate(spec).first;
}

Image patch_image(int side, int r, int g, int b, std::uint64_t seed) {
  SynthSpec spec;
  spec.width = side;
  spec.height = side;
  spec.seed = seed;
  spec.patches = {{0, 0, side, side, r, g, b, 12, true}};
  return generate(spec).first;
}

template <typename Fn>
double best_of_3_ms(Fn&& fn) {
  double best = 0.0;
  for (int run = 0; run < 3; ++run) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    const double ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    if (run == 0 || ms < best) best = ms;
  }
  return best;
}

bool same_decisions(const std::vector<WindowDecision>& a,
                    const std::vector<WindowDecision>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].window_index != b[i].window_index || a[i].label != b[i].label ||
        a[i].distances != b[i].distances) {
      return false;
    }
  }
  return true;
}

void report(const char* name, double serial_ms, double parallel_ms,
            bool identical) {
  std::printf("%-20s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
  const int side = 2048;
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif
  std::printf("image: %dx%d, 16x16 windows, quant 16, gower\n\n", side, side);

  const Image image = quadrant_image(side, 7);
  const WindowGrid grid = tile(image, 16, 16);

  ClassImages training;
  training.emplace_back("warm",
                        std::vector<Image>{patch_image(256, 210, 150, 120, 1)});
  training.emplace_back("cool",
                        std::vector<Image>{patch_image(256, 190, 120, 90, 2)});
  const SkinModelSet set = train_multi(training, TrainConfig{});

  bool all_identical = true;

  std::vector<FeatureVector> feats_serial, feats_parallel;
  const double feat_serial = best_of_3_ms(
      [&] { feats_serial = kernels::window_features(grid, 16, Exec::Serial); });
  const double feat_parallel = best_of_3_ms([&] {
    feats_parallel = kernels::window_features(grid, 16, Exec::Parallel);
  });
  const bool feats_same = feats_serial == feats_parallel;
  all_identical = all_identical && feats_same;
  report("window_features", feat_serial, feat_parallel, feats_same);

  std::vector<double> dist_serial, dist_parallel;
  const double dist_serial_ms = best_of_3_ms([&] {
    dist_serial =
        kernels::centroid_distances(feats_serial, set.classes[0].centroid,
                                    set.config.metric,
                                    &set.classes[0].ranges, Exec::Serial);
  });
  const double dist_parallel_ms = best_of_3_ms([&] {
    dist_parallel =
        kernels::centroid_distances(feats_serial, set.classes[0].centroid,
                                    set.config.metric,
                                    &set.classes[0].ranges, Exec::Parallel);
  });
  const bool dist_same = dist_serial == dist_parallel;
  all_identical = all_identical && dist_same;
  report("centroid_distances", dist_serial_ms, dist_parallel_ms, dist_same);

  std::vector<WindowDecision> cls_serial, cls_parallel;
  const double cls_serial_ms = best_of_3_ms(
      [&] { cls_serial = kernels::classify_windows(grid, set, Exec::Serial); });
  const double cls_parallel_ms = best_of_3_ms([&] {
    cls_parallel = kernels::classify_windows(grid, set, Exec::Parallel);
  });
  const bool cls_same = same_decisions(cls_serial, cls_parallel);
  all_identical = all_identical && cls_same;
  report("classify_windows", cls_serial_ms, cls_parallel_ms, cls_same);

  return all_identical ? 0 : 1;
}
