#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skinseg/detection.hpp"
#include "skinseg/exec.hpp"
#include "skinseg/image.hpp"
#include "skinseg/model.hpp"

namespace skinseg {

/// Pixel-aligned binary ground truth: true marks skin.
struct GroundTruth {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> skin;  // 0 or 1, row-major

  // 0 = non-skin, any non-zero gray value = skin.
  static GroundTruth from_gray(const GrayImage& gray);
};

// Skin -> 255, non-skin -> 0; used to persist truth as PGM.
GrayImage truth_to_gray(const GroundTruth& truth);

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t tn = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + tn + fp + fn; }
  bool operator==(const ConfusionCounts&) const = default;
};

// A window counts as skin when it contains at least one skin pixel.
std::vector<std::uint8_t> window_truth_labels(const GroundTruth& truth,
                                              const WindowGrid& grid);

// Binary comparison: any class label counts as predicted skin.
ConfusionCounts confusion(std::span<const WindowDecision> predicted,
                          std::span<const std::uint8_t> truth_windows);

// 100 * (tp + tn) / total. Throws when the grid is empty.
double detection_rate(const ConfusionCounts& c);

// tp / (tp + fn) and tn / (tn + fp); nullopt when the denominator is 0.
std::optional<double> sensitivity(const ConfusionCounts& c);
std::optional<double> specificity(const ConfusionCounts& c);

/// Supplementary per-class window tallies (the headline scores are binary).
struct ClassWindowCounts {
  std::string class_name;
  std::int64_t predicted_windows = 0;   // windows assigned to this class
  std::int64_t truth_skin_windows = 0;  // of those, windows that are truth-skin
};

struct EvaluationReport {
  ConfusionCounts counts;
  double detection_rate = 0.0;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::vector<ClassWindowCounts> per_class;
};

// Runs detection and scores it against the truth on the same window grid.
EvaluationReport evaluate(const Image& image, const GroundTruth& truth,
                          const SkinModelSet& set, Exec exec = Exec::Parallel);

struct EvalRow {
  std::string path;
  EvaluationReport report;
};

// Tab-separated report: a header comment, one row per image
// (path, tp, tn, fp, fn, rate, sensitivity, specificity), a pooled
// "summary" row, then comment lines with per-image rate statistics and
// aggregated per-class window counts. Undefined ratios print "undefined".
std::string format_report(std::span<const EvalRow> rows);

}  // namespace skinseg
