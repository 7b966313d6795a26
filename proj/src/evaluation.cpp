#include "skinseg/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skinseg/numfmt.hpp"

namespace skinseg {

GroundTruth GroundTruth::from_gray(const GrayImage& gray) {
  GroundTruth truth;
  truth.width = gray.width;
  truth.height = gray.height;
  truth.skin.resize(gray.pixels.size());
  std::transform(gray.pixels.begin(), gray.pixels.end(), truth.skin.begin(),
                 [](std::uint8_t v) -> std::uint8_t { return v != 0; });
  return truth;
}

GrayImage truth_to_gray(const GroundTruth& truth) {
  GrayImage gray(truth.width, truth.height);
  std::transform(truth.skin.begin(), truth.skin.end(), gray.pixels.begin(),
                 [](std::uint8_t s) -> std::uint8_t { return s ? 255 : 0; });
  return gray;
}

std::vector<std::uint8_t> window_truth_labels(const GroundTruth& truth,
                                              const WindowGrid& grid) {
  if (truth.width != grid.image_width || truth.height != grid.image_height) {
    throw std::invalid_argument(
        "evaluation: truth dimensions " + std::to_string(truth.width) + "x" +
        std::to_string(truth.height) + " do not match image dimensions " +
        std::to_string(grid.image_width) + "x" +
        std::to_string(grid.image_height));
  }
  std::vector<std::uint8_t> labels(grid.regions.size(), 0);
  for (std::size_t i = 0; i < grid.regions.size(); ++i) {
    const Region& region = grid.regions[i];
    for (int ry = 0; ry < region.h && !labels[i]; ++ry) {
      const std::uint8_t* row =
          truth.skin.data() +
          static_cast<std::size_t>(region.y0 + ry) * truth.width + region.x0;
      if (std::any_of(row, row + region.w, [](std::uint8_t s) { return s != 0; })) {
        labels[i] = 1;
      }
    }
  }
  return labels;
}

ConfusionCounts confusion(std::span<const WindowDecision> predicted,
                          std::span<const std::uint8_t> truth_windows) {
  if (predicted.size() != truth_windows.size()) {
    throw std::invalid_argument(
        "evaluation: " + std::to_string(predicted.size()) +
        " predictions vs " + std::to_string(truth_windows.size()) +
        " truth windows");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool skin = predicted[i].label >= 0;
    const bool truth = truth_windows[i] != 0;
    if (skin && truth) ++c.tp;
    else if (!skin && !truth) ++c.tn;
    else if (skin) ++c.fp;
    else ++c.fn;
  }
  return c;
}

double detection_rate(const ConfusionCounts& c) {
  if (c.total() <= 0) {
    throw std::invalid_argument("detection_rate: empty grid");
  }
  return 100.0 * static_cast<double>(c.tp + c.tn) /
         static_cast<double>(c.total());
}

std::optional<double> sensitivity(const ConfusionCounts& c) {
  const std::int64_t den = c.tp + c.fn;
  if (den <= 0) return std::nullopt;
  return static_cast<double>(c.tp) / static_cast<double>(den);
}

std::optional<double> specificity(const ConfusionCounts& c) {
  const std::int64_t den = c.tn + c.fp;
  if (den <= 0) return std::nullopt;
  return static_cast<double>(c.tn) / static_cast<double>(den);
}

EvaluationReport evaluate(const Image& image, const GroundTruth& truth,
                          const SkinModelSet& set, Exec exec) {
  if (truth.width != image.width || truth.height != image.height) {
    throw std::invalid_argument(
        "evaluation: truth dimensions " + std::to_string(truth.width) + "x" +
        std::to_string(truth.height) + " do not match image dimensions " +
        std::to_string(image.width) + "x" + std::to_string(image.height));
  }
  const DetectionResult result = detect(image, set, exec);
  const WindowGrid grid = tile(image, set.config.window_w, set.config.window_h);
  const std::vector<std::uint8_t> truth_windows =
      window_truth_labels(truth, grid);

  EvaluationReport report;
  report.counts = confusion(result.decisions, truth_windows);
  report.detection_rate = detection_rate(report.counts);
  report.sensitivity = sensitivity(report.counts);
  report.specificity = specificity(report.counts);

  report.per_class.resize(set.classes.size());
  for (std::size_t k = 0; k < set.classes.size(); ++k) {
    report.per_class[k].class_name = set.classes[k].class_name;
  }
  for (std::size_t i = 0; i < result.decisions.size(); ++i) {
    const int label = result.decisions[i].label;
    if (label < 0) continue;
    ClassWindowCounts& cc = report.per_class[static_cast<std::size_t>(label)];
    ++cc.predicted_windows;
    if (truth_windows[i]) ++cc.truth_skin_windows;
  }
  return report;
}

namespace {

std::string ratio_text(const std::optional<double>& value) {
  return value ? shortest_double(*value) : "undefined";
}

void append_row(std::string& out, const std::string& path,
                const ConfusionCounts& c, double rate,
                const std::optional<double>& sens,
                const std::optional<double>& spec) {
  out += path;
  out += '\t';
  out += std::to_string(c.tp);
  out += '\t';
  out += std::to_string(c.tn);
  out += '\t';
  out += std::to_string(c.fp);
  out += '\t';
  out += std::to_string(c.fn);
  out += '\t';
  out += shortest_double(rate);
  out += '\t';
  out += ratio_text(sens);
  out += '\t';
  out += ratio_text(spec);
  out += '\n';
}

}  // namespace

std::string format_report(std::span<const EvalRow> rows) {
  std::string out =
      "# image\ttp\ttn\tfp\tfn\tdetection_rate\tsensitivity\tspecificity\n";
  if (rows.empty()) return out;

  ConfusionCounts pooled;
  std::vector<double> rates;
  std::vector<ClassWindowCounts> per_class;  // aggregated, first-seen order
  rates.reserve(rows.size());

  for (const EvalRow& row : rows) {
    append_row(out, row.path, row.report.counts, row.report.detection_rate,
               row.report.sensitivity, row.report.specificity);
    pooled.tp += row.report.counts.tp;
    pooled.tn += row.report.counts.tn;
    pooled.fp += row.report.counts.fp;
    pooled.fn += row.report.counts.fn;
    rates.push_back(row.report.detection_rate);
    for (const ClassWindowCounts& cc : row.report.per_class) {
      auto it = std::find_if(per_class.begin(), per_class.end(),
                             [&](const ClassWindowCounts& agg) {
                               return agg.class_name == cc.class_name;
                             });
      if (it == per_class.end()) {
        per_class.push_back(cc);
      } else {
        it->predicted_windows += cc.predicted_windows;
        it->truth_skin_windows += cc.truth_skin_windows;
      }
    }
  }

  append_row(out, "summary", pooled, detection_rate(pooled),
             sensitivity(pooled), specificity(pooled));

  double mean = 0.0;
  for (const double r : rates) mean += r;
  mean /= static_cast<double>(rates.size());
  std::string std_text = "undefined";
  if (rates.size() >= 2) {
    double ss = 0.0;
    for (const double r : rates) ss += (r - mean) * (r - mean);
    std_text =
        shortest_double(std::sqrt(ss / static_cast<double>(rates.size() - 1)));
  }
  out += "# per-image detection_rate: mean " + shortest_double(mean) +
         ", sample_std " + std_text + ", n " + std::to_string(rates.size()) +
         "\n";
  for (const ClassWindowCounts& cc : per_class) {
    out += "# class " + cc.class_name + ": predicted_windows " +
           std::to_string(cc.predicted_windows) + ", truth_skin_windows " +
           std::to_string(cc.truth_skin_windows) + "\n";
  }
  return out;
}

}  // namespace skinseg
