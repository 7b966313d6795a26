#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "skinseg/detection.hpp"
#include "skinseg/evaluation.hpp"
#include "skinseg/image.hpp"
#include "skinseg/model.hpp"
#include "skinseg/numfmt.hpp"
#include "skinseg/synth.hpp"

namespace {

using namespace skinseg;

// Output files are staged in memory and written only after the whole command
// has succeeded; a failed write removes everything already written, so an
// exit code of 0 means every requested artifact is complete on disk.
class OutputStager {
 public:
  void stage(std::string path, std::vector<std::uint8_t> bytes) {
    staged_.push_back({std::move(path), std::move(bytes)});
  }

  void stage_text(std::string path, const std::string& text) {
    stage(std::move(path),
          std::vector<std::uint8_t>(text.begin(), text.end()));
  }

  void commit() {
    std::size_t i = 0;
    try {
      for (; i < staged_.size(); ++i) {
        write_file(staged_[i].path, staged_[i].bytes);
      }
    } catch (...) {
      for (std::size_t k = 0; k <= i && k < staged_.size(); ++k) {
        std::remove(staged_[k].path.c_str());
      }
      throw;
    }
  }

 private:
  struct Entry {
    std::string path;
    std::vector<std::uint8_t> bytes;
  };
  std::vector<Entry> staged_;
};

int parse_positive_int(const std::string& text, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  const long value = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE || value < 1 ||
      value > (1L << 20)) {
    throw std::runtime_error(what + " expects a positive integer, got '" +
                             text + "'");
  }
  return static_cast<int>(value);
}

TrainConfig make_config(const std::string& window, int quant,
                        const std::string& metric, double slack) {
  TrainConfig config;
  const std::size_t x = window.find('x');
  if (x == std::string::npos) {
    throw std::runtime_error("--window expects WIDTHxHEIGHT (e.g. 16x16), got '" +
                             window + "'");
  }
  config.window_w = parse_positive_int(window.substr(0, x), "--window width");
  config.window_h = parse_positive_int(window.substr(x + 1), "--window height");
  config.quant_n = quant;
  config.metric = metric_from_name(metric);
  config.threshold_slack = slack;
  validate(config);
  return config;
}

std::pair<std::string, std::vector<std::string>> parse_class_spec(
    const std::string& spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    throw std::runtime_error("--class expects NAME=PATH[,PATH...], got '" +
                             spec + "'");
  }
  std::pair<std::string, std::vector<std::string>> parsed;
  parsed.first = spec.substr(0, eq);
  std::string rest = spec.substr(eq + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const std::size_t comma = rest.find(',', start);
    const std::string path = rest.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (path.empty()) {
      throw std::runtime_error("--class '" + spec + "' has an empty path");
    }
    parsed.second.push_back(path);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parsed;
}

std::pair<std::string, std::string> parse_pair_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size()) {
    throw std::runtime_error("--pair expects IMAGE:TRUTH, got '" + spec + "'");
  }
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

// read_file already names the path; decode errors get it prepended here.
Image load_ppm(const std::string& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  try {
    return decode_ppm(bytes);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

GrayImage load_pgm(const std::string& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  try {
    return decode_pgm(bytes);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

SkinModelSet load_model_file(const std::string& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  try {
    return load_model(
        std::string_view(reinterpret_cast<const char*>(bytes.data()),
                         bytes.size()));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

struct TrainArgs {
  std::vector<std::string> class_specs;
  std::string out;
  std::string window = "16x16";
  int quant = 16;
  std::string metric = "gower";
  double slack = 1.0;
};

int run_train(const TrainArgs& args) {
  const TrainConfig config =
      make_config(args.window, args.quant, args.metric, args.slack);
  for (const std::string& warning : config_warnings(config)) {
    std::cerr << "warning: " << warning << "\n";
  }

  ClassImages class_images;
  for (const std::string& spec : args.class_specs) {
    auto [name, paths] = parse_class_spec(spec);
    std::vector<Image> images;
    images.reserve(paths.size());
    for (const std::string& path : paths) {
      images.push_back(load_ppm(path));
    }
    class_images.emplace_back(std::move(name), std::move(images));
  }

  const SkinModelSet set = train_multi(class_images, config);

  OutputStager stager;
  stager.stage_text(args.out, save_model(set));
  stager.commit();

  for (const SkinClassModel& cls : set.classes) {
    std::cout << "class " << cls.class_name << ": "
              << cls.train_window_count << " training windows, threshold "
              << shortest_double(cls.threshold) << "\n";
  }
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

struct DetectArgs {
  std::string image;
  std::string model;
  std::string out;
  std::string decisions;
};

int run_detect(const DetectArgs& args) {
  const SkinModelSet set = load_model_file(args.model);
  const Image image = load_ppm(args.image);
  const DetectionResult result = detect(image, set);

  OutputStager stager;
  stager.stage(args.out, encode_pgm(result.mask));
  if (!args.decisions.empty()) {
    stager.stage_text(args.decisions, format_decisions(result, set));
  }
  stager.commit();

  std::int64_t skin_windows = 0;
  for (const WindowDecision& d : result.decisions) {
    if (d.label >= 0) ++skin_windows;
  }
  std::cout << skin_windows << "/" << result.decisions.size()
            << " windows classified as skin\n";
  std::cout << "wrote " << args.out << "\n";
  if (!args.decisions.empty()) {
    std::cout << "wrote " << args.decisions << "\n";
  }
  return 0;
}

struct EvalArgs {
  std::vector<std::string> pair_specs;
  std::string model;
  std::string out;
};

int run_eval(const EvalArgs& args) {
  const SkinModelSet set = load_model_file(args.model);

  std::vector<EvalRow> rows;
  rows.reserve(args.pair_specs.size());
  for (const std::string& spec : args.pair_specs) {
    const auto [image_path, truth_path] = parse_pair_spec(spec);
    const Image image = load_ppm(image_path);
    const GroundTruth truth = GroundTruth::from_gray(load_pgm(truth_path));
    try {
      rows.push_back({image_path, evaluate(image, truth, set)});
    } catch (const std::exception& e) {
      throw std::runtime_error(image_path + ": " + e.what());
    }
  }

  OutputStager stager;
  stager.stage_text(args.out, format_report(rows));
  stager.commit();

  ConfusionCounts pooled;
  for (const EvalRow& row : rows) {
    pooled.tp += row.report.counts.tp;
    pooled.tn += row.report.counts.tn;
    pooled.fp += row.report.counts.fp;
    pooled.fn += row.report.counts.fn;
  }
  std::cout << "evaluated " << rows.size() << " image(s), pooled detection rate "
            << shortest_double(detection_rate(pooled)) << "\n";
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

struct SynthArgs {
  std::string spec;
  std::string out;
  std::string truth;
};

int run_synth(const SynthArgs& args) {
  const std::vector<std::uint8_t> bytes = read_file(args.spec);
  const SynthSpec spec = parse_synth_spec(
      std::string_view(reinterpret_cast<const char*>(bytes.data()),
                       bytes.size()));
  const auto [image, truth] = generate(spec);

  OutputStager stager;
  stager.stage(args.out, encode_ppm(image));
  stager.stage(args.truth, encode_pgm(truth_to_gray(truth)));
  stager.commit();

  std::cout << "wrote " << args.out << "\n";
  std::cout << "wrote " << args.truth << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Histogram-retrieval skin segmentation"};
  app.require_subcommand(1);

  TrainArgs train_args;
  CLI::App* train_cmd =
      app.add_subcommand("train", "Train a model from pure-skin images");
  train_cmd
      ->add_option("--class", train_args.class_specs,
                   "Class spec NAME=PATH[,PATH...] (repeatable)")
      ->required();
  train_cmd->add_option("--out", train_args.out, "Model file to write")
      ->required();
  train_cmd->add_option("--window", train_args.window,
                        "Window size WIDTHxHEIGHT (default 16x16)");
  train_cmd->add_option("--quant", train_args.quant,
                        "Histogram group width, must divide 256 (default 16)");
  train_cmd->add_option(
      "--metric", train_args.metric,
      "Distance: gower, bhattacharyya, city_block, soergel or euclidean");
  train_cmd->add_option("--slack", train_args.slack,
                        "Threshold slack multiplier (default 1.0)");

  DetectArgs detect_args;
  CLI::App* detect_cmd =
      app.add_subcommand("detect", "Segment an image with a trained model");
  detect_cmd->add_option("image", detect_args.image, "Input PPM image")
      ->required();
  detect_cmd->add_option("--model", detect_args.model, "Model file")
      ->required();
  detect_cmd->add_option("--out", detect_args.out, "Mask PGM to write")
      ->required();
  detect_cmd->add_option("--decisions", detect_args.decisions,
                         "Optional per-window decisions TSV to write");

  EvalArgs eval_args;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Score a model against ground-truth masks");
  eval_cmd
      ->add_option("--pair", eval_args.pair_specs,
                   "IMAGE:TRUTH path pair (repeatable)")
      ->required();
  eval_cmd->add_option("--model", eval_args.model, "Model file")->required();
  eval_cmd->add_option("--out", eval_args.out, "Report TSV to write")
      ->required();

  SynthArgs synth_args;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Render a synthetic image and its truth");
  synth_cmd->add_option("spec", synth_args.spec, "Synth spec file")
      ->required();
  synth_cmd->add_option("--out", synth_args.out, "Image PPM to write")
      ->required();
  synth_cmd->add_option("--truth", synth_args.truth, "Truth PGM to write")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train_cmd->parsed()) return run_train(train_args);
    if (detect_cmd->parsed()) return run_detect(detect_args);
    if (eval_cmd->parsed()) return run_eval(eval_args);
    return run_synth(synth_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
