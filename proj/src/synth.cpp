#include "skinseg/synth.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace skinseg {

namespace {

[[noreturn]] void fail_line(std::size_t line, const std::string& message) {
  throw std::runtime_error("synth spec line " + std::to_string(line) + ": " +
                           message);
}

std::vector<std::string> fields_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> fields;
  std::string field;
  while (in >> field) fields.push_back(field);
  return fields;
}

int parse_int(const std::string& text, std::size_t line, const char* what,
              int lo, int hi) {
  errno = 0;
  char* end = nullptr;
  const long value = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    fail_line(line, std::string(what) + " '" + text + "' is not an integer");
  }
  if (value < lo || value > hi) {
    fail_line(line, std::string(what) + " " + text + " is outside [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(value);
}

std::uint64_t parse_seed(const std::string& text, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  // base 0: accepts decimal and 0x-prefixed hex
  const unsigned long long value = std::strtoull(text.c_str(), &end, 0);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE ||
      text.front() == '-') {
    fail_line(line, "seed '" + text + "' is not an unsigned 64-bit integer");
  }
  return value;
}

}  // namespace

SynthSpec parse_synth_spec(std::string_view text) {
  SynthSpec spec;
  bool have_header = false;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;

    const std::vector<std::string> fields = fields_of(line);
    if (!have_header) {
      if (fields.size() != 3) {
        fail_line(line_no, "expected header 'width height seed', got " +
                               std::to_string(fields.size()) + " fields");
      }
      spec.width = parse_int(fields[0], line_no, "width", 1, 1 << 20);
      spec.height = parse_int(fields[1], line_no, "height", 1, 1 << 20);
      spec.seed = parse_seed(fields[2], line_no);
      have_header = true;
      continue;
    }

    if (fields.size() != 9) {
      fail_line(line_no,
                "expected 'x0 y0 w h r g b jitter skin-flag', got " +
                    std::to_string(fields.size()) + " fields");
    }
    SynthPatch patch;
    patch.x0 = parse_int(fields[0], line_no, "x0", 0, spec.width - 1);
    patch.y0 = parse_int(fields[1], line_no, "y0", 0, spec.height - 1);
    patch.w = parse_int(fields[2], line_no, "w", 1, spec.width);
    patch.h = parse_int(fields[3], line_no, "h", 1, spec.height);
    patch.r = parse_int(fields[4], line_no, "r", 0, 255);
    patch.g = parse_int(fields[5], line_no, "g", 0, 255);
    patch.b = parse_int(fields[6], line_no, "b", 0, 255);
    patch.jitter = parse_int(fields[7], line_no, "jitter", 0, 255);
    const int skin = parse_int(fields[8], line_no, "skin-flag", 0, 1);
    patch.skin = skin == 1;
    if (patch.x0 + patch.w > spec.width || patch.y0 + patch.h > spec.height) {
      fail_line(line_no, "patch extends past the canvas");
    }
    spec.patches.push_back(patch);
  }

  if (!have_header) {
    throw std::runtime_error("synth spec: missing 'width height seed' header");
  }
  if (spec.patches.empty()) {
    throw std::runtime_error("synth spec: no patches");
  }
  return spec;
}

std::pair<Image, GroundTruth> generate(const SynthSpec& spec) {
  if (spec.width < 1 || spec.height < 1) {
    throw std::invalid_argument("synth: canvas dimensions must be positive");
  }

  // The patches must partition the canvas: no overlaps, no gaps.
  std::vector<std::uint8_t> covered(
      static_cast<std::size_t>(spec.width) * spec.height, 0);
  for (std::size_t p = 0; p < spec.patches.size(); ++p) {
    const SynthPatch& patch = spec.patches[p];
    if (patch.x0 < 0 || patch.y0 < 0 || patch.w < 1 || patch.h < 1 ||
        patch.x0 + patch.w > spec.width || patch.y0 + patch.h > spec.height) {
      throw std::invalid_argument("synth: patch " + std::to_string(p) +
                                  " is outside the canvas");
    }
    if (patch.jitter < 0) {
      throw std::invalid_argument("synth: patch " + std::to_string(p) +
                                  " has negative jitter");
    }
    for (int y = patch.y0; y < patch.y0 + patch.h; ++y) {
      std::uint8_t* row =
          covered.data() + static_cast<std::size_t>(y) * spec.width;
      for (int x = patch.x0; x < patch.x0 + patch.w; ++x) {
        if (row[x]) {
          throw std::invalid_argument(
              "synth: patch " + std::to_string(p) + " overlaps pixel (" +
              std::to_string(x) + ", " + std::to_string(y) + ")");
        }
        row[x] = 1;
      }
    }
  }
  const auto gap = std::find(covered.begin(), covered.end(), 0);
  if (gap != covered.end()) {
    const auto offset = static_cast<std::size_t>(gap - covered.begin());
    throw std::invalid_argument(
        "synth: patches leave pixel (" +
        std::to_string(offset % static_cast<std::size_t>(spec.width)) + ", " +
        std::to_string(offset / static_cast<std::size_t>(spec.width)) +
        ") uncovered");
  }

  Image image(spec.width, spec.height);
  GroundTruth truth;
  truth.width = spec.width;
  truth.height = spec.height;
  truth.skin.assign(covered.size(), 0);

  SplitMix64 rng(spec.seed);
  const auto jittered = [&rng](int base, int jitter) -> std::uint8_t {
    const std::uint64_t z = rng.next();  // one draw per channel, always
    const std::int64_t span = 2 * static_cast<std::int64_t>(jitter) + 1;
    const auto offset = static_cast<std::int64_t>(z % static_cast<std::uint64_t>(span)) - jitter;
    return static_cast<std::uint8_t>(std::clamp<std::int64_t>(base + offset, 0, 255));
  };

  for (const SynthPatch& patch : spec.patches) {
    for (int ry = 0; ry < patch.h; ++ry) {
      for (int rx = 0; rx < patch.w; ++rx) {
        Rgb& px = image.at(patch.x0 + rx, patch.y0 + ry);
        px.r = jittered(patch.r, patch.jitter);
        px.g = jittered(patch.g, patch.jitter);
        px.b = jittered(patch.b, patch.jitter);
        if (patch.skin) {
          truth.skin[static_cast<std::size_t>(patch.y0 + ry) * spec.width +
                     patch.x0 + rx] = 1;
        }
      }
    }
  }
  return {std::move(image), std::move(truth)};
}

}  // namespace skinseg
