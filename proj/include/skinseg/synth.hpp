#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skinseg/evaluation.hpp"
#include "skinseg/image.hpp"

namespace skinseg {

/// splitmix64: the fixed generator behind synthetic corpora, chosen so other
/// implementations can reproduce identical images from its three published
/// constants.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

struct SynthPatch {
  int x0 = 0;
  int y0 = 0;
  int w = 0;
  int h = 0;
  int r = 0;
  int g = 0;
  int b = 0;
  int jitter = 0;  // uniform integer noise in [-jitter, +jitter], clamped
  bool skin = false;
};

struct SynthSpec {
  int width = 0;
  int height = 0;
  std::uint64_t seed = 0;
  std::vector<SynthPatch> patches;  // must tile the canvas exactly
};

// Text format, '#' comments and blank lines ignored:
//   width height seed
//   x0 y0 w h r g b jitter skin-flag   (one patch per line)
// Errors carry the 1-based line number.
SynthSpec parse_synth_spec(std::string_view text);

// Deterministic render: one splitmix64 stream seeded with spec.seed, patches
// in listed order, pixels row-major within each patch, channels in r, g, b
// order. Every channel of every pixel consumes exactly one draw z, offset by
// (z mod (2*jitter+1)) - jitter. The truth marks the skin-flagged patches.
std::pair<Image, GroundTruth> generate(const SynthSpec& spec);

}  // namespace skinseg
