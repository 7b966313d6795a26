#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace skinseg {

/// The five supported histogram distances. The names below are the stable
/// identifiers used in model files and on the command line.
enum class MetricId { gower, bhattacharyya, city_block, soergel, euclidean };

std::string_view metric_name(MetricId metric);
std::optional<MetricId> try_metric_from_name(std::string_view name);
MetricId metric_from_name(std::string_view name);  // throws on unknown names

/// Per-dimension ranges for the Gower distance. All entries must be > 0.
struct RangeVector {
  std::vector<double> values;

  bool operator==(const RangeVector&) const = default;
};

// sqrt(sum |a_i - b_i|^2)
double euclidean(std::span<const double> a, std::span<const double> b);

// (1/N) * sum |a_i - b_i| / r_i
double gower(std::span<const double> a, std::span<const double> b,
             const RangeVector& r);

// -ln sum sqrt(a'_i * b'_i), where each vector is first divided by its own
// L1 mass so identical inputs give distance 0. Disjoint support yields
// +infinity, which compares greater than any finite threshold.
double bhattacharyya(std::span<const double> a, std::span<const double> b);

// sum |a_i - b_i|
double city_block(std::span<const double> a, std::span<const double> b);

// sum |a_i - b_i| / sum max(a_i, b_i)
double soergel(std::span<const double> a, std::span<const double> b);

// Dispatch by id. `r` must be supplied exactly when metric == gower.
double distance(MetricId metric, std::span<const double> a,
                std::span<const double> b, const RangeVector* r = nullptr);

}  // namespace skinseg
