#include "skinseg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace skinseg {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("metrics: vector length mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

double l1_mass(std::span<const double> v, const char* side) {
  double mass = 0.0;
  for (const double x : v) {
    if (x < 0.0) {
      throw std::invalid_argument(
          std::string("bhattacharyya: negative entry in ") + side + " vector");
    }
    mass += x;
  }
  if (mass <= 0.0) {
    throw std::invalid_argument(std::string("bhattacharyya: ") + side +
                                " vector has zero mass");
  }
  return mass;
}

}  // namespace

std::string_view metric_name(MetricId metric) {
  switch (metric) {
    case MetricId::gower: return "gower";
    case MetricId::bhattacharyya: return "bhattacharyya";
    case MetricId::city_block: return "city_block";
    case MetricId::soergel: return "soergel";
    case MetricId::euclidean: return "euclidean";
  }
  throw std::logic_error("metrics: invalid MetricId");
}

std::optional<MetricId> try_metric_from_name(std::string_view name) {
  for (const MetricId m : {MetricId::gower, MetricId::bhattacharyya,
                           MetricId::city_block, MetricId::soergel,
                           MetricId::euclidean}) {
    if (name == metric_name(m)) return m;
  }
  return std::nullopt;
}

MetricId metric_from_name(std::string_view name) {
  const auto m = try_metric_from_name(name);
  if (!m) {
    throw std::invalid_argument("unknown metric name '" + std::string(name) +
                                "' (expected gower, bhattacharyya, city_block, "
                                "soergel or euclidean)");
  }
  return *m;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double gower(std::span<const double> a, std::span<const double> b,
             const RangeVector& r) {
  check_lengths(a, b);
  if (r.values.size() != a.size()) {
    throw std::invalid_argument("gower: range vector length " +
                                std::to_string(r.values.size()) +
                                " does not match vectors of length " +
                                std::to_string(a.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(r.values[i] > 0.0)) {
      throw std::invalid_argument("gower: non-positive range entry at dimension " +
                                  std::to_string(i));
    }
    sum += std::abs(a[i] - b[i]) / r.values[i];
  }
  return sum / static_cast<double>(a.size());
}

double bhattacharyya(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  const double mass_a = l1_mass(a, "first");
  const double mass_b = l1_mass(b, "second");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::sqrt((a[i] / mass_a) * (b[i] / mass_b));
  }
  // sum == 0 (disjoint support) gives -log(0) == +infinity. Rounding can
  // nudge sum past 1 for near-identical inputs, so clamp: the distance is
  // never negative (and never -0.0).
  return std::max(0.0, -std::log(sum));
}

double city_block(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::abs(a[i] - b[i]);
  }
  return sum;
}

double soergel(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::abs(a[i] - b[i]);
    den += std::max(a[i], b[i]);
  }
  if (den <= 0.0) {
    throw std::invalid_argument(
        "soergel: undefined for two all-zero vectors (denominator 0)");
  }
  return num / den;
}

double distance(MetricId metric, std::span<const double> a,
                std::span<const double> b, const RangeVector* r) {
  if (metric == MetricId::gower) {
    if (r == nullptr) {
      throw std::invalid_argument("distance: gower requires a range vector");
    }
    return gower(a, b, *r);
  }
  if (r != nullptr) {
    throw std::invalid_argument(
        "distance: range vector is only valid with the gower metric");
  }
  switch (metric) {
    case MetricId::bhattacharyya: return bhattacharyya(a, b);
    case MetricId::city_block: return city_block(a, b);
    case MetricId::soergel: return soergel(a, b);
    case MetricId::euclidean: return euclidean(a, b);
    case MetricId::gower: break;
  }
  throw std::logic_error("distance: invalid MetricId");
}

}  // namespace skinseg
