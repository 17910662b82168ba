#pragma once

// Brute-force distance scans over small point sets. Every kernel has a scalar
// reference in `scalar::` and a vector variant per ISA; the dispatched entry
// points pick one at runtime. All variants return bit-identical results: the
// squared distance is always evaluated as (dx*dx + dy*dy) + dz*dz without
// contraction, and argmin ties resolve to the lowest target index.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sgbot/core/geometry.hpp"

namespace sgbot::simd {

struct PointsSoA {
  std::vector<double> x, y, z;

  static PointsSoA from(std::span<const Vec3> points);
  std::size_t size() const noexcept { return x.size(); }
  bool empty() const noexcept { return x.empty(); }
};

struct Nearest {
  std::size_t index = 0;
  double sq_distance = 0.0;
};

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);
bool is_supported(Isa isa);
/// Best supported ISA, unless overridden by set_isa() or SGBOT_SIMD=scalar|avx2.
Isa active_isa();
/// Throws InvalidArgument for an ISA the CPU lacks.
void set_isa(Isa isa);

/// out[k] = nearest target point to queries[k]. Target must be non-empty.
void nearest_neighbors(const PointsSoA& target, std::span<const Vec3> queries, std::span<Nearest> out);
/// min over all (query, target) pairs; +inf if either side is empty.
double min_squared_distance(const PointsSoA& target, std::span<const Vec3> queries);

namespace scalar {
void nearest_neighbors(const PointsSoA& target, std::span<const Vec3> queries, std::span<Nearest> out);
double min_squared_distance(const PointsSoA& target, std::span<const Vec3> queries);
}  // namespace scalar

namespace avx2 {
void nearest_neighbors(const PointsSoA& target, std::span<const Vec3> queries, std::span<Nearest> out);
double min_squared_distance(const PointsSoA& target, std::span<const Vec3> queries);
}  // namespace avx2

}  // namespace sgbot::simd
