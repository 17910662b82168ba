#include <atomic>
#include <cstdlib>
#include <string>

#include "sgbot/core/error.hpp"
#include "sgbot/simd/kernels.hpp"

namespace sgbot::simd {
namespace {

Isa detect() {
  if (const char* env = std::getenv("SGBOT_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Isa::kScalar;
    if (v == "avx2" && is_supported(Isa::kAvx2)) return Isa::kAvx2;
  }
  return is_supported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "?";
}

bool is_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return true;
    case Isa::kAvx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!is_supported(isa)) {
    throw Error(ErrorCode::kInvalidArgument, std::string("ISA not supported: ") + std::string(to_string(isa)));
  }
  current().store(isa, std::memory_order_relaxed);
}

void nearest_neighbors(const PointsSoA& target, std::span<const Vec3> queries, std::span<Nearest> out) {
  if (target.empty()) throw Error(ErrorCode::kEmptyCloud, "nearest_neighbors: empty target");
  if (out.size() < queries.size()) throw Error(ErrorCode::kInvalidArgument, "nearest_neighbors: output too small");
  if (active_isa() == Isa::kAvx2) {
    avx2::nearest_neighbors(target, queries, out);
  } else {
    scalar::nearest_neighbors(target, queries, out);
  }
}

double min_squared_distance(const PointsSoA& target, std::span<const Vec3> queries) {
  return active_isa() == Isa::kAvx2 ? avx2::min_squared_distance(target, queries)
                                    : scalar::min_squared_distance(target, queries);
}

}  // namespace sgbot::simd
