#pragma once

#include <memory>
#include <span>

#include "sgbot/core/geometry.hpp"
#include "sgbot/registration/kdtree.hpp"
#include "sgbot/simd/kernels.hpp"

namespace sgbot {

/// Exact nearest-neighbor index over a fixed target cloud. Small targets are
/// scanned with the vectorized brute-force kernel; larger ones use a k-d tree.
/// Both paths return identical answers.
class NearestIndex {
 public:
  static constexpr std::size_t kDefaultBruteForceLimit = 2048;

  explicit NearestIndex(std::span<const Vec3> target, std::size_t brute_force_limit = kDefaultBruteForceLimit);

  void query(std::span<const Vec3> queries, std::span<simd::Nearest> out) const;
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<Vec3>& points() const noexcept { return points_; }
  bool uses_tree() const noexcept { return tree_ != nullptr; }

 private:
  std::vector<Vec3> points_;
  simd::PointsSoA soa_;
  std::unique_ptr<KdTree> tree_;
};

}  // namespace sgbot
