#pragma once

#include <span>
#include <vector>

#include "sgbot/core/geometry.hpp"
#include "sgbot/simd/kernels.hpp"

namespace sgbot {

/// Static 3-d tree for exact nearest-neighbor queries. Equal distances
/// resolve to the lowest point index, matching the brute-force kernels.
class KdTree {
 public:
  explicit KdTree(std::span<const Vec3> points, int leaf_size = 12);

  simd::Nearest nearest(const Vec3& query) const;
  std::size_t size() const noexcept { return points_.size(); }

 private:
  struct Node {
    int begin = 0, end = 0;
    int left = -1, right = -1;
    Vec3 lo, hi;
  };

  int build(int begin, int end, int leaf_size);
  void search(int node, const Vec3& q, simd::Nearest& best) const;

  std::vector<Vec3> points_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace sgbot
