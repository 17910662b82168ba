#include "sgbot/registration/nn_index.hpp"

#include "sgbot/core/error.hpp"

namespace sgbot {

NearestIndex::NearestIndex(std::span<const Vec3> target, std::size_t brute_force_limit)
    : points_(target.begin(), target.end()) {
  if (points_.empty()) throw Error(ErrorCode::kEmptyCloud, "nearest-neighbor index over empty cloud");
  if (points_.size() > brute_force_limit) {
    tree_ = std::make_unique<KdTree>(points_);
  } else {
    soa_ = simd::PointsSoA::from(points_);
  }
}

void NearestIndex::query(std::span<const Vec3> queries, std::span<simd::Nearest> out) const {
  if (tree_) {
    for (std::size_t k = 0; k < queries.size(); ++k) out[k] = tree_->nearest(queries[k]);
  } else {
    simd::nearest_neighbors(soa_, queries, out);
  }
}

}  // namespace sgbot
