#include "sgbot/registration/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "sgbot/core/error.hpp"

namespace sgbot {

KdTree::KdTree(std::span<const Vec3> points, int leaf_size) : points_(points.begin(), points.end()) {
  if (points_.empty()) throw Error(ErrorCode::kEmptyCloud, "KdTree over empty point set");
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  nodes_.reserve(2 * points_.size() / std::max(1, leaf_size) + 1);
  build(0, static_cast<int>(points_.size()), std::max(1, leaf_size));
}

int KdTree::build(int begin, int end, int leaf_size) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{begin, end, -1, -1, Vec3::Constant(std::numeric_limits<double>::infinity()),
                        Vec3::Constant(-std::numeric_limits<double>::infinity())});
  Vec3 lo = nodes_[id].lo, hi = nodes_[id].hi;
  for (int i = begin; i < end; ++i) {
    lo = lo.cwiseMin(points_[order_[i]]);
    hi = hi.cwiseMax(points_[order_[i]]);
  }
  nodes_[id].lo = lo;
  nodes_[id].hi = hi;
  if (end - begin <= leaf_size) return id;

  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::size_t a, std::size_t b) {
                     const double pa = points_[a][axis], pb = points_[b][axis];
                     return pa < pb || (pa == pb && a < b);
                   });
  const int left = build(begin, mid, leaf_size);
  const int right = build(mid, end, leaf_size);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

namespace {

double box_sq_distance(const Vec3& q, const Vec3& lo, const Vec3& hi) {
  double d = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double e = q[a] < lo[a] ? lo[a] - q[a] : (q[a] > hi[a] ? q[a] - hi[a] : 0.0);
    d += e * e;
  }
  return d;
}

}  // namespace

void KdTree::search(int node_id, const Vec3& q, simd::Nearest& best) const {
  const Node& node = nodes_[node_id];
  if (node.left < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      const std::size_t idx = order_[i];
      const Vec3& t = points_[idx];
      const double dx = q.x() - t.x();
      const double dy = q.y() - t.y();
      const double dz = q.z() - t.z();
      const double d = (dx * dx + dy * dy) + dz * dz;
      if (d < best.sq_distance || (d == best.sq_distance && idx < best.index)) best = {idx, d};
    }
    return;
  }
  const Node& l = nodes_[node.left];
  const Node& r = nodes_[node.right];
  const double dl = box_sq_distance(q, l.lo, l.hi);
  const double dr = box_sq_distance(q, r.lo, r.hi);
  const int first = dl <= dr ? node.left : node.right;
  const int second = dl <= dr ? node.right : node.left;
  const double d_second = dl <= dr ? dr : dl;
  if (std::min(dl, dr) <= best.sq_distance) search(first, q, best);
  // Equal-distance subtrees are still visited so ties pick the lowest index.
  if (d_second <= best.sq_distance) search(second, q, best);
}

simd::Nearest KdTree::nearest(const Vec3& query) const {
  simd::Nearest best{std::numeric_limits<std::size_t>::max(), std::numeric_limits<double>::infinity()};
  search(0, query, best);
  return best;
}

}  // namespace sgbot
