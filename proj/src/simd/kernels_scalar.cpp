#include <limits>

#include "sgbot/simd/kernels.hpp"

namespace sgbot::simd {

PointsSoA PointsSoA::from(std::span<const Vec3> points) {
  PointsSoA soa;
  soa.x.reserve(points.size());
  soa.y.reserve(points.size());
  soa.z.reserve(points.size());
  for (const Vec3& p : points) {
    soa.x.push_back(p.x());
    soa.y.push_back(p.y());
    soa.z.push_back(p.z());
  }
  return soa;
}

namespace scalar {

void nearest_neighbors(const PointsSoA& target, std::span<const Vec3> queries, std::span<Nearest> out) {
  const std::size_t n = target.size();
  for (std::size_t k = 0; k < queries.size(); ++k) {
    const double qx = queries[k].x(), qy = queries[k].y(), qz = queries[k].z();
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = qx - target.x[i];
      const double dy = qy - target.y[i];
      const double dz = qz - target.z[i];
      const double d = (dx * dx + dy * dy) + dz * dz;
      if (d < best) {
        best = d;
        best_index = i;
      }
    }
    out[k] = {best_index, best};
  }
}

double min_squared_distance(const PointsSoA& target, std::span<const Vec3> queries) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = target.size();
  for (const Vec3& q : queries) {
    const double qx = q.x(), qy = q.y(), qz = q.z();
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = qx - target.x[i];
      const double dy = qy - target.y[i];
      const double dz = qz - target.z[i];
      const double d = (dx * dx + dy * dy) + dz * dz;
      if (d < best) best = d;
    }
  }
  return best;
}

}  // namespace scalar
}  // namespace sgbot::simd
