#pragma once

#include <random>
#include <vector>

#include "sgbot/core/geometry.hpp"
#include "sgbot/ingest/scene.hpp"
#include "sgbot/sim/templates.hpp"

namespace sgbot::test {

inline PointCloud cube_corners(const Vec3& center = Vec3::Zero(), double half = 0.5) {
  PointCloud c;
  for (int i = 0; i < 8; ++i) {
    c.points.emplace_back(center.x() + ((i & 1) ? half : -half), center.y() + ((i & 2) ? half : -half),
                          center.z() + ((i & 4) ? half : -half));
  }
  return c;
}

/// Solid grid of points filling an axis-aligned box, bottom at `bottom_z`.
inline PointCloud block(const Vec3& center_xy, const Vec3& half, double bottom_z = 0.0, int n = 4) {
  PointCloud c;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) {
        c.points.emplace_back(center_xy.x() - half.x() + 2.0 * half.x() * i / n,
                              center_xy.y() - half.y() + 2.0 * half.y() * j / n, bottom_z + 2.0 * half.z() * k / n);
      }
    }
  }
  return c;
}

inline Mat3 random_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  return rot_z(u(rng)) * rot_y(u(rng)) * rot_x(u(rng));
}

inline Vec3 random_vec(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Vec3(u(rng), u(rng), u(rng));
}

inline PointCloud random_cloud(std::mt19937_64& rng, std::size_t n, double scale) {
  PointCloud c;
  for (std::size_t i = 0; i < n; ++i) c.points.push_back(random_vec(rng, scale));
  return c;
}

/// Template cloud moved to (x, y) on the table with yaw `yaw`.
inline ObjectInstance placed(int id, std::string_view category, double x, double y, double yaw = 0.0) {
  const ObjectTemplate* t = find_template(category);
  return make_object(id, std::string(category), apply_transform({rot_z(yaw), Vec3(x, y, 0.0)}, t->cloud));
}

}  // namespace sgbot::test
