#pragma once

#include <string>
#include <vector>

#include "sgbot/core/geometry.hpp"

namespace sgbot {

/// One segmented object in the table frame.
struct ObjectInstance {
  int id = 0;
  std::string category;
  PointCloud cloud;
  Box3 box;
  bool is_obstacle = false;
};

/// Builds an instance with its box derived from the cloud (principal axis).
ObjectInstance make_object(int id, std::string category, PointCloud cloud, bool is_obstacle = false);

struct SceneState {
  std::vector<ObjectInstance> objects;
  Box3 table{Vec3::Zero(), Vec3(0.8, 0.6, 0.01), 0.0};

  const ObjectInstance* find(int id) const;
  ObjectInstance* find(int id);
  std::vector<int> ids() const;
};

/// Empty when the scene satisfies its invariants, else the first violation.
std::string check_scene(const SceneState& scene);

}  // namespace sgbot
