#pragma once

#include <cstdint>
#include <span>

#include "sgbot/core/scene_graph.hpp"
#include "sgbot/ingest/scene.hpp"
#include "sgbot/sim/templates.hpp"

namespace sgbot {

struct ObjectCounts {
  int min = 2;
  int max = 8;
};

struct ScenePair {
  SceneState initial;
  SceneState goal_truth;
  SceneGraph graph_truth;
  std::uint64_t seed = 0;
};

/// Seeded random tabletop scene and its commonsense goal. Objects get ids
/// 1..N, random yaw, and positions whose box hulls keep at least 1 cm apart.
/// Throws PlacementFailure when an object finds no free spot in 1000 tries.
ScenePair generate_scene_pair(std::uint64_t seed, std::span<const ObjectTemplate> object_db,
                              ObjectCounts counts = {}, const Box3& table = SceneState{}.table);

}  // namespace sgbot
