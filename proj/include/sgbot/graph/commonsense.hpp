#pragma once

#include <span>
#include <vector>

#include "sgbot/core/scene_graph.hpp"
#include "sgbot/graph/vocabulary.hpp"
#include "sgbot/ingest/scene.hpp"

namespace sgbot {

/// True for objects already flagged or whose category the vocabulary does not know.
bool is_obstacle(const ObjectInstance& obj, const CategoryVocabulary& vocab);

/// Sets is_obstacle on every object the vocabulary classifies as an obstacle.
void mark_obstacles(SceneState& scene, const CategoryVocabulary& vocab);

/// Goal graph from the tabletop rules. Obstacles are dropped; every
/// non-primary node gets at most one outgoing edge, and exactly one whenever
/// an anchor (plate, bowl or cup) is present. Throws NoPlaceableObjects when
/// nothing remains after obstacle removal.
SceneGraph build_commonsense_graph(std::span<const ObjectInstance> objects, const CategoryVocabulary& vocab);

}  // namespace sgbot
