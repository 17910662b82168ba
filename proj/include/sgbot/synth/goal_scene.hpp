#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sgbot/core/scene_graph.hpp"
#include "sgbot/graph/grounding.hpp"
#include "sgbot/synth/layout.hpp"
#include "sgbot/synth/shape_prior.hpp"

namespace sgbot {

struct GoalObject {
  int id = 0;
  PointCloud cloud;
  Box3 box;
  int source_id = 0;
  std::optional<int> support_id;  // object this one stands on, if stacked
};

/// Synthesized goal: one entry per object, ascending id.
struct GoalScene {
  std::vector<GoalObject> objects;

  const GoalObject* find(int id) const;
  std::vector<int> ids() const;
};

/// Re-poses each prior's shape into its goal box: rotated about z by
/// (goal yaw - prior yaw) so the observed principal box lands exactly on the
/// goal box. Throws KeyMismatch when the id sets differ.
GoalScene instantiate_goal_scene(const Layout& layout, const std::map<int, ShapePrior>& priors);

/// Priors from the scene objects named by the graph, layout on the scene's
/// table, then instantiation. Throws MissingPrior for a node the scene lacks.
GoalScene synthesize_goal(const SceneState& scene, const SceneGraph& graph, std::uint64_t seed,
                          const CategoryVocabulary& vocab = CategoryVocabulary::standard(),
                          const LayoutParams& params = {});

struct EdgeCheck {
  GraphEdge edge;
  bool holds = false;
  RelationSet grounded;
};

struct LayoutReport {
  std::vector<EdgeCheck> edges;
  bool all_true() const;
};

LayoutReport verify_layout(const GoalScene& goal, const SceneGraph& graph, const GroundingParams& params = {});

}  // namespace sgbot
