#pragma once

#include <span>
#include <string>
#include <variant>

#include "sgbot/core/scene_graph.hpp"

namespace sgbot {

struct AddEdge {
  int from = 0, to = 0;
  RelationLabel relation = RelationLabel::kLeft;
};
struct RemoveEdge {
  int from = 0, to = 0;
  RelationLabel relation = RelationLabel::kLeft;
};
struct RemoveNode {
  int id = 0;
};
struct SetCategory {
  int id = 0;
  std::string category;
};

using GraphEdit = std::variant<AddEdge, RemoveEdge, RemoveNode, SetCategory>;

/// Applies edits in order, all or nothing. Errors carry the edit index:
/// UnknownReference for ids or edges that do not resolve, InvariantViolation
/// for self-edges and duplicates.
SceneGraph apply_edits(const SceneGraph& graph, std::span<const GraphEdit> edits);

}  // namespace sgbot
