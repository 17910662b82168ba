#include "sgbot/core/scene_graph.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "sgbot/core/error.hpp"

namespace sgbot {

std::string_view to_string(RelationLabel r) {
  switch (r) {
    case RelationLabel::kLeft: return "left";
    case RelationLabel::kRight: return "right";
    case RelationLabel::kFront: return "front";
    case RelationLabel::kBehind: return "behind";
    case RelationLabel::kStandingOn: return "standing_on";
    case RelationLabel::kCloseBy: return "close_by";
  }
  return "?";
}

std::optional<RelationLabel> parse_relation(std::string_view s) {
  for (RelationLabel r : kAllRelations) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::optional<RelationLabel> inverse(RelationLabel r) {
  switch (r) {
    case RelationLabel::kLeft: return RelationLabel::kRight;
    case RelationLabel::kRight: return RelationLabel::kLeft;
    case RelationLabel::kFront: return RelationLabel::kBehind;
    case RelationLabel::kBehind: return RelationLabel::kFront;
    case RelationLabel::kCloseBy: return RelationLabel::kCloseBy;
    case RelationLabel::kStandingOn: return std::nullopt;
  }
  return std::nullopt;
}

bool is_directional(RelationLabel r) {
  return r == RelationLabel::kLeft || r == RelationLabel::kRight || r == RelationLabel::kFront ||
         r == RelationLabel::kBehind;
}

SceneGraph::SceneGraph(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  if (auto problem = check(nodes_, edges_); !problem.empty()) {
    throw Error(ErrorCode::kInvariantViolation, problem);
  }
}

bool SceneGraph::has_node(int id) const { return find_node(id) != nullptr; }

const GraphNode* SceneGraph::find_node(int id) const {
  auto it = std::find_if(nodes_.begin(), nodes_.end(), [id](const GraphNode& n) { return n.id == id; });
  return it == nodes_.end() ? nullptr : &*it;
}

bool SceneGraph::has_edge(const GraphEdge& e) const {
  return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
}

std::vector<GraphEdge> SceneGraph::outgoing(int id) const {
  std::vector<GraphEdge> out;
  for (const GraphEdge& e : edges_) {
    if (e.from == id) out.push_back(e);
  }
  return out;
}

std::string SceneGraph::check(const std::vector<GraphNode>& nodes, const std::vector<GraphEdge>& edges) {
  std::set<int> ids;
  for (const GraphNode& n : nodes) {
    if (!ids.insert(n.id).second) return "duplicate node id " + std::to_string(n.id);
  }
  std::set<std::tuple<int, int, int>> seen;
  for (const GraphEdge& e : edges) {
    const std::string label = std::to_string(e.from) + "->" + std::to_string(e.to) + " " +
                              std::string(to_string(e.relation));
    if (e.from == e.to) return "self-edge " + label;
    if (!ids.contains(e.from) || !ids.contains(e.to)) return "edge endpoint missing for " + label;
    if (!seen.insert({e.from, e.to, static_cast<int>(e.relation)}).second) {
      return "duplicate edge " + label;
    }
  }
  return {};
}

}  // namespace sgbot
