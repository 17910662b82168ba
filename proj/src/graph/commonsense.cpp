#include "sgbot/graph/commonsense.hpp"

#include <algorithm>
#include <optional>

#include "sgbot/core/error.hpp"

namespace sgbot {
namespace {

std::optional<int> first_of(const std::vector<GraphNode>& nodes, std::string_view category) {
  for (const auto& n : nodes) {
    if (n.category == category) return n.id;
  }
  return std::nullopt;
}

}  // namespace

bool is_obstacle(const ObjectInstance& obj, const CategoryVocabulary& vocab) {
  return obj.is_obstacle || vocab.role(obj.category) == CategoryRole::kObstacle;
}

void mark_obstacles(SceneState& scene, const CategoryVocabulary& vocab) {
  for (auto& o : scene.objects) o.is_obstacle = is_obstacle(o, vocab);
}

SceneGraph build_commonsense_graph(std::span<const ObjectInstance> objects, const CategoryVocabulary& vocab) {
  std::vector<GraphNode> nodes;
  for (const auto& o : objects) {
    if (!is_obstacle(o, vocab)) nodes.push_back({o.id, o.category});
  }
  if (nodes.empty()) {
    throw Error(ErrorCode::kNoPlaceableObjects, "every object is an obstacle");
  }
  std::sort(nodes.begin(), nodes.end(), [](const GraphNode& a, const GraphNode& b) { return a.id < b.id; });

  // Primary anchor: best rank, then lowest id.
  std::optional<int> primary;
  int primary_rank = 0;
  for (const auto& n : nodes) {
    auto rank = vocab.anchor_rank(n.category);
    if (rank && (!primary || *rank < primary_rank)) {
      primary = n.id;
      primary_rank = *rank;
    }
  }
  const auto plate = first_of(nodes, "plate");
  const auto bowl = first_of(nodes, "bowl");
  const auto cup = first_of(nodes, "cup");

  std::vector<GraphEdge> edges;
  if (!primary) return SceneGraph(std::move(nodes), std::move(edges));

  for (const auto& n : nodes) {
    if (n.id == *primary) continue;
    switch (vocab.role(n.category)) {
      case CategoryRole::kAnchor:
        edges.push_back({n.id, *primary, RelationLabel::kCloseBy});
        break;
      case CategoryRole::kCutlery:
        if (n.category == "fork") {
          edges.push_back({n.id, *primary, RelationLabel::kLeft});
        } else if (n.category == "knife") {
          edges.push_back({n.id, *primary, RelationLabel::kRight});
        } else if (plate) {
          edges.push_back({n.id, *plate, RelationLabel::kFront});
        } else {
          edges.push_back({n.id, bowl ? *bowl : *cup, RelationLabel::kCloseBy});
        }
        break;
      case CategoryRole::kOther:
        edges.push_back({n.id, *primary, RelationLabel::kFront});
        break;
      case CategoryRole::kObstacle:
        break;
    }
  }
  return SceneGraph(std::move(nodes), std::move(edges));
}

}  // namespace sgbot
