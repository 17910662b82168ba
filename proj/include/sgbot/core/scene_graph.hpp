#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sgbot {

enum class RelationLabel { kLeft, kRight, kFront, kBehind, kStandingOn, kCloseBy };

inline constexpr std::array<RelationLabel, 6> kAllRelations = {
    RelationLabel::kLeft,   RelationLabel::kRight,      RelationLabel::kFront,
    RelationLabel::kBehind, RelationLabel::kStandingOn, RelationLabel::kCloseBy};

std::string_view to_string(RelationLabel r);
std::optional<RelationLabel> parse_relation(std::string_view s);
/// Label of (j, i) given the label of (i, j). standing_on has no inverse.
std::optional<RelationLabel> inverse(RelationLabel r);
bool is_directional(RelationLabel r);

struct GraphNode {
  int id = 0;
  std::string category;
  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  int from = 0;
  int to = 0;
  RelationLabel relation = RelationLabel::kLeft;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Directed labeled graph over object ids.
class SceneGraph {
 public:
  SceneGraph() = default;
  /// Throws InvariantViolation when the inputs break a graph invariant.
  SceneGraph(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges);

  const std::vector<GraphNode>& nodes() const noexcept { return nodes_; }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }

  bool has_node(int id) const;
  const GraphNode* find_node(int id) const;
  bool has_edge(const GraphEdge& e) const;
  std::vector<GraphEdge> outgoing(int id) const;

  /// Empty string when valid, else a description of the first violation.
  static std::string check(const std::vector<GraphNode>& nodes, const std::vector<GraphEdge>& edges);

  friend bool operator==(const SceneGraph&, const SceneGraph&) = default;

 private:
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
};

}  // namespace sgbot
