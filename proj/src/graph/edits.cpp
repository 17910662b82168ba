#include "sgbot/graph/edits.hpp"

#include <algorithm>

#include "sgbot/core/error.hpp"

namespace sgbot {
namespace {

struct Applier {
  std::vector<GraphNode>& nodes;
  std::vector<GraphEdge>& edges;
  std::size_t index;

  bool has(int id) const {
    return std::any_of(nodes.begin(), nodes.end(), [id](const GraphNode& n) { return n.id == id; });
  }

  void require(int id) const {
    if (!has(id)) throw Error(ErrorCode::kUnknownReference, "no node " + std::to_string(id), index);
  }

  void operator()(const AddEdge& e) {
    require(e.from);
    require(e.to);
    if (e.from == e.to) {
      throw Error(ErrorCode::kInvariantViolation, "self-edge on node " + std::to_string(e.from), index);
    }
    const GraphEdge edge{e.from, e.to, e.relation};
    if (std::find(edges.begin(), edges.end(), edge) != edges.end()) {
      throw Error(ErrorCode::kInvariantViolation, "duplicate edge", index);
    }
    edges.push_back(edge);
  }

  void operator()(const RemoveEdge& e) {
    const GraphEdge edge{e.from, e.to, e.relation};
    auto it = std::find(edges.begin(), edges.end(), edge);
    if (it == edges.end()) throw Error(ErrorCode::kUnknownReference, "no such edge", index);
    edges.erase(it);
  }

  void operator()(const RemoveNode& e) {
    require(e.id);
    std::erase_if(nodes, [&](const GraphNode& n) { return n.id == e.id; });
    std::erase_if(edges, [&](const GraphEdge& g) { return g.from == e.id || g.to == e.id; });
  }

  void operator()(const SetCategory& e) {
    require(e.id);
    if (e.category.empty()) throw Error(ErrorCode::kInvariantViolation, "empty category", index);
    for (auto& n : nodes) {
      if (n.id == e.id) n.category = e.category;
    }
  }
};

}  // namespace

SceneGraph apply_edits(const SceneGraph& graph, std::span<const GraphEdit> edits) {
  std::vector<GraphNode> nodes = graph.nodes();
  std::vector<GraphEdge> edges = graph.edges();
  for (std::size_t i = 0; i < edits.size(); ++i) {
    std::visit(Applier{nodes, edges, i}, edits[i]);
  }
  return SceneGraph(std::move(nodes), std::move(edges));
}

}  // namespace sgbot
