#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sgbot/core/error.hpp"
#include "sgbot/core/scene_graph.hpp"
#include "sgbot/graph/grounding.hpp"
#include "sgbot/graph/vocabulary.hpp"
#include "sgbot/synth/shape_prior.hpp"

namespace sgbot {

struct LayoutParams {
  double gap = 0.03;              // clearance between adjacent goal boxes (m)
  int ring_directions = 16;       // close_by candidate poses per ring
  int max_separation_rounds = 100;
  GroundingParams grounding;
};

struct Layout {
  std::map<int, Box3> boxes;
  std::map<int, int> supporter;   // stacked object id -> supporting object id
};

/// LayoutInfeasible, with the graph edges involved when known.
class LayoutInfeasibleError : public Error {
 public:
  LayoutInfeasibleError(const std::string& detail, std::vector<GraphEdge> edges)
      : Error(ErrorCode::kLayoutInfeasible, detail), edges_(std::move(edges)) {}
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }

 private:
  std::vector<GraphEdge> edges_;
};

/// Deterministic goal boxes satisfying every graph edge under ground_relation.
///
/// The anchor (plate, else bowl, else cup, else the largest footprint) sits at
/// the table origin with yaw 0. Directional edges place the source beside the
/// target at half-size sum + gap when that spot is free, otherwise at the
/// nearest free spot (5 mm grid) where the edge's axis still dominates,
/// preferring spots on the table. close_by sources take the first free pose on a
/// ring around the target, clockwise from +x, starting at an offset set by
/// `seed`. standing_on sources sit concentric on the supporter's top.
/// Cutlery is turned to yaw pi/2, everything else keeps its observed yaw.
/// Components not connected to the anchor start at the free spot nearest the
/// table center, on a 1 cm grid.
///
/// Throws MissingPrior for nodes without a prior, and LayoutInfeasible for
/// contradictory constraints or when overlaps persist after the separation
/// rounds.
Layout solve_layout(const SceneGraph& graph, const std::map<int, ShapePrior>& priors, const Box3& table,
                    std::uint64_t seed, const CategoryVocabulary& vocab = CategoryVocabulary::standard(),
                    const LayoutParams& params = {});

}  // namespace sgbot
