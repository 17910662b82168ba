#include "sgbot/synth/goal_scene.hpp"

#include <algorithm>

#include "sgbot/core/error.hpp"

namespace sgbot {

const GoalObject* GoalScene::find(int id) const {
  auto it = std::find_if(objects.begin(), objects.end(), [id](const GoalObject& o) { return o.id == id; });
  return it == objects.end() ? nullptr : &*it;
}

std::vector<int> GoalScene::ids() const {
  std::vector<int> out;
  for (const auto& o : objects) out.push_back(o.id);
  return out;
}

GoalScene instantiate_goal_scene(const Layout& layout, const std::map<int, ShapePrior>& priors) {
  for (const auto& [id, box] : layout.boxes) {
    if (!priors.contains(id)) throw Error(ErrorCode::kKeyMismatch, "layout id " + std::to_string(id) + " has no prior");
  }
  for (const auto& [id, prior] : priors) {
    if (!layout.boxes.contains(id)) {
      throw Error(ErrorCode::kKeyMismatch, "prior id " + std::to_string(id) + " has no goal box");
    }
  }
  GoalScene goal;
  for (const auto& [id, box] : layout.boxes) {
    const ShapePrior& prior = priors.at(id);
    const Mat3 r = rot_z(box.yaw - prior.yaw);
    GoalObject obj;
    obj.id = id;
    obj.box = box;
    obj.source_id = prior.source_id;
    if (auto it = layout.supporter.find(id); it != layout.supporter.end()) obj.support_id = it->second;
    obj.cloud.frame = Frame::kTable;
    obj.cloud.points.reserve(prior.centered.size());
    for (const Vec3& p : prior.centered.points) {
      obj.cloud.points.push_back(box.center + r * (p - prior.box_offset));
    }
    goal.objects.push_back(std::move(obj));
  }
  return goal;
}

GoalScene synthesize_goal(const SceneState& scene, const SceneGraph& graph, std::uint64_t seed,
                          const CategoryVocabulary& vocab, const LayoutParams& params) {
  std::map<int, ShapePrior> priors;
  for (const auto& node : graph.nodes()) {
    const ObjectInstance* obj = scene.find(node.id);
    if (!obj) throw Error(ErrorCode::kMissingPrior, "graph node " + std::to_string(node.id) + " has no scene object");
    priors.emplace(node.id, estimate_shape_prior(*obj));
  }
  return instantiate_goal_scene(solve_layout(graph, priors, scene.table, seed, vocab, params), priors);
}

bool LayoutReport::all_true() const {
  return std::all_of(edges.begin(), edges.end(), [](const EdgeCheck& c) { return c.holds; });
}

LayoutReport verify_layout(const GoalScene& goal, const SceneGraph& graph, const GroundingParams& params) {
  LayoutReport report;
  for (const auto& e : graph.edges()) {
    EdgeCheck check{e, false, {}};
    const GoalObject* from = goal.find(e.from);
    const GoalObject* to = goal.find(e.to);
    if (from && to) {
      check.grounded = ground_relation(from->box, to->box, params);
      check.holds = check.grounded.contains(e.relation);
    }
    report.edges.push_back(check);
  }
  return report;
}

}  // namespace sgbot
