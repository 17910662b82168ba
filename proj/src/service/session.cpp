#include "sgbot/service/session.hpp"

#include "sgbot/core/error.hpp"
#include "sgbot/graph/commonsense.hpp"
#include "sgbot/ingest/scene_io.hpp"
#include "sgbot/service/json_codec.hpp"

namespace sgbot {

using nlohmann::json;

namespace {

void check_graph_against_scene(const SceneGraph& graph, const SceneState& scene) {
  for (const auto& n : graph.nodes()) {
    if (!scene.find(n.id)) throw Error(ErrorCode::kUnknownReference, "graph node " + std::to_string(n.id) + " is not in the scene");
  }
}

void invalidate(Session& s) {
  s.goal.reset();
  s.plan.reset();
  s.cursor = 0;
}

}  // namespace

bool Session::complete() const {
  return plan && plan->status == PlanStatus::kComplete && cursor == plan->actions.size();
}

json session_to_json(const Session& s) {
  return json{{"session_id", s.id},
              {"revision", s.revision},
              {"scene", scene_to_json(s.scene)},
              {"graph", graph_to_json(s.graph)},
              {"goal", s.goal ? goal_to_json(*s.goal) : json(nullptr)},
              {"plan", s.plan ? plan_to_json(*s.plan) : json(nullptr)},
              {"cursor", s.cursor},
              {"complete", s.complete()}};
}

SceneGraph initial_graph(const SceneState& scene) {
  SceneState marked = scene;
  const CategoryVocabulary vocab = CategoryVocabulary::standard();
  mark_obstacles(marked, vocab);
  try {
    return build_commonsense_graph(marked.objects, vocab);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoPlaceableObjects) throw;
    return SceneGraph{};
  }
}

void replace_graph(Session& s, SceneGraph graph) {
  check_graph_against_scene(graph, s.scene);
  s.graph = std::move(graph);
  invalidate(s);
}

void edit_graph(Session& s, std::span<const GraphEdit> edits) {
  s.graph = apply_edits(s.graph, edits);
  invalidate(s);
}

const GoalScene& synthesize(Session& s, std::uint64_t seed, const ServiceConfig& cfg) {
  LayoutParams params;
  params.grounding = cfg.grounding;
  GoalScene goal = synthesize_goal(s.scene, s.graph, seed, CategoryVocabulary::standard(), params);
  invalidate(s);
  s.goal = std::move(goal);
  return *s.goal;
}

const Plan& make_plan(Session& s, double sigma, const ServiceConfig& cfg) {
  if (!s.goal) throw Error(ErrorCode::kInvalidArgument, "session has no goal; synthesize one first");
  PlannerConfig pc;
  pc.sigma = sigma;
  pc.icp = cfg.icp;
  auto result = execute_plan(s.scene, *s.goal, pc);
  s.plan = std::move(result.second);
  s.cursor = 0;
  return *s.plan;
}

const Action& step(Session& s) {
  if (!s.plan) throw Error(ErrorCode::kInvalidArgument, "session has no plan");
  if (s.cursor >= s.plan->actions.size()) throw Error(ErrorCode::kInvalidArgument, "plan has no remaining actions");
  const Action& a = s.plan->actions[s.cursor];
  apply_action(s.scene, a);
  ++s.cursor;
  return a;
}

Session SessionStore::create(SceneState scene, std::optional<SceneGraph> graph) {
  if (const std::string why = check_scene(scene); !why.empty()) throw Error(ErrorCode::kSchemaError, why);
  auto e = std::make_shared<Entry>();
  e->session.graph = graph ? std::move(*graph) : initial_graph(scene);
  check_graph_against_scene(e->session.graph, scene);
  e->session.scene = std::move(scene);
  std::lock_guard lock(mutex_);
  e->session.id = "s" + std::to_string(next_id_++);
  sessions_.emplace(e->session.id, e);
  return e->session;
}

std::shared_ptr<SessionStore::Entry> SessionStore::entry(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionNotFound(id);
  return it->second;
}

Session SessionStore::get(const std::string& id) const {
  auto e = entry(id);
  std::shared_lock lock(e->mutex);
  return e->session;
}

Session SessionStore::mutate(const std::string& id, std::optional<std::uint64_t> expected,
                             const std::function<void(Session&)>& fn) {
  auto e = entry(id);
  std::unique_lock lock(e->mutex);
  if (expected && *expected != e->session.revision) throw RevisionConflict(*expected, e->session.revision);
  Session work = e->session;
  fn(work);
  work.revision = e->session.revision + 1;
  e->session = std::move(work);
  return e->session;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

}  // namespace sgbot
