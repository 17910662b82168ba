#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sgbot/graph/edits.hpp"
#include "sgbot/planner/planner.hpp"
#include "sgbot/service/config.hpp"
#include "sgbot/synth/goal_scene.hpp"

namespace sgbot {

struct Session {
  std::string id;
  SceneState scene;
  SceneGraph graph;
  std::optional<GoalScene> goal;
  std::optional<Plan> plan;
  std::size_t cursor = 0;  // plan actions already applied to the scene
  std::uint64_t revision = 1;

  bool complete() const;
};

/// {"session_id", "revision", "scene", "graph", "goal" | null, "plan" | null, "cursor", "complete"}
nlohmann::json session_to_json(const Session& s);

/// Commonsense graph for the scene, or an empty graph when nothing is placeable.
SceneGraph initial_graph(const SceneState& scene);

// Mutations on a working copy. Each leaves the session untouched on error.
void replace_graph(Session& s, SceneGraph graph);
void edit_graph(Session& s, std::span<const GraphEdit> edits);
const GoalScene& synthesize(Session& s, std::uint64_t seed, const ServiceConfig& cfg);
const Plan& make_plan(Session& s, double sigma, const ServiceConfig& cfg);
const Action& step(Session& s);

struct SessionNotFound : std::runtime_error {
  explicit SessionNotFound(const std::string& id) : std::runtime_error("unknown session '" + id + "'") {}
};

struct RevisionConflict : std::runtime_error {
  RevisionConflict(std::uint64_t expected, std::uint64_t actual)
      : std::runtime_error("expected revision " + std::to_string(expected) + ", session is at " + std::to_string(actual)),
        expected(expected),
        actual(actual) {}
  std::uint64_t expected;
  std::uint64_t actual;
};

/// In-memory sessions. Mutations of one session are serialized and readers
/// share access; different sessions never contend beyond the id lookup.
class SessionStore {
 public:
  Session create(SceneState scene, std::optional<SceneGraph> graph = std::nullopt);
  Session get(const std::string& id) const;
  /// Runs `fn` on a copy, then commits it with the next revision. Throws
  /// RevisionConflict when `expected` is set and differs from the current one.
  Session mutate(const std::string& id, std::optional<std::uint64_t> expected, const std::function<void(Session&)>& fn);
  std::size_t size() const;

 private:
  struct Entry {
    mutable std::shared_mutex mutex;
    Session session;
  };
  std::shared_ptr<Entry> entry(const std::string& id) const;

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace sgbot
