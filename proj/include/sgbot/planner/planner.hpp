#pragma once

#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "sgbot/ingest/scene.hpp"
#include "sgbot/registration/icp.hpp"
#include "sgbot/synth/goal_scene.hpp"

namespace sgbot {

enum class ActionKind { kMoveToGoal, kMoveToBuffer };
enum class PlanStatus { kComplete, kDeadlock, kStepLimit };

std::string_view to_string(ActionKind k);
std::string_view to_string(PlanStatus s);
ActionKind parse_action_kind(std::string_view s);
PlanStatus parse_plan_status(std::string_view s);

struct Action {
  int object_id = 0;
  ActionKind kind = ActionKind::kMoveToGoal;
  RigidTransform transform;  // applied to the object's cloud in the table frame
  double clearance = 0.0;    // occupancy distance of the goal region before the move
};

struct SceneSnapshot {
  std::map<int, Box3> boxes;
};

struct Plan {
  std::vector<Action> actions;
  std::vector<SceneSnapshot> snapshots;  // scene after each action
  PlanStatus status = PlanStatus::kComplete;
};

struct PlannerConfig {
  double sigma = 0.01;             // occupancy threshold (m)
  double buffer_clearance = 0.03;  // free space around a parked object (m)
  int buffer_angle_steps = 360;    // candidate parking poses along the table edge
  double converged_translation = 0.01;
  double converged_rotation = 0.05;
  bool remove_obstacles = false;
  IcpConfig icp;
};

/// Smallest distance from any goal-cloud point to any point of a scene object
/// other than `exclude`; +inf when there is none.
double occupancy_distance(const PointCloud& goal_cloud, const SceneState& scene, int exclude);

/// Round-by-round planner state. Registrations are cached per object and
/// recomputed only after that object moves.
class Planner {
 public:
  Planner(SceneState scene, GoalScene goal, PlannerConfig cfg = {});

  /// Marks objects already at their goal as placed, then picks the next move.
  /// Returns nullopt when nothing more can be placed. Throws BufferExhausted
  /// when every blocked object needs parking and no edge pose is free.
  std::optional<Action> select_next_action();
  /// Moves the object and records it as placed or parked.
  void apply(const Action& action);

  const SceneState& scene() const noexcept { return scene_; }
  const GoalScene& goal() const noexcept { return goal_; }
  const std::set<int>& placed() const noexcept { return placed_; }
  const std::set<int>& failed() const noexcept { return failed_; }
  bool done() const { return placed_.size() == goal_.objects.size(); }

 private:
  struct Candidate {
    int id = 0;
    RigidTransform transform;
    double clearance = 0.0;
  };

  const RegistrationResult* registration(int id);
  bool converged(int id, const RegistrationResult& reg);
  double clearance(int id, const RigidTransform& t) const;
  std::optional<RigidTransform> buffer_pose(int id) const;

  SceneState scene_;
  GoalScene goal_;
  PlannerConfig cfg_;
  std::set<int> placed_;
  std::set<int> parked_;
  std::set<int> failed_;
  std::map<int, RegistrationResult> cache_;
};

/// Runs the planner to completion, deadlock, or 3N actions (N = goal objects).
/// Registration failures for one object leave it unplaced and end in deadlock.
std::pair<SceneState, Plan> execute_plan(const SceneState& initial, const GoalScene& goal,
                                         const PlannerConfig& cfg = {});

/// Moves one object's cloud and recomputes its box.
void apply_action(SceneState& scene, const Action& action);

SceneSnapshot snapshot(const SceneState& scene);

}  // namespace sgbot
