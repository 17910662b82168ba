#include "sgbot/planner/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgbot/core/error.hpp"
#include "sgbot/simd/kernels.hpp"

namespace sgbot {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower bound on the distance between two clouds from their boxes' hulls.
double hull_gap(const Box3& a, const Box3& b) {
  const Vec3 ha = a.hull_half_extents();
  const Vec3 hb = b.hull_half_extents();
  double sq = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double g = std::abs(a.center[k] - b.center[k]) - ha[k] - hb[k];
    if (g > 0.0) sq += g * g;
  }
  return std::sqrt(sq);
}

Box3 translated(Box3 box, const Vec3& t) {
  box.center += t;
  return box;
}

}  // namespace

std::string_view to_string(ActionKind k) {
  return k == ActionKind::kMoveToGoal ? "move_to_goal" : "move_to_buffer";
}

std::string_view to_string(PlanStatus s) {
  switch (s) {
    case PlanStatus::kComplete: return "complete";
    case PlanStatus::kDeadlock: return "deadlock";
    case PlanStatus::kStepLimit: return "step_limit";
  }
  return "?";
}

ActionKind parse_action_kind(std::string_view s) {
  if (s == "move_to_goal") return ActionKind::kMoveToGoal;
  if (s == "move_to_buffer") return ActionKind::kMoveToBuffer;
  throw Error(ErrorCode::kSchemaError, "unknown action kind '" + std::string(s) + "'");
}

PlanStatus parse_plan_status(std::string_view s) {
  if (s == "complete") return PlanStatus::kComplete;
  if (s == "deadlock") return PlanStatus::kDeadlock;
  if (s == "step_limit") return PlanStatus::kStepLimit;
  throw Error(ErrorCode::kSchemaError, "unknown plan status '" + std::string(s) + "'");
}

double occupancy_distance(const PointCloud& goal_cloud, const SceneState& scene, int exclude) {
  if (goal_cloud.empty()) throw Error(ErrorCode::kEmptyCloud, "goal cloud is empty");
  double best = kInf;
  for (const auto& obj : scene.objects) {
    if (obj.id == exclude || obj.cloud.empty()) continue;
    const simd::PointsSoA soa = simd::PointsSoA::from(obj.cloud.points);
    best = std::min(best, simd::min_squared_distance(soa, goal_cloud.points));
  }
  return std::sqrt(best);
}

void apply_action(SceneState& scene, const Action& action) {
  ObjectInstance* obj = scene.find(action.object_id);
  if (!obj) throw Error(ErrorCode::kUnknownReference, "action moves unknown object " + std::to_string(action.object_id));
  obj->cloud = apply_transform(action.transform, obj->cloud);
  obj->box = box_from_cloud(obj->cloud, YawMode::kPrincipalAxis);
}

SceneSnapshot snapshot(const SceneState& scene) {
  SceneSnapshot s;
  for (const auto& obj : scene.objects) s.boxes.emplace(obj.id, obj.box);
  return s;
}

Planner::Planner(SceneState scene, GoalScene goal, PlannerConfig cfg)
    : scene_(std::move(scene)), goal_(std::move(goal)), cfg_(std::move(cfg)) {
  cfg_.icp.validate();
  if (!(cfg_.sigma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be >= 0");
  if (cfg_.buffer_angle_steps < 1) throw Error(ErrorCode::kInvalidArgument, "buffer_angle_steps must be >= 1");
  std::sort(goal_.objects.begin(), goal_.objects.end(),
            [](const GoalObject& a, const GoalObject& b) { return a.id < b.id; });
  for (const auto& g : goal_.objects) {
    if (!scene_.find(g.id)) {
      throw Error(ErrorCode::kKeyMismatch, "goal object " + std::to_string(g.id) + " is not in the scene");
    }
  }
  if (cfg_.remove_obstacles) {
    std::erase_if(scene_.objects, [&](const ObjectInstance& o) { return o.is_obstacle && !goal_.find(o.id); });
  }
}

const RegistrationResult* Planner::registration(int id) {
  if (auto it = cache_.find(id); it != cache_.end()) return &it->second;
  try {
    RegistrationResult r = multistart_register(scene_.find(id)->cloud, goal_.find(id)->cloud, cfg_.icp);
    return &cache_.emplace(id, std::move(r)).first->second;
  } catch (const Error&) {
    failed_.insert(id);
    return nullptr;
  }
}

bool Planner::converged(int id, const RegistrationResult& reg) {
  const PointCloud& cloud = scene_.find(id)->cloud;
  const Vec3 c = centroid(cloud.points);
  const double moved = (reg.transform.apply(c) - c).norm();
  const double turned = geodesic_angle(reg.transform.rotation, Mat3::Identity());
  if (moved <= cfg_.converged_translation && turned <= cfg_.converged_rotation) return true;
  // Symmetric shapes can register to any equivalent pose; staying put is
  // converged when it fits the goal as well as the registered move does.
  const NearestIndex goal_index(goal_.find(id)->cloud.points);
  return registration_objective(cloud.points, goal_index, RigidTransform::identity()) <= reg.residual + 1e-12;
}

double Planner::clearance(int id, const RigidTransform& t) const {
  const GoalObject* g = goal_.find(id);
  const PointCloud placed = apply_transform(t, scene_.find(id)->cloud);
  double best = kInf;
  for (const auto& obj : scene_.objects) {
    if (obj.id == id || (g->support_id && obj.id == *g->support_id)) continue;
    const simd::PointsSoA soa = simd::PointsSoA::from(obj.cloud.points);
    best = std::min({best, simd::min_squared_distance(soa, g->cloud.points),
                     simd::min_squared_distance(soa, placed.points)});
  }
  return std::sqrt(best);
}

std::optional<RigidTransform> Planner::buffer_pose(int id) const {
  const ObjectInstance& obj = *scene_.find(id);
  const Vec3 hull = obj.box.hull_half_extents();
  const Vec3 table = scene_.table.hull_half_extents();
  const double ax = table.x() - hull.x();
  const double ay = table.y() - hull.y();
  if (ax < 0.0 || ay < 0.0) return std::nullopt;

  const double need = cfg_.buffer_clearance;
  const double need_sq = need * need;
  for (int k = 0; k < cfg_.buffer_angle_steps; ++k) {
    const double a = 2.0 * kPi * k / cfg_.buffer_angle_steps;
    const double ux = std::cos(a), uy = std::sin(a);
    const double s = std::min(std::abs(ux) > 0.0 ? ax / std::abs(ux) : kInf, std::abs(uy) > 0.0 ? ay / std::abs(uy) : kInf);
    const Vec3 target(scene_.table.center.x() + s * ux, scene_.table.center.y() + s * uy, obj.box.center.z());
    const Vec3 shift(target.x() - obj.box.center.x(), target.y() - obj.box.center.y(), 0.0);
    const Box3 box = translated(obj.box, shift);

    std::vector<Vec3> moved;
    bool free = true;
    auto blocked_by = [&](const Box3& other, const PointCloud& cloud) {
      if (hull_gap(box, other) >= need) return false;
      if (moved.empty()) {
        moved.reserve(obj.cloud.size());
        for (const Vec3& p : obj.cloud.points) moved.push_back(p + shift);
      }
      return simd::min_squared_distance(simd::PointsSoA::from(cloud.points), moved) < need_sq;
    };
    for (const auto& other : scene_.objects) {
      if (other.id != id && blocked_by(other.box, other.cloud)) {
        free = false;
        break;
      }
    }
    for (const auto& g : goal_.objects) {
      if (!free) break;
      if (g.id != id && blocked_by(g.box, g.cloud)) free = false;
    }
    if (free) return RigidTransform::from_translation(shift);
  }
  return std::nullopt;
}

std::optional<Action> Planner::select_next_action() {
  for (const auto& g : goal_.objects) {
    if (placed_.contains(g.id) || failed_.contains(g.id)) continue;
    const RegistrationResult* reg = registration(g.id);
    if (reg && converged(g.id, *reg)) placed_.insert(g.id);
  }

  std::optional<Candidate> park;
  for (const auto& g : goal_.objects) {
    if (placed_.contains(g.id) || failed_.contains(g.id)) continue;
    const RegistrationResult* reg = registration(g.id);
    if (!reg) continue;
    const double d = clearance(g.id, reg->transform);
    const bool supported = !g.support_id || placed_.contains(*g.support_id);
    if (supported && d > cfg_.sigma) return Action{g.id, ActionKind::kMoveToGoal, reg->transform, d};
    if (!parked_.contains(g.id) && (!park || d > park->clearance)) park = Candidate{g.id, {}, d};
  }
  if (!park) return std::nullopt;

  const std::optional<RigidTransform> pose = buffer_pose(park->id);
  if (!pose) throw Error(ErrorCode::kBufferExhausted, "no free buffer pose for object " + std::to_string(park->id));
  return Action{park->id, ActionKind::kMoveToBuffer, *pose, park->clearance};
}

void Planner::apply(const Action& action) {
  if (!goal_.find(action.object_id)) {
    throw Error(ErrorCode::kUnknownReference, "object " + std::to_string(action.object_id) + " has no goal");
  }
  apply_action(scene_, action);
  cache_.erase(action.object_id);
  if (action.kind == ActionKind::kMoveToGoal) {
    placed_.insert(action.object_id);
  } else {
    parked_.insert(action.object_id);
  }
}

std::pair<SceneState, Plan> execute_plan(const SceneState& initial, const GoalScene& goal, const PlannerConfig& cfg) {
  Planner planner(initial, goal, cfg);
  Plan plan;
  const std::size_t limit = 3 * goal.objects.size();
  while (true) {
    std::optional<Action> action;
    try {
      action = planner.select_next_action();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBufferExhausted) throw;
      plan.status = PlanStatus::kDeadlock;
      break;
    }
    if (!action) {
      plan.status = planner.done() ? PlanStatus::kComplete : PlanStatus::kDeadlock;
      break;
    }
    if (plan.actions.size() >= limit) {
      plan.status = PlanStatus::kStepLimit;
      break;
    }
    planner.apply(*action);
    plan.actions.push_back(*action);
    plan.snapshots.push_back(snapshot(planner.scene()));
  }
  return {planner.scene(), std::move(plan)};
}

}  // namespace sgbot
