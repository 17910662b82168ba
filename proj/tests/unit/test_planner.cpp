#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "sgbot/core/error.hpp"
#include "sgbot/planner/planner.hpp"
#include "sgbot/sim/generator.hpp"
#include "sgbot/synth/goal_scene.hpp"

using namespace sgbot;

namespace {

GoalObject goal_at(const ObjectInstance& obj, const RigidTransform& t) {
  GoalObject g;
  g.id = obj.id;
  g.source_id = obj.id;
  g.cloud = apply_transform(t, obj.cloud);
  g.box = box_from_cloud(g.cloud, YawMode::kPrincipalAxis);
  return g;
}

GoalObject goal_like(const ObjectInstance& obj, const ObjectInstance& spot) {
  return goal_at(obj, RigidTransform::from_translation(spot.box.center - obj.box.center));
}

PointCloud single(const Vec3& p) {
  PointCloud c;
  c.points.push_back(p);
  return c;
}

ObjectInstance raw(int id, PointCloud c) {
  ObjectInstance o;
  o.id = id;
  o.category = "box";
  o.cloud = std::move(c);
  return o;
}

// Replays a plan and returns the smallest clearance of any move_to_goal.
double replay_min_clearance(SceneState scene, const GoalScene& goal, const Plan& plan) {
  double worst = std::numeric_limits<double>::infinity();
  for (const Action& a : plan.actions) {
    const ObjectInstance& obj = *scene.find(a.object_id);
    if (a.kind == ActionKind::kMoveToGoal) {
      const GoalObject* g = goal.find(a.object_id);
      SceneState others = scene;
      if (g->support_id) std::erase_if(others.objects, [&](const ObjectInstance& o) { return o.id == *g->support_id; });
      worst = std::min(worst, occupancy_distance(apply_transform(a.transform, obj.cloud), others, a.object_id));
    }
    apply_action(scene, a);
  }
  return worst;
}

}  // namespace

TEST_CASE("occupancy_distance examples") {
  SceneState s;
  s.objects.push_back(raw(1, single(Vec3(0, 0, 0))));
  CHECK(std::isinf(occupancy_distance(single(Vec3(0.3, 0, 0)), s, 1)));
  s.objects.push_back(raw(2, single(Vec3(0.3, 0, 0))));
  CHECK(occupancy_distance(single(Vec3(0.3, 0, 0)), s, 1) == 0.0);
  CHECK(occupancy_distance(single(Vec3(0, 1, 0)), s, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(occupancy_distance(single(Vec3(0, 0, 1)), s, 2) == 1.0);
  CHECK_THROWS_AS(occupancy_distance(PointCloud{}, s, 1), Error);
}

TEST_CASE("free goals are placed in id order") {
  SceneState s;
  s.objects = {test::placed(1, "cup", -0.4, -0.3), test::placed(2, "can", 0.0, -0.3), test::placed(3, "box", 0.4, -0.3)};
  GoalScene goal;
  for (const auto& o : s.objects) goal.objects.push_back(goal_at(o, RigidTransform::from_translation(Vec3(0, 0.5, 0))));
  Planner p(s, goal);
  const auto first = p.select_next_action();
  REQUIRE(first);
  CHECK(first->object_id == 1);
  CHECK(first->kind == ActionKind::kMoveToGoal);
  CHECK(first->clearance > 0.01);
  const auto [final_scene, plan] = execute_plan(s, goal);
  CHECK(plan.status == PlanStatus::kComplete);
  REQUIRE(plan.actions.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(plan.actions[i].object_id == i + 1);
  CHECK(plan.snapshots.size() == 3);
  for (const auto& g : goal.objects) CHECK((final_scene.find(g.id)->box.center - g.box.center).norm() < 1e-6);
}

TEST_CASE("a blocked goal is deferred") {
  SceneState s;
  const ObjectInstance a = test::placed(1, "cup", -0.3, 0.0);
  const ObjectInstance b = test::placed(2, "can", 0.0, 0.0);
  s.objects = {a, b};
  GoalScene goal;
  goal.objects.push_back(goal_like(a, b));
  goal.objects.push_back(goal_like(b, test::placed(9, "can", 0.3, 0.3)));
  Planner p(s, goal);
  const auto first = p.select_next_action();
  REQUIRE(first);
  CHECK(first->object_id == 2);
  CHECK(first->kind == ActionKind::kMoveToGoal);
  const auto [final_scene, plan] = execute_plan(s, goal);
  CHECK(plan.status == PlanStatus::kComplete);
  REQUIRE(plan.actions.size() == 2);
  CHECK(plan.actions[0].object_id == 2);
  CHECK(plan.actions[1].object_id == 1);
}

TEST_CASE("swap scene needs one buffer move") {
  SceneState s;
  const ObjectInstance a = test::placed(1, "box", -0.15, 0.0);
  const ObjectInstance b = test::placed(2, "box", 0.15, 0.0);
  s.objects = {a, b};
  GoalScene goal;
  goal.objects.push_back(goal_like(a, b));
  goal.objects.push_back(goal_like(b, a));
  const auto [final_scene, plan] = execute_plan(s, goal);
  CHECK(plan.status == PlanStatus::kComplete);
  REQUIRE(plan.actions.size() == 3);
  int buffers = 0;
  for (const auto& act : plan.actions) buffers += act.kind == ActionKind::kMoveToBuffer;
  CHECK(buffers == 1);
  CHECK(plan.actions[0].kind == ActionKind::kMoveToBuffer);
  CHECK(replay_min_clearance(s, goal, plan) > 0.01);
  for (const auto& g : goal.objects) CHECK((final_scene.find(g.id)->box.center - g.box.center).norm() < 1e-6);
}

TEST_CASE("a scene already at its goal needs no actions") {
  SceneState s;
  s.objects = {test::placed(1, "teapot", -0.3, 0.0, 0.4), test::placed(2, "fork", 0.2, 0.1, 1.0)};
  GoalScene goal;
  for (const auto& o : s.objects) goal.objects.push_back(goal_at(o, RigidTransform::identity()));
  const auto [final_scene, plan] = execute_plan(s, goal);
  CHECK(plan.status == PlanStatus::kComplete);
  CHECK(plan.actions.empty());
}

TEST_CASE("generated three-object scene completes in three moves") {
  const auto& db = standard_templates();
  bool found = false;
  for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
    const ScenePair pair = generate_scene_pair(seed, db, {3, 3});
    const GoalScene goal = synthesize_goal(pair.initial, pair.graph_truth, seed);
    if (goal.objects.size() != 3) continue;
    bool free = true;
    for (const auto& g : goal.objects) {
      const ObjectInstance& o = *pair.initial.find(g.id);
      free = free && occupancy_distance(g.cloud, pair.initial, g.id) > 0.05 && !g.support_id &&
             (o.box.center - g.box.center).norm() > 0.05;
    }
    if (!free) continue;
    found = true;
    const auto [final_scene, plan] = execute_plan(pair.initial, goal);
    CHECK(plan.status == PlanStatus::kComplete);
    CHECK(plan.actions.size() == 3);
    for (const auto& a : plan.actions) CHECK(a.kind == ActionKind::kMoveToGoal);
    CHECK(replay_min_clearance(pair.initial, goal, plan) > 0.01);
  }
  CHECK(found);
}

TEST_CASE("plans are safe and bounded on generated scenes") {
  const auto& db = standard_templates();
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const ScenePair pair = generate_scene_pair(seed, db);
    const GoalScene goal = synthesize_goal(pair.initial, pair.graph_truth, seed);
    const auto [final_scene, plan] = execute_plan(pair.initial, goal);
    CHECK(plan.status == PlanStatus::kComplete);
    CHECK(plan.actions.size() <= 3 * goal.objects.size());
    CHECK(replay_min_clearance(pair.initial, goal, plan) > 0.01);
    CHECK(plan.snapshots.size() == plan.actions.size());
  }
}

TEST_CASE("planner argument errors") {
  SceneState s;
  s.objects = {test::placed(1, "cup", 0, 0)};
  GoalScene goal;
  goal.objects.push_back(goal_at(test::placed(5, "cup", 0, 0), RigidTransform::identity()));
  try {
    Planner p(s, goal);
    FAIL("expected KeyMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kKeyMismatch);
  }
  PlannerConfig cfg;
  cfg.sigma = -1.0;
  CHECK_THROWS_AS(Planner(s, GoalScene{}, cfg), Error);
  CHECK(parse_action_kind("move_to_buffer") == ActionKind::kMoveToBuffer);
  CHECK(parse_plan_status(to_string(PlanStatus::kStepLimit)) == PlanStatus::kStepLimit);
  CHECK_THROWS_AS(parse_plan_status("done"), Error);
}
