#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "sgbot/core/error.hpp"
#include "sgbot/ingest/json_util.hpp"
#include "sgbot/planner/planner.hpp"
#include "sgbot/registration/icp.hpp"
#include "sgbot/registration/nn_index.hpp"
#include "sgbot/sim/generator.hpp"
#include "sgbot/sim/metrics.hpp"
#include "sgbot/sim/templates.hpp"
#include "sgbot/synth/goal_scene.hpp"

using namespace sgbot;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double brute_objective(const std::vector<Vec3>& source, const std::vector<Vec3>& target, const RigidTransform& t) {
  double sum = 0.0;
  for (const Vec3& p : source) {
    const Vec3 q = t.apply(p);
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& r : target) {
      const Vec3 d = q - r;
      best = std::min(best, (d.x() * d.x() + d.y() * d.y()) + d.z() * d.z());
    }
    sum += best;
  }
  return sum / static_cast<double>(source.size());
}

RigidTransform random_pose(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> yaw(-kPi, kPi), tilt(-kPi / 4, kPi / 4), shift(-0.3, 0.3);
  return {rot_z(yaw(rng)) * rot_y(tilt(rng)) * rot_x(tilt(rng)), Vec3(shift(rng), shift(rng), shift(rng))};
}

Outcome registration_recovery() {
  std::mt19937_64 rng(2024);
  const std::vector<const char*> shapes{"fork", "knife", "spoon", "teapot"};
  int ok = 0;
  std::size_t min_points = std::numeric_limits<std::size_t>::max();
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 100; ++trial) {
    const ObjectTemplate& tpl = *find_template(shapes[trial % shapes.size()]);
    min_points = std::min(min_points, tpl.cloud.size());
    const RigidTransform t = random_pose(rng);
    const RegistrationResult r = multistart_register(tpl.cloud, apply_transform(t, tpl.cloud));
    if (geodesic_angle(r.transform.rotation, t.rotation) <= 1e-3 && (r.transform.translation - t.translation).norm() <= 1e-4) ++ok;
  }
  const double elapsed = seconds_since(t0);
  return {ok >= 95 && elapsed < 60.0 && min_points >= 200,
          fmt("%d/100 recovered, %.1f s, min %zu points", ok, elapsed, min_points)};
}

Outcome candidate_grid() {
  const auto grid = candidate_rotations(5);
  double worst = 0.0;
  for (const Mat3& r : grid) {
    worst = std::max({worst, (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff(), std::abs(r.determinant() - 1.0)});
  }
  return {grid.size() == 125 && worst <= 1e-12, fmt("%zu rotations, max SO(3) defect %.3g", grid.size(), worst)};
}

Outcome objective_oracle() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    PointCloud src, tgt;
    for (int i = 0; i < 200 + trial * 10; ++i) src.points.emplace_back(u(rng), u(rng), u(rng));
    for (int i = 0; i < 220 + trial * 7; ++i) tgt.points.emplace_back(u(rng), u(rng), u(rng));
    tgt = apply_transform(random_pose(rng), tgt);
    IcpConfig cfg;
    cfg.n_segments = 2;
    const RegistrationResult r = multistart_register(src, tgt, cfg);
    worst = std::max(worst, std::abs(r.residual - brute_objective(src.points, tgt.points, r.transform)));
  }
  return {worst <= 1e-12, fmt("20 instances, max |residual - brute force| %.3g", worst)};
}

Outcome graph_round_trip() {
  int ok = 0, false_edges = 0, edges = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ScenePair pair = generate_scene_pair(seed, standard_templates());
    const GoalScene goal = synthesize_goal(pair.initial, pair.graph_truth, seed);
    const LayoutReport report = verify_layout(goal, pair.graph_truth);
    for (const auto& e : report.edges) false_edges += !e.holds;
    edges += static_cast<int>(report.edges.size());
    ok += report.all_true();
  }
  return {ok == 100 && false_edges == 0, fmt("%d/100 graphs all-true, %d/%d edges false", ok, false_edges, edges)};
}

// Smallest clearance of any move_to_goal when the plan is replayed.
double replay_clearance(SceneState scene, const GoalScene& goal, const Plan& plan) {
  double worst = std::numeric_limits<double>::infinity();
  for (const Action& a : plan.actions) {
    if (a.kind == ActionKind::kMoveToGoal) {
      const GoalObject* g = goal.find(a.object_id);
      SceneState others = scene;
      if (g->support_id) std::erase_if(others.objects, [&](const ObjectInstance& o) { return o.id == *g->support_id; });
      worst = std::min(worst, occupancy_distance(apply_transform(a.transform, scene.find(a.object_id)->cloud), others, a.object_id));
    }
    apply_action(scene, a);
  }
  return worst;
}

Outcome end_to_end() {
  const PlannerConfig cfg;
  int complete = 0, violations = 0, errors = 0;
  double t_f = 0.0, R_f = 0.0, iou50 = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    try {
      const ScenePair pair = generate_scene_pair(seed, standard_templates());
      const GoalScene goal = synthesize_goal(pair.initial, pair.graph_truth, seed);
      const auto [final_scene, plan] = execute_plan(pair.initial, goal, cfg);
      complete += plan.status == PlanStatus::kComplete && plan.actions.size() <= 3 * goal.objects.size();
      violations += !(replay_clearance(pair.initial, goal, plan) > cfg.sigma);
      const EvalReport r = evaluate(final_scene, pair.goal_truth);
      t_f += r.t_f;
      R_f += r.R_f;
      iou50 += r.iou50;
    } catch (const Error& e) {
      ++errors;
      std::fprintf(stderr, "seed %llu: %s\n", static_cast<unsigned long long>(seed), e.what());
    }
  }
  t_f /= 100.0;
  R_f /= 100.0;
  iou50 /= 100.0;
  return {complete == 100 && violations == 0 && errors == 0 && t_f < 0.01 && R_f < 0.05 && iou50 >= 95.0,
          fmt("%d/100 complete, %d violations, %d errors, mean t_f %.3g m, R_f %.3g rad, IoU50 %.1f%%, %.1f s", complete, violations,
              errors, t_f, R_f, iou50, seconds_since(t0))};
}

Outcome swap_deadlock() {
  const ObjectTemplate& box = *find_template("teapot");
  SceneState scene;
  scene.objects.push_back(make_object(1, "teapot", apply_transform(RigidTransform::from_translation(Vec3(-0.2, 0, 0)), box.cloud)));
  scene.objects.push_back(make_object(2, "teapot", apply_transform(RigidTransform::from_translation(Vec3(0.2, 0, 0)), box.cloud)));
  GoalScene goal;
  for (int id : {1, 2}) {
    const ObjectInstance& obj = *scene.find(id);
    const ObjectInstance& other = *scene.find(3 - id);
    GoalObject g;
    g.id = g.source_id = id;
    g.cloud = apply_transform(RigidTransform::from_translation(other.box.center - obj.box.center), obj.cloud);
    g.box = box_from_cloud(g.cloud, YawMode::kPrincipalAxis);
    goal.objects.push_back(std::move(g));
  }
  const auto [final_scene, plan] = execute_plan(scene, goal);
  int buffers = 0;
  for (const auto& a : plan.actions) buffers += a.kind == ActionKind::kMoveToBuffer;
  return {plan.status == PlanStatus::kComplete && buffers == 1 && plan.actions.size() == 3,
          fmt("status %s, %zu actions, %d buffer", std::string(to_string(plan.status)).c_str(), plan.actions.size(), buffers)};
}

Outcome bench_determinism() {
  const fs::path dir = fs::temp_directory_path() / "sgbot_acceptance_bench";
  fs::remove_all(dir);
  fs::create_directories(dir);
  json_util::write_file((dir / "m.json").string(), R"({"seeds":[3,1,4,1,5],"sigma":0.01,"out_dir":"out"})");
  const std::string cmd = std::string(SGBOT_CLI_PATH) + " bench --manifest " + (dir / "m.json").string() + " >/dev/null";
  std::string first, second;
  const int a = std::system(cmd.c_str());
  if (a == 0) first = json_util::read_file((dir / "out" / "bench.csv").string());
  const int b = std::system(cmd.c_str());
  if (b == 0) second = json_util::read_file((dir / "out" / "bench.csv").string());
  fs::remove_all(dir);
  return {a == 0 && b == 0 && !first.empty() && first == second, fmt("%zu-byte csv, identical: %s", first.size(), first == second ? "yes" : "no")};
}

Outcome metric_spot_checks() {
  const Box3 a{Vec3::Zero(), Vec3::Constant(0.5), 0.0};
  const Box3 b{Vec3(0.5, 0, 0), Vec3::Constant(0.5), 0.0};
  const double iou = iou3d(a, b);
  SceneState truth;
  truth.objects.push_back(make_object(1, "fork", find_template("fork")->cloud));
  const Vec3 c = truth.objects[0].box.center;
  SceneState final_scene;
  final_scene.objects.push_back(make_object(1, "fork", apply_transform({rot_z(0.2), c - rot_z(0.2) * c}, truth.objects[0].cloud)));
  const double rot = pose_errors(final_scene, truth).at(0).rotation;
  return {std::abs(iou - 1.0 / 3.0) <= 1e-12 && std::abs(rot - 0.2) <= 1e-9,
          fmt("iou3d %.15f, rotation error %.12f", iou, rot)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"registration_recovery", registration_recovery},
      {"candidate_grid", candidate_grid},
      {"objective_oracle", objective_oracle},
      {"graph_round_trip", graph_round_trip},
      {"end_to_end_pipeline", end_to_end},
      {"swap_deadlock", swap_deadlock},
      {"bench_determinism", bench_determinism},
      {"metric_spot_checks", metric_spot_checks},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
