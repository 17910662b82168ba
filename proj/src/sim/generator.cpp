#include "sgbot/sim/generator.hpp"

#include <cmath>
#include <random>

#include "sgbot/core/error.hpp"
#include "sgbot/graph/commonsense.hpp"
#include "sgbot/synth/goal_scene.hpp"

namespace sgbot {
namespace {

constexpr int kMaxTries = 1000;
constexpr double kClearance = 0.01;

bool hulls_apart(const Box3& a, const Box3& b, double clearance) {
  const Vec3 ha = a.hull_half_extents();
  const Vec3 hb = b.hull_half_extents();
  return std::abs(a.center.x() - b.center.x()) >= ha.x() + hb.x() + clearance ||
         std::abs(a.center.y() - b.center.y()) >= ha.y() + hb.y() + clearance;
}

}  // namespace

ScenePair generate_scene_pair(std::uint64_t seed, std::span<const ObjectTemplate> object_db, ObjectCounts counts,
                              const Box3& table) {
  if (object_db.empty()) throw Error(ErrorCode::kInvalidArgument, "object database is empty");
  if (counts.min < 2 || counts.max > 8 || counts.min > counts.max) {
    throw Error(ErrorCode::kInvalidArgument, "object counts must lie within [2, 8]");
  }
  std::mt19937_64 rng(seed);
  const int n = std::uniform_int_distribution<int>(counts.min, counts.max)(rng);
  std::uniform_int_distribution<std::size_t> pick(0, object_db.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vec3 table_half = table.hull_half_extents();

  ScenePair pair;
  pair.seed = seed;
  pair.initial.table = table;
  for (int id = 1; id <= n; ++id) {
    const ObjectTemplate& tmpl = object_db[pick(rng)];
    bool placed = false;
    for (int attempt = 0; attempt < kMaxTries && !placed; ++attempt) {
      const double yaw = -kPi + 2.0 * kPi * unit(rng);
      const double ux = unit(rng), uy = unit(rng);
      const Mat3 r = rot_z(yaw);
      PointCloud cloud;
      cloud.points.reserve(tmpl.cloud.size());
      for (const Vec3& p : tmpl.cloud.points) cloud.points.push_back(r * p);
      const Box3 box = box_from_cloud(cloud, YawMode::kPrincipalAxis);
      const Vec3 hull = box.hull_half_extents();
      const double rx = table_half.x() - hull.x();
      const double ry = table_half.y() - hull.y();
      if (rx < 0.0 || ry < 0.0) continue;
      const Vec3 shift(table.center.x() + (2.0 * ux - 1.0) * rx - box.center.x(),
                       table.center.y() + (2.0 * uy - 1.0) * ry - box.center.y(), 0.0);
      Box3 moved = box;
      moved.center += shift;
      bool free = true;
      for (const auto& other : pair.initial.objects) free = free && hulls_apart(moved, other.box, kClearance);
      if (!free) continue;
      for (Vec3& p : cloud.points) p += shift;
      pair.initial.objects.push_back(make_object(id, tmpl.category, std::move(cloud)));
      placed = true;
    }
    if (!placed) {
      throw Error(ErrorCode::kPlacementFailure,
                  "no free pose for object " + std::to_string(id) + " after " + std::to_string(kMaxTries) + " tries");
    }
  }

  const CategoryVocabulary& vocab = CategoryVocabulary::standard();
  pair.graph_truth = build_commonsense_graph(pair.initial.objects, vocab);
  const GoalScene goal = synthesize_goal(pair.initial, pair.graph_truth, seed, vocab);
  pair.goal_truth.table = table;
  for (const auto& g : goal.objects) {
    pair.goal_truth.objects.push_back(make_object(g.id, pair.initial.find(g.id)->category, g.cloud));
  }
  return pair;
}

}  // namespace sgbot
