#include "sgbot/sim/settle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sgbot {
namespace {

bool footprints_overlap(const Box3& a, const Box3& b) {
  const Vec3 ha = a.hull_half_extents();
  const Vec3 hb = b.hull_half_extents();
  return std::abs(a.center.x() - b.center.x()) < ha.x() + hb.x() &&
         std::abs(a.center.y() - b.center.y()) < ha.y() + hb.y();
}

}  // namespace

SceneState settle(SceneState scene, double eps_z) {
  std::vector<std::size_t> order(scene.objects.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scene.objects[a].box.bottom() < scene.objects[b].box.bottom();
  });

  std::vector<double> original_top(scene.objects.size());
  for (std::size_t i = 0; i < scene.objects.size(); ++i) original_top[i] = scene.objects[i].box.top();

  std::vector<std::size_t> settled;
  for (std::size_t i : order) {
    ObjectInstance& obj = scene.objects[i];
    double floor = 0.0;
    for (std::size_t j : settled) {
      const ObjectInstance& below = scene.objects[j];
      if (original_top[j] <= obj.box.bottom() + eps_z && footprints_overlap(obj.box, below.box)) {
        floor = std::max(floor, below.box.top());
      }
    }
    const double dz = floor - obj.box.bottom();
    for (Vec3& p : obj.cloud.points) p.z() += dz;
    obj.box.center.z() += dz;
    settled.push_back(i);
  }
  return scene;
}

}  // namespace sgbot
