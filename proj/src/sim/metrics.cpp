#include "sgbot/sim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "sgbot/core/error.hpp"
#include "sgbot/sim/settle.hpp"

namespace sgbot {
namespace {

void check_ids(const SceneState& a, const SceneState& b) {
  std::vector<int> ia = a.ids(), ib = b.ids();
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  if (ia != ib) throw Error(ErrorCode::kIdMismatch, "final and truth scenes list different object ids");
}

double angle_of(const Mat3& r) {
  return std::acos(std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0));
}

double mean(const std::vector<ObjectEval>& v, double ObjectEval::*field) {
  if (v.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& o : v) sum += o.*field;
  return sum / static_cast<double>(v.size());
}

}  // namespace

SymmetryTable default_symmetries() {
  SymmetryTable out;
  for (const auto& t : standard_templates()) out.emplace(t.category, t.symmetry);
  return out;
}

double symmetric_rotation_error(const Mat3& relative, Symmetry symmetry) {
  switch (symmetry) {
    case Symmetry::kNone:
      return angle_of(relative);
    case Symmetry::kZRot180:
      return std::min(angle_of(relative), angle_of(relative * rot_z(kPi)));
    case Symmetry::kZRotInf:
      return std::acos(std::clamp(relative(2, 2), -1.0, 1.0));
  }
  return angle_of(relative);
}

std::vector<PoseError> pose_errors(const SceneState& final_scene, const SceneState& truth,
                                   const SymmetryTable& symmetries, const IcpConfig& icp) {
  check_ids(final_scene, truth);
  std::vector<PoseError> out;
  for (const auto& t : truth.objects) {
    const ObjectInstance& f = *final_scene.find(t.id);
    Mat3 relative;
    if (f.cloud.size() == t.cloud.size() && !f.cloud.empty()) {
      relative = fit_rigid(f.cloud.points, t.cloud.points).rotation;
    } else {
      relative = multistart_register(f.cloud, t.cloud, icp).transform.rotation;
    }
    auto it = symmetries.find(t.category);
    const Symmetry sym = it == symmetries.end() ? Symmetry::kNone : it->second;
    out.push_back({t.id, symmetric_rotation_error(relative, sym), (f.box.center - t.box.center).norm()});
  }
  std::sort(out.begin(), out.end(), [](const PoseError& a, const PoseError& b) { return a.id < b.id; });
  return out;
}

double iou3d(const Box3& a, const Box3& b) {
  const Vec3 ha = a.hull_half_extents();
  const Vec3 hb = b.hull_half_extents();
  double inter = 1.0;
  for (int k = 0; k < 3; ++k) {
    const double lo = std::max(a.center[k] - ha[k], b.center[k] - hb[k]);
    const double hi = std::min(a.center[k] + ha[k], b.center[k] + hb[k]);
    if (hi <= lo) return 0.0;
    inter *= hi - lo;
  }
  const double va = 8.0 * ha.x() * ha.y() * ha.z();
  const double vb = 8.0 * hb.x() * hb.y() * hb.z();
  return inter / (va + vb - inter);
}

double success_rate(const SceneState& final_scene, const SceneState& truth, double iou_threshold) {
  check_ids(final_scene, truth);
  if (truth.objects.empty()) return 0.0;
  int hits = 0;
  for (const auto& t : truth.objects) {
    if (iou3d(final_scene.find(t.id)->box, t.box) > iou_threshold) ++hits;
  }
  return 100.0 * hits / static_cast<double>(truth.objects.size());
}

EvalReport evaluate(const SceneState& final_scene, const SceneState& truth, const SymmetryTable& symmetries,
                    const IcpConfig& icp) {
  const SceneState settled = settle(final_scene);
  const std::vector<PoseError> before = pose_errors(final_scene, truth, symmetries, icp);
  const std::vector<PoseError> after = pose_errors(settled, truth, symmetries, icp);
  EvalReport report;
  for (std::size_t k = 0; k < before.size(); ++k) {
    const int id = before[k].id;
    ObjectEval e;
    e.id = id;
    e.category = truth.find(id)->category;
    e.rotation_error = before[k].rotation;
    e.translation_error = before[k].translation;
    e.rotation_error_final = after[k].rotation;
    e.translation_error_final = after[k].translation;
    e.iou = iou3d(settled.find(id)->box, truth.find(id)->box);
    report.objects.push_back(e);
  }
  report.R_e = mean(report.objects, &ObjectEval::rotation_error);
  report.t_e = mean(report.objects, &ObjectEval::translation_error);
  report.R_f = mean(report.objects, &ObjectEval::rotation_error_final);
  report.t_f = mean(report.objects, &ObjectEval::translation_error_final);
  report.iou25 = success_rate(settled, truth, 0.25);
  report.iou50 = success_rate(settled, truth, 0.50);
  return report;
}

}  // namespace sgbot
