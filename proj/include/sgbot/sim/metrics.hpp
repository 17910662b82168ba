#pragma once

#include <map>
#include <string>
#include <vector>

#include "sgbot/ingest/scene.hpp"
#include "sgbot/registration/icp.hpp"
#include "sgbot/sim/templates.hpp"

namespace sgbot {

using SymmetryTable = std::map<std::string, Symmetry, std::less<>>;

/// Symmetry class of every standard template.
SymmetryTable default_symmetries();

struct PoseError {
  int id = 0;
  double rotation = 0.0;     // radians
  double translation = 0.0;  // meters, between box centers
};

/// Per-object errors, ascending id. The rotation error is the angle of the
/// rotation taking the final cloud onto the truth cloud: a point-wise fit when
/// both clouds list the same points, otherwise multi-start ICP. z_rot_inf
/// objects count only the tilt of the z-axis; z_rot_180 objects take the
/// smaller error over a half-turn about z. Throws IdMismatch.
std::vector<PoseError> pose_errors(const SceneState& final_scene, const SceneState& truth,
                                   const SymmetryTable& symmetries = default_symmetries(),
                                   const IcpConfig& icp = {});

/// Rotation error of R_rel under a symmetry class.
double symmetric_rotation_error(const Mat3& relative, Symmetry symmetry);

/// IoU of the axis-aligned hulls of two boxes.
double iou3d(const Box3& a, const Box3& b);

/// Percentage of truth objects whose final box has IoU above the threshold.
double success_rate(const SceneState& final_scene, const SceneState& truth, double iou_threshold);

struct ObjectEval {
  int id = 0;
  std::string category;
  double rotation_error = 0.0;        // before settling
  double translation_error = 0.0;
  double rotation_error_final = 0.0;  // after settling
  double translation_error_final = 0.0;
  double iou = 0.0;                   // after settling
};

struct EvalReport {
  std::vector<ObjectEval> objects;
  double R_e = 0.0, t_e = 0.0, R_f = 0.0, t_f = 0.0;
  double iou25 = 0.0, iou50 = 0.0;  // success rates in percent
};

/// Errors before and after settle(final_scene), and IoU success rates after.
EvalReport evaluate(const SceneState& final_scene, const SceneState& truth,
                    const SymmetryTable& symmetries = default_symmetries(), const IcpConfig& icp = {});

}  // namespace sgbot
