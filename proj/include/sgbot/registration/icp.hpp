#pragma once

#include <limits>
#include <vector>

#include "sgbot/core/geometry.hpp"
#include "sgbot/registration/nn_index.hpp"

namespace sgbot {

struct IcpConfig {
  int n_segments = 5;       // rotation grid segments per Euler axis
  int max_iterations = 50;  // per start
  double tolerance = 1e-6;  // relative residual change that ends a start
  double max_correspondence_distance = std::numeric_limits<double>::infinity();
  double trim_fraction = 1.0;  // closest fraction of pairs used for each fit

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

struct RegistrationResult {
  RigidTransform transform;  // maps the source cloud onto the target
  double residual = 0.0;     // mean squared nearest-neighbor distance (m^2)
  int iterations = 0;
  int candidate_index = -1;  // winning grid start; -1 for a single refinement
  std::vector<double> residual_history;
};

/// n^3 rotations Rz(c) Ry(b) Rx(a) with each angle at a segment midpoint of
/// [-pi, pi): -pi + (k + 0.5) * 2pi / n. The x angle varies fastest.
std::vector<Mat3> candidate_rotations(int n);

/// Mean over source points of the squared distance from the transformed point
/// to its nearest target point.
double registration_objective(std::span<const Vec3> source, const NearestIndex& target,
                              const RigidTransform& transform);

/// Point-to-point ICP from (r0, t0). Each iteration matches every transformed
/// source point to its nearest target point, fits a proper rotation and
/// translation to the closest trim_fraction of the pairs, and stops when the
/// relative residual change drops below the tolerance. A step that would
/// raise the residual is rejected, so the history never increases.
RegistrationResult icp_refine(std::span<const Vec3> source, const NearestIndex& target, const Mat3& r0,
                              const Vec3& t0, const IcpConfig& cfg);
RegistrationResult icp_refine(const PointCloud& source, const PointCloud& target, const Mat3& r0,
                              const Vec3& t0, const IcpConfig& cfg);

/// Centers both clouds, runs icp_refine from every grid rotation with zero
/// translation, and keeps the lowest residual. Residuals within 1e-12 m^2 tie;
/// ties go to the start nearest the identity, then the lowest start index.
/// The returned transform maps the original source onto the original target.
RegistrationResult multistart_register(const PointCloud& source, const PointCloud& target,
                                       const IcpConfig& cfg = {});

}  // namespace sgbot
