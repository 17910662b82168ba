#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

namespace sgbot {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

enum class Frame { kCamera, kTable };

/// An ordered list of points. Clouds used for registration must be non-empty.
struct PointCloud {
  std::vector<Vec3> points;
  Frame frame = Frame::kTable;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  bool all_finite() const;
};

/// Rotation (proper orthonormal) plus translation in meters: x -> R x + t.
struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static RigidTransform identity() { return {}; }
  static RigidTransform from_translation(const Vec3& t) { return {Mat3::Identity(), t}; }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  RigidTransform inverse() const;
  // Orthonormal with det +1 within `tol`.
  bool is_proper(double tol = 1e-9) const;
};

/// Yaw-only oriented box. `yaw` is about the table z-axis.
struct Box3 {
  Vec3 center = Vec3::Zero();
  Vec3 half_extents = Vec3::Constant(0.5);
  double yaw = 0.0;

  double bottom() const { return center.z() - half_extents.z(); }
  double top() const { return center.z() + half_extents.z(); }
  // Half extents of the axis-aligned hull of the yawed box.
  Vec3 hull_half_extents() const;
  double xy_half_diagonal() const;
  bool contains(const Vec3& p, double inflate) const;
  bool is_valid() const;
};

enum class YawMode { kAxisAligned, kPrincipalAxis };

/// Wraps to [-pi, pi).
double wrap_angle(double a);
Mat3 rot_x(double a);
Mat3 rot_y(double a);
Mat3 rot_z(double a);
/// Yaw of a rotation's x-axis projected on the table plane.
double yaw_of(const Mat3& r);
/// Angle of R_a^T R_b, from the trace.
double geodesic_angle(const Mat3& a, const Mat3& b);
/// Nearest rotation matrix (SVD projection onto SO(3)).
Mat3 project_to_so3(const Mat3& m);

Vec3 centroid(std::span<const Vec3> points);

PointCloud apply_transform(const RigidTransform& t, const PointCloud& cloud);
/// Result applies `first` then `second`.
RigidTransform compose(const RigidTransform& second, const RigidTransform& first);
RigidTransform invert(const RigidTransform& t);

/// Least-squares rigid fit mapping `source[i]` onto `target[i]` (Kabsch with
/// determinant correction). Requires at least one pair.
RigidTransform fit_rigid(std::span<const Vec3> source, std::span<const Vec3> target);

/// Tight box around the cloud. Throws DegenerateCloud for fewer than 3 points
/// or when the xy spread has rank < 2.
Box3 box_from_cloud(const PointCloud& cloud, YawMode mode);

/// Principal xy direction in [-pi/2, pi/2); 0 when the spread is isotropic.
double principal_yaw(std::span<const Vec3> points);

}  // namespace sgbot
