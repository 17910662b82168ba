#include "sgbot/core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "sgbot/core/error.hpp"

namespace sgbot {
namespace {

constexpr double kMinHalfExtent = 1e-6;
// Relative eigenvalue gap below which the xy spread counts as isotropic.
constexpr double kIsotropyTol = 1e-9;
constexpr double kRankTol = 1e-12;

struct XySpread {
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
};

XySpread xy_spread(std::span<const Vec3> points) {
  const Vec3 c = centroid(points);
  XySpread s;
  for (const Vec3& p : points) {
    const double dx = p.x() - c.x();
    const double dy = p.y() - c.y();
    s.sxx += dx * dx;
    s.syy += dy * dy;
    s.sxy += dx * dy;
  }
  const double n = static_cast<double>(points.size());
  s.sxx /= n;
  s.syy /= n;
  s.sxy /= n;
  return s;
}

std::pair<double, double> eigenvalues(const XySpread& s) {
  const double mean = 0.5 * (s.sxx + s.syy);
  const double half_diff = 0.5 * (s.sxx - s.syy);
  const double r = std::hypot(half_diff, s.sxy);
  return {mean + r, mean - r};
}

}  // namespace

bool PointCloud::all_finite() const {
  return std::all_of(points.begin(), points.end(), [](const Vec3& p) { return p.allFinite(); });
}

RigidTransform RigidTransform::inverse() const {
  RigidTransform out;
  out.rotation = rotation.transpose();
  out.translation = -(out.rotation * translation);
  return out;
}

bool RigidTransform::is_proper(double tol) const {
  if (!rotation.allFinite() || !translation.allFinite()) return false;
  const Mat3 gram = rotation.transpose() * rotation;
  return (gram - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::abs(rotation.determinant() - 1.0) <= tol;
}

Vec3 Box3::hull_half_extents() const {
  const double c = std::abs(std::cos(yaw));
  const double s = std::abs(std::sin(yaw));
  return {c * half_extents.x() + s * half_extents.y(),
          s * half_extents.x() + c * half_extents.y(), half_extents.z()};
}

double Box3::xy_half_diagonal() const { return std::hypot(half_extents.x(), half_extents.y()); }

bool Box3::contains(const Vec3& p, double inflate) const {
  const Vec3 d = p - center;
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  const double lx = c * d.x() + s * d.y();
  const double ly = -s * d.x() + c * d.y();
  return std::abs(lx) <= half_extents.x() + inflate && std::abs(ly) <= half_extents.y() + inflate &&
         std::abs(d.z()) <= half_extents.z() + inflate;
}

bool Box3::is_valid() const {
  return center.allFinite() && half_extents.allFinite() && std::isfinite(yaw) &&
         (half_extents.array() > 0.0).all();
}

double wrap_angle(double a) {
  double w = std::fmod(a + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  w -= kPi;
  // fmod can land exactly on +pi after the shift.
  if (w >= kPi) w -= 2.0 * kPi;
  return w;
}

Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << 1, 0, 0, 0, c, -s, 0, s, c;
  return r;
}

Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << c, 0, s, 0, 1, 0, -s, 0, c;
  return r;
}

Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << c, -s, 0, s, c, 0, 0, 0, 1;
  return r;
}

double yaw_of(const Mat3& r) { return wrap_angle(std::atan2(r(1, 0), r(0, 0))); }

double geodesic_angle(const Mat3& a, const Mat3& b) {
  const Mat3 rel = a.transpose() * b;
  const double c = std::clamp((rel.trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c);
}

Mat3 project_to_so3(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 u = svd.matrixU();
  const Mat3 v = svd.matrixV();
  Mat3 d = Mat3::Identity();
  d(2, 2) = (u * v.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  return u * d * v.transpose();
}

Vec3 centroid(std::span<const Vec3> points) {
  Vec3 sum = Vec3::Zero();
  for (const Vec3& p : points) sum += p;
  return points.empty() ? sum : Vec3(sum / static_cast<double>(points.size()));
}

PointCloud apply_transform(const RigidTransform& t, const PointCloud& cloud) {
  PointCloud out;
  out.frame = cloud.frame;
  out.points.reserve(cloud.points.size());
  for (const Vec3& p : cloud.points) out.points.push_back(t.apply(p));
  return out;
}

RigidTransform compose(const RigidTransform& second, const RigidTransform& first) {
  RigidTransform out;
  out.rotation = second.rotation * first.rotation;
  out.translation = second.rotation * first.translation + second.translation;
  if (!out.is_proper(1e-9)) out.rotation = project_to_so3(out.rotation);
  return out;
}

RigidTransform invert(const RigidTransform& t) { return t.inverse(); }

RigidTransform fit_rigid(std::span<const Vec3> source, std::span<const Vec3> target) {
  if (source.empty() || source.size() != target.size()) {
    throw Error(ErrorCode::kInvalidArgument, "fit_rigid needs equal-length non-empty point lists");
  }
  const Vec3 cs = centroid(source);
  const Vec3 ct = centroid(target);
  Mat3 h = Mat3::Zero();
  for (std::size_t i = 0; i < source.size(); ++i) {
    h += (source[i] - cs) * (target[i] - ct).transpose();
  }
  Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 u = svd.matrixU();
  const Mat3 v = svd.matrixV();
  Mat3 d = Mat3::Identity();
  d(2, 2) = (v * u.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  RigidTransform out;
  out.rotation = v * d * u.transpose();
  out.translation = ct - out.rotation * cs;
  return out;
}

double principal_yaw(std::span<const Vec3> points) {
  const XySpread s = xy_spread(points);
  const auto [hi, lo] = eigenvalues(s);
  if (hi <= 0.0 || hi - lo <= kIsotropyTol * hi) return 0.0;
  double yaw = 0.5 * std::atan2(2.0 * s.sxy, s.sxx - s.syy);
  // Fold the undirected axis into [-pi/2, pi/2).
  if (yaw >= kPi / 2) yaw -= kPi;
  if (yaw < -kPi / 2) yaw += kPi;
  return yaw;
}

Box3 box_from_cloud(const PointCloud& cloud, YawMode mode) {
  if (cloud.size() < 3) {
    throw Error(ErrorCode::kDegenerateCloud, "cloud has fewer than 3 points");
  }
  if (!cloud.all_finite()) {
    throw Error(ErrorCode::kDegenerateCloud, "cloud has non-finite points");
  }
  const auto [hi, lo] = eigenvalues(xy_spread(cloud.points));
  if (hi <= 0.0 || lo <= kRankTol * hi) {
    throw Error(ErrorCode::kDegenerateCloud, "cloud xy spread has rank < 2");
  }

  const double yaw = mode == YawMode::kPrincipalAxis ? principal_yaw(cloud.points) : 0.0;
  const double c = std::cos(yaw), s = std::sin(yaw);
  constexpr double inf = std::numeric_limits<double>::infinity();
  Vec3 lo_corner(inf, inf, inf);
  Vec3 hi_corner(-inf, -inf, -inf);
  for (const Vec3& p : cloud.points) {
    const Vec3 local(c * p.x() + s * p.y(), -s * p.x() + c * p.y(), p.z());
    lo_corner = lo_corner.cwiseMin(local);
    hi_corner = hi_corner.cwiseMax(local);
  }
  const Vec3 local_center = 0.5 * (lo_corner + hi_corner);
  Box3 box;
  box.center = Vec3(c * local_center.x() - s * local_center.y(),
                    s * local_center.x() + c * local_center.y(), local_center.z());
  box.half_extents = (0.5 * (hi_corner - lo_corner)).cwiseMax(kMinHalfExtent);
  box.yaw = yaw;
  return box;
}

}  // namespace sgbot
