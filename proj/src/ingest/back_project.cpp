#include "sgbot/ingest/back_project.hpp"

#include <cmath>
#include <string>

#include "sgbot/core/error.hpp"

namespace sgbot {

bool CameraIntrinsics::is_valid() const {
  return fx > 0.0 && fy > 0.0 && width > 0 && height > 0 && cx >= 0.0 && cx < width && cy >= 0.0 &&
         cy < height;
}

PointCloud back_project(const DepthImage& depth, const MaskImage& mask, const CameraIntrinsics& k,
                        const RigidTransform& camera_pose, std::uint8_t label) {
  if (!k.is_valid()) throw Error(ErrorCode::kInvalidArgument, "invalid camera intrinsics");
  const auto expected = static_cast<std::size_t>(k.width) * static_cast<std::size_t>(k.height);
  if (depth.width != k.width || depth.height != k.height || mask.width != k.width ||
      mask.height != k.height || depth.data.size() != expected || mask.data.size() != expected) {
    throw Error(ErrorCode::kShapeMismatch,
                "depth " + std::to_string(depth.width) + "x" + std::to_string(depth.height) + ", mask " +
                    std::to_string(mask.width) + "x" + std::to_string(mask.height) + ", intrinsics " +
                    std::to_string(k.width) + "x" + std::to_string(k.height));
  }

  PointCloud cloud;
  cloud.frame = Frame::kTable;
  for (int v = 0; v < k.height; ++v) {
    for (int u = 0; u < k.width; ++u) {
      const std::uint8_t m = mask.at(u, v);
      if (label == 0 ? m == 0 : m != label) continue;
      const double z = depth.at(u, v);
      if (!(z > 0.0) || !std::isfinite(z)) continue;
      const Vec3 cam((u - k.cx) * z / k.fx, (v - k.cy) * z / k.fy, z);
      cloud.points.push_back(camera_pose.apply(cam));
    }
  }
  if (cloud.empty()) throw Error(ErrorCode::kEmptyMask, "no masked pixel has valid depth");
  return cloud;
}

Eigen::Vector2d project(const CameraIntrinsics& k, const Vec3& p) {
  return {k.fx * p.x() / p.z() + k.cx, k.fy * p.y() / p.z() + k.cy};
}

}  // namespace sgbot
