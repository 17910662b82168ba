#pragma once

#include <cstdint>
#include <vector>

#include "sgbot/core/geometry.hpp"

namespace sgbot {

struct CameraIntrinsics {
  double fx = 0.0, fy = 0.0;
  double cx = 0.0, cy = 0.0;
  int width = 0, height = 0;

  bool is_valid() const;
};

/// Row-major H x W raster.
template <typename T>
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<T> data;

  const T& at(int u, int v) const { return data[static_cast<std::size_t>(v) * width + u]; }
};

using DepthImage = Raster<float>;
using MaskImage = Raster<std::uint8_t>;

/// Unprojects every masked pixel with depth > 0 through the pinhole model and
/// maps it into the table frame with `camera_pose`. Pixels whose mask value
/// equals `label` are selected; label 0 selects every nonzero pixel.
PointCloud back_project(const DepthImage& depth, const MaskImage& mask, const CameraIntrinsics& k,
                        const RigidTransform& camera_pose, std::uint8_t label = 0);

/// Pinhole projection of a camera-frame point; used to synthesize depth.
Eigen::Vector2d project(const CameraIntrinsics& k, const Vec3& camera_point);

}  // namespace sgbot
