#pragma once

#include "sgbot/core/geometry.hpp"
#include "sgbot/ingest/scene.hpp"

namespace sgbot {

/// Observed shape of one object, normalized to zero centroid. The principal
/// box of the original cloud is recorded so the shape can be re-posed into
/// a goal box exactly.
struct ShapePrior {
  int source_id = 0;
  PointCloud centered;   // cloud minus its centroid
  Vec3 dims;             // full extents of the principal-axis box
  double yaw = 0.0;      // principal xy direction in [-pi/2, pi/2)
  Vec3 box_offset;       // principal box center minus centroid

  Vec3 half_extents() const { return dims / 2.0; }
};

/// Throws DegenerateCloud when the cloud cannot bound a box.
ShapePrior estimate_shape_prior(const ObjectInstance& obj);

}  // namespace sgbot
