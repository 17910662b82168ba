#include "sgbot/synth/shape_prior.hpp"

namespace sgbot {

ShapePrior estimate_shape_prior(const ObjectInstance& obj) {
  const Box3 box = box_from_cloud(obj.cloud, YawMode::kPrincipalAxis);
  const Vec3 c = centroid(obj.cloud.points);
  ShapePrior prior;
  prior.source_id = obj.id;
  prior.centered.frame = obj.cloud.frame;
  prior.centered.points.reserve(obj.cloud.size());
  for (const Vec3& p : obj.cloud.points) prior.centered.points.push_back(p - c);
  prior.dims = 2.0 * box.half_extents;
  prior.yaw = box.yaw;
  prior.box_offset = box.center - c;
  return prior;
}

}  // namespace sgbot
