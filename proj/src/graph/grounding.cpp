#include "sgbot/graph/grounding.hpp"

#include <algorithm>
#include <cmath>

namespace sgbot {

std::string RelationSet::to_string() const {
  std::string out = "{";
  for (RelationLabel r : kAllRelations) {
    if (!contains(r)) continue;
    if (out.size() > 1) out += ",";
    out += sgbot::to_string(r);
  }
  return out + "}";
}

double footprint_overlap_fraction(const Box3& a, const Box3& b) {
  const Vec3 ha = a.hull_half_extents();
  const Vec3 hb = b.hull_half_extents();
  const double ox = std::min(a.center.x() + ha.x(), b.center.x() + hb.x()) -
                    std::max(a.center.x() - ha.x(), b.center.x() - hb.x());
  const double oy = std::min(a.center.y() + ha.y(), b.center.y() + hb.y()) -
                    std::max(a.center.y() - ha.y(), b.center.y() - hb.y());
  if (ox <= 0.0 || oy <= 0.0) return 0.0;
  return (ox * oy) / (4.0 * ha.x() * ha.y());
}

RelationSet ground_relation(const Box3& box_i, const Box3& box_j, const GroundingParams& params) {
  RelationSet out;
  const Vec3 d = box_i.center - box_j.center;

  const bool standing = std::abs(box_i.bottom() - box_j.top()) <= params.eps_z &&
                        footprint_overlap_fraction(box_i, box_j) >= params.footprint_overlap;
  if (standing) {
    out.insert(RelationLabel::kStandingOn);
    return out;
  }

  const double close_radius =
      params.delta_close_factor * (box_i.xy_half_diagonal() + box_j.xy_half_diagonal());
  if (std::hypot(d.x(), d.y()) <= close_radius) out.insert(RelationLabel::kCloseBy);

  if (std::abs(d.x()) >= std::abs(d.y())) {
    out.insert(d.x() < 0.0 ? RelationLabel::kLeft : RelationLabel::kRight);
  } else {
    out.insert(d.y() > 0.0 ? RelationLabel::kFront : RelationLabel::kBehind);
  }
  return out;
}

}  // namespace sgbot
