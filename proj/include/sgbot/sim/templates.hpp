#pragma once

#include <string>
#include <vector>

#include "sgbot/core/geometry.hpp"

namespace sgbot {

enum class Symmetry { kNone, kZRot180, kZRotInf };

std::string_view to_string(Symmetry s);
Symmetry parse_symmetry(std::string_view s);

/// A canonical object shape: bottom at z = 0, xy box centered at the origin.
struct ObjectTemplate {
  std::string category;
  PointCloud cloud;
  Symmetry symmetry = Symmetry::kNone;
};

/// The ten procedural tabletop templates (plate, bowl, cup, fork, knife,
/// spoon, bottle, can, box, teapot), 200-500 points each. Rotationally
/// symmetric shapes are sampled on 12-fold symmetric rings.
const std::vector<ObjectTemplate>& standard_templates();

const ObjectTemplate* find_template(std::string_view category);

/// Symmetry class used by pose-error evaluation; unknown categories have none.
Symmetry category_symmetry(std::string_view category);

}  // namespace sgbot
