#pragma once

#include "sgbot/ingest/scene.hpp"

namespace sgbot {

/// Drops every object straight down, lowest first, onto the table (z = 0) or
/// onto the highest already-settled object under its footprint. An object only
/// counts as a support when its top is no higher than eps_z above the falling
/// object's bottom. Rotations are untouched.
SceneState settle(SceneState scene, double eps_z = 0.01);

}  // namespace sgbot
