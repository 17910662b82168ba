#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgbot/core/scene_graph.hpp"
#include "sgbot/ingest/back_project.hpp"
#include "sgbot/ingest/scene.hpp"

namespace sgbot {

// Scene JSON:
//   { "table": {"half_extents": [x, y, z]},
//     "objects": [{"id": int, "category": str, "points": [[x,y,z], ...],
//                  "is_obstacle": bool (optional)}] }
// Boxes are not stored; they are re-derived from the points on load.
SceneState scene_from_json(const nlohmann::json& doc);
nlohmann::json scene_to_json(const SceneState& scene);
SceneState load_scene(std::istream& in);
SceneState load_scene_file(const std::string& path);
std::string save_scene(const SceneState& scene);

// Graph JSON:
//   { "nodes": [{"id": int, "category": str}],
//     "edges": [{"from": int, "to": int, "relation": "left|right|front|behind|standing_on|close_by"}] }
SceneGraph graph_from_json(const nlohmann::json& doc);
nlohmann::json graph_to_json(const SceneGraph& graph);
SceneGraph load_graph_file(const std::string& path);
std::string save_graph(const SceneGraph& graph);

struct InstanceLabel {
  std::uint8_t label = 0;
  std::string category;
};

// Sidecar JSON next to a depth raster:
//   { "fx":f, "fy":f, "cx":f, "cy":f, "width":int, "height":int,
//     "camera_pose": {"rotation":[9 floats row-major], "translation":[3 floats]},
//     "instances": [{"label": 1..255, "category": str}],          (optional)
//     "table_half_extents": [x, y, z] }                             (optional)
struct DepthSidecar {
  CameraIntrinsics intrinsics;
  RigidTransform camera_pose;
  std::vector<InstanceLabel> instances;
  Vec3 table_half_extents{0.8, 0.6, 0.01};
};

DepthSidecar sidecar_from_json(const nlohmann::json& doc);
nlohmann::json sidecar_to_json(const DepthSidecar& sidecar);

/// Raw row-major little-endian float32 meters, width*height values.
DepthImage read_depth_raster(const std::string& path, int width, int height);
void write_depth_raster(const std::string& path, const DepthImage& depth);
/// Raw row-major uint8 instance labels (0 = background).
MaskImage read_mask_raster(const std::string& path, int width, int height);
void write_mask_raster(const std::string& path, const MaskImage& mask);

/// One object per sidecar instance (or one per distinct nonzero mask label
/// when the sidecar lists none, with category "unknown"). Ids follow labels.
SceneState ingest_depth(const DepthImage& depth, const MaskImage& mask, const DepthSidecar& sidecar);

}  // namespace sgbot
