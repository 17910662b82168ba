#pragma once

#include <vector>

#include <json.hpp>

#include "sgbot/core/error.hpp"
#include "sgbot/graph/edits.hpp"
#include "sgbot/planner/planner.hpp"
#include "sgbot/synth/goal_scene.hpp"

namespace sgbot {

// Box JSON: {"center": [x,y,z], "half_extents": [x,y,z], "yaw": f}
nlohmann::json box_to_json(const Box3& box);
Box3 box_from_json(const nlohmann::json& doc, const std::string& path);

// Transform JSON: {"rotation": [9 floats row-major], "translation": [3 floats]}
nlohmann::json transform_to_json(const RigidTransform& t);
RigidTransform transform_from_json(const nlohmann::json& doc, const std::string& path);

// GoalScene JSON:
//   { "objects": [{"id": int, "box": Box, "points": [[x,y,z], ...],
//                  "source_id": int, "support_id": int (optional)}] }
nlohmann::json goal_to_json(const GoalScene& goal);
GoalScene goal_from_json(const nlohmann::json& doc);

// Plan JSON:
//   { "status": "complete|deadlock|step_limit",
//     "actions": [{"object_id": int, "kind": "move_to_goal|move_to_buffer",
//                  "rotation": [9], "translation": [3], "clearance": f}],
//     "snapshots": [{"boxes": [{"id": int, "box": Box}]}] }
// A non-finite clearance is written as null.
nlohmann::json action_to_json(const Action& action);
Action action_from_json(const nlohmann::json& doc, const std::string& path);
nlohmann::json snapshot_to_json(const SceneSnapshot& snapshot);
nlohmann::json plan_to_json(const Plan& plan);
Plan plan_from_json(const nlohmann::json& doc);

// GraphEdit JSON, one of:
//   {"op": "add_edge" | "remove_edge", "from": int, "to": int, "relation": label}
//   {"op": "remove_node", "id": int}
//   {"op": "set_category", "id": int, "category": str}
nlohmann::json edit_to_json(const GraphEdit& edit);
GraphEdit edit_from_json(const nlohmann::json& doc, const std::string& path);
std::vector<GraphEdit> edits_from_json(const nlohmann::json& doc, const std::string& path);

/// {"error": "InvariantViolation", "code": "invariant_violation", "detail": str, "index": int (optional)}
nlohmann::json error_to_json(const Error& e);

/// Vocabularies the editor enumerates: relations, edit ops, action kinds, plan statuses.
nlohmann::json schema_json();

}  // namespace sgbot
