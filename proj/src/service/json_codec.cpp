#include "sgbot/service/json_codec.hpp"

#include <cmath>

#include "sgbot/ingest/json_util.hpp"

namespace sgbot {

using json_util::json;

namespace {

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& array_field(const json& doc, const char* key, const std::string& path) {
  const json& v = json_util::field(doc, key, path);
  if (!v.is_array()) throw Error(ErrorCode::kSchemaError, path + "." + key + ": expected an array");
  return v;
}

void require_object(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw Error(ErrorCode::kSchemaError, path + ": expected an object");
}

RelationLabel relation_field(const json& doc, const std::string& path) {
  const std::string s = json_util::string(json_util::field(doc, "relation", path), path + ".relation");
  const auto r = parse_relation(s);
  if (!r) throw Error(ErrorCode::kSchemaError, path + ".relation: unknown relation '" + s + "'");
  return *r;
}

}  // namespace

json box_to_json(const Box3& box) {
  return json{{"center", json_util::to_json(box.center)},
              {"half_extents", json_util::to_json(box.half_extents)},
              {"yaw", box.yaw}};
}

Box3 box_from_json(const json& doc, const std::string& path) {
  require_object(doc, path);
  Box3 box;
  box.center = json_util::vec3(json_util::field(doc, "center", path), path + ".center");
  box.half_extents = json_util::vec3(json_util::field(doc, "half_extents", path), path + ".half_extents");
  box.yaw = json_util::number(json_util::field(doc, "yaw", path), path + ".yaw");
  if (!box.is_valid()) throw Error(ErrorCode::kSchemaError, path + ": invalid box");
  return box;
}

json transform_to_json(const RigidTransform& t) {
  return json{{"rotation", json_util::to_json_row_major(t.rotation)}, {"translation", json_util::to_json(t.translation)}};
}

RigidTransform transform_from_json(const json& doc, const std::string& path) {
  require_object(doc, path);
  RigidTransform t;
  t.rotation = json_util::mat3_row_major(json_util::field(doc, "rotation", path), path + ".rotation");
  t.translation = json_util::vec3(json_util::field(doc, "translation", path), path + ".translation");
  if (!t.is_proper(1e-6)) throw Error(ErrorCode::kSchemaError, path + ".rotation: not a proper rotation");
  return t;
}

json goal_to_json(const GoalScene& goal) {
  json objects = json::array();
  for (const auto& g : goal.objects) {
    json o{{"id", g.id}, {"box", box_to_json(g.box)}, {"points", json_util::points_to_json(g.cloud)}, {"source_id", g.source_id}};
    if (g.support_id) o["support_id"] = *g.support_id;
    objects.push_back(std::move(o));
  }
  return json{{"objects", std::move(objects)}};
}

GoalScene goal_from_json(const json& doc) {
  require_object(doc, "goal");
  const json& objects = array_field(doc, "objects", "goal");
  GoalScene goal;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string path = at("goal.objects", i);
    const json& o = objects[i];
    require_object(o, path);
    GoalObject g;
    g.id = json_util::integer(json_util::field(o, "id", path), path + ".id");
    g.box = box_from_json(json_util::field(o, "box", path), path + ".box");
    g.cloud = json_util::points(json_util::field(o, "points", path), path + ".points");
    g.source_id = json_util::integer(json_util::field(o, "source_id", path), path + ".source_id");
    if (const json* v = json_util::optional_field(o, "support_id")) g.support_id = json_util::integer(*v, path + ".support_id");
    if (g.cloud.empty()) throw Error(ErrorCode::kSchemaError, path + ".points: empty cloud");
    if (goal.find(g.id)) throw Error(ErrorCode::kSchemaError, path + ".id: duplicate id " + std::to_string(g.id));
    goal.objects.push_back(std::move(g));
  }
  std::sort(goal.objects.begin(), goal.objects.end(), [](const GoalObject& a, const GoalObject& b) { return a.id < b.id; });
  return goal;
}

json action_to_json(const Action& a) {
  json out{{"object_id", a.object_id},
           {"kind", std::string(to_string(a.kind))},
           {"rotation", json_util::to_json_row_major(a.transform.rotation)},
           {"translation", json_util::to_json(a.transform.translation)}};
  out["clearance"] = std::isfinite(a.clearance) ? json(a.clearance) : json(nullptr);
  return out;
}

Action action_from_json(const json& doc, const std::string& path) {
  require_object(doc, path);
  Action a;
  a.object_id = json_util::integer(json_util::field(doc, "object_id", path), path + ".object_id");
  a.kind = parse_action_kind(json_util::string(json_util::field(doc, "kind", path), path + ".kind"));
  a.transform = transform_from_json(doc, path);
  const json& c = json_util::field(doc, "clearance", path);
  a.clearance = c.is_null() ? std::numeric_limits<double>::infinity() : json_util::number(c, path + ".clearance");
  return a;
}

json snapshot_to_json(const SceneSnapshot& s) {
  json boxes = json::array();
  for (const auto& [id, box] : s.boxes) boxes.push_back({{"id", id}, {"box", box_to_json(box)}});
  return json{{"boxes", std::move(boxes)}};
}

json plan_to_json(const Plan& plan) {
  json actions = json::array();
  for (const auto& a : plan.actions) actions.push_back(action_to_json(a));
  json snapshots = json::array();
  for (const auto& s : plan.snapshots) snapshots.push_back(snapshot_to_json(s));
  return json{{"status", std::string(to_string(plan.status))}, {"actions", std::move(actions)}, {"snapshots", std::move(snapshots)}};
}

Plan plan_from_json(const json& doc) {
  require_object(doc, "plan");
  Plan plan;
  plan.status = parse_plan_status(json_util::string(json_util::field(doc, "status", "plan"), "plan.status"));
  const json& actions = array_field(doc, "actions", "plan");
  for (std::size_t i = 0; i < actions.size(); ++i) plan.actions.push_back(action_from_json(actions[i], at("plan.actions", i)));
  if (const json* snaps = json_util::optional_field(doc, "snapshots")) {
    if (!snaps->is_array()) throw Error(ErrorCode::kSchemaError, "plan.snapshots: expected an array");
    for (std::size_t i = 0; i < snaps->size(); ++i) {
      const std::string path = at("plan.snapshots", i);
      require_object((*snaps)[i], path);
      const json& boxes = array_field((*snaps)[i], "boxes", path);
      SceneSnapshot s;
      for (std::size_t k = 0; k < boxes.size(); ++k) {
        const std::string bp = at(path + ".boxes", k);
        require_object(boxes[k], bp);
        const int id = json_util::integer(json_util::field(boxes[k], "id", bp), bp + ".id");
        s.boxes.emplace(id, box_from_json(json_util::field(boxes[k], "box", bp), bp + ".box"));
      }
      plan.snapshots.push_back(std::move(s));
    }
  }
  return plan;
}

json edit_to_json(const GraphEdit& edit) {
  return std::visit(
      [](const auto& e) -> json {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, AddEdge> || std::is_same_v<T, RemoveEdge>) {
          return json{{"op", std::is_same_v<T, AddEdge> ? "add_edge" : "remove_edge"},
                      {"from", e.from},
                      {"to", e.to},
                      {"relation", std::string(to_string(e.relation))}};
        } else if constexpr (std::is_same_v<T, RemoveNode>) {
          return json{{"op", "remove_node"}, {"id", e.id}};
        } else {
          return json{{"op", "set_category"}, {"id", e.id}, {"category", e.category}};
        }
      },
      edit);
}

GraphEdit edit_from_json(const json& doc, const std::string& path) {
  require_object(doc, path);
  const std::string op = json_util::string(json_util::field(doc, "op", path), path + ".op");
  auto id_of = [&](const char* key) { return json_util::integer(json_util::field(doc, key, path), path + "." + key); };
  if (op == "add_edge") return AddEdge{id_of("from"), id_of("to"), relation_field(doc, path)};
  if (op == "remove_edge") return RemoveEdge{id_of("from"), id_of("to"), relation_field(doc, path)};
  if (op == "remove_node") return RemoveNode{id_of("id")};
  if (op == "set_category") {
    return SetCategory{id_of("id"), json_util::string(json_util::field(doc, "category", path), path + ".category")};
  }
  throw Error(ErrorCode::kSchemaError, path + ".op: unknown edit op '" + op + "'");
}

std::vector<GraphEdit> edits_from_json(const json& doc, const std::string& path) {
  if (!doc.is_array()) throw Error(ErrorCode::kSchemaError, path + ": expected an array");
  std::vector<GraphEdit> edits;
  for (std::size_t i = 0; i < doc.size(); ++i) edits.push_back(edit_from_json(doc[i], at(path, i)));
  return edits;
}

json error_to_json(const Error& e) {
  json out{{"error", std::string(error_name(e.code()))}, {"code", error_slug(e.code())}, {"detail", e.detail()}};
  if (e.index()) out["index"] = *e.index();
  return out;
}

json schema_json() {
  json relations = json::array();
  for (RelationLabel r : kAllRelations) {
    const auto inv = inverse(r);
    relations.push_back({{"name", std::string(to_string(r))},
                         {"directional", is_directional(r)},
                         {"inverse", inv ? json(std::string(to_string(*inv))) : json(nullptr)}});
  }
  return json{{"relations", std::move(relations)},
              {"edit_ops", {"add_edge", "remove_edge", "remove_node", "set_category"}},
              {"action_kinds", {"move_to_goal", "move_to_buffer"}},
              {"plan_statuses", {"complete", "deadlock", "step_limit"}}};
}

}  // namespace sgbot
