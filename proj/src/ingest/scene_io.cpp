#include "sgbot/ingest/scene_io.hpp"

#include <algorithm>
#include <cstring>
#include <set>
#include <sstream>

#include "sgbot/core/error.hpp"
#include "sgbot/ingest/json_util.hpp"

namespace sgbot {

using nlohmann::json;
namespace ju = json_util;

ObjectInstance make_object(int id, std::string category, PointCloud cloud, bool is_obstacle) {
  ObjectInstance obj;
  obj.id = id;
  obj.category = std::move(category);
  obj.box = box_from_cloud(cloud, YawMode::kPrincipalAxis);
  obj.cloud = std::move(cloud);
  obj.is_obstacle = is_obstacle;
  return obj;
}

const ObjectInstance* SceneState::find(int id) const {
  auto it = std::find_if(objects.begin(), objects.end(), [id](const ObjectInstance& o) { return o.id == id; });
  return it == objects.end() ? nullptr : &*it;
}

ObjectInstance* SceneState::find(int id) {
  auto it = std::find_if(objects.begin(), objects.end(), [id](const ObjectInstance& o) { return o.id == id; });
  return it == objects.end() ? nullptr : &*it;
}

std::vector<int> SceneState::ids() const {
  std::vector<int> out;
  for (const auto& o : objects) out.push_back(o.id);
  return out;
}

std::string check_scene(const SceneState& scene) {
  if (!scene.table.is_valid()) return "table extent must have positive half extents";
  constexpr double kTableSlack = 0.05;
  const Vec3 hull = scene.table.hull_half_extents();
  std::set<int> ids;
  for (const auto& o : scene.objects) {
    const std::string name = "object " + std::to_string(o.id);
    if (!ids.insert(o.id).second) return "duplicate object id " + std::to_string(o.id);
    if (o.cloud.empty()) return name + " has an empty cloud";
    if (!o.cloud.all_finite()) return name + " has non-finite points";
    for (const Vec3& p : o.cloud.points) {
      if (std::abs(p.x() - scene.table.center.x()) > hull.x() + kTableSlack ||
          std::abs(p.y() - scene.table.center.y()) > hull.y() + kTableSlack) {
        return name + " lies outside the table extent";
      }
      if (!o.box.contains(p, 1e-6)) return name + " box does not contain its cloud";
    }
  }
  return {};
}

SceneState scene_from_json(const json& doc) {
  SceneState scene;
  const json& table = ju::field(doc, "table", "$");
  scene.table.center = Vec3::Zero();
  scene.table.yaw = 0.0;
  scene.table.half_extents = ju::vec3(ju::field(table, "half_extents", "$.table"), "$.table.half_extents");
  if (!scene.table.is_valid()) {
    throw Error(ErrorCode::kSchemaError, "$.table.half_extents: must be positive");
  }
  const json& objects = ju::field(doc, "objects", "$");
  if (!objects.is_array()) throw Error(ErrorCode::kSchemaError, "$.objects: expected an array");
  std::set<int> ids;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string path = "$.objects[" + std::to_string(i) + "]";
    const json& o = objects[i];
    const int id = ju::integer(ju::field(o, "id", path), path + ".id");
    if (!ids.insert(id).second) {
      throw Error(ErrorCode::kSchemaError, path + ".id: duplicate object id " + std::to_string(id));
    }
    std::string category = ju::string(ju::field(o, "category", path), path + ".category");
    PointCloud cloud = ju::points(ju::field(o, "points", path), path + ".points");
    if (cloud.empty()) throw Error(ErrorCode::kSchemaError, path + ".points: cloud must be non-empty");
    bool obstacle = false;
    if (const json* flag = ju::optional_field(o, "is_obstacle")) obstacle = ju::boolean(*flag, path + ".is_obstacle");
    try {
      scene.objects.push_back(make_object(id, std::move(category), std::move(cloud), obstacle));
    } catch (const Error& e) {
      throw Error(ErrorCode::kSchemaError, path + ".points: " + e.detail());
    }
  }
  if (auto problem = check_scene(scene); !problem.empty()) {
    throw Error(ErrorCode::kSchemaError, problem);
  }
  return scene;
}

json scene_to_json(const SceneState& scene) {
  json objects = json::array();
  for (const auto& o : scene.objects) {
    objects.push_back({{"id", o.id},
                       {"category", o.category},
                       {"points", ju::points_to_json(o.cloud)},
                       {"is_obstacle", o.is_obstacle}});
  }
  return {{"table", {{"half_extents", ju::to_json(scene.table.half_extents)}}}, {"objects", objects}};
}

SceneState load_scene(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return scene_from_json(ju::parse_text(ss.str(), "<stream>"));
}

SceneState load_scene_file(const std::string& path) {
  return scene_from_json(ju::parse_text(ju::read_file(path), path));
}

std::string save_scene(const SceneState& scene) { return scene_to_json(scene).dump(); }

SceneGraph graph_from_json(const json& doc) {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  const json& jn = ju::field(doc, "nodes", "$");
  if (!jn.is_array()) throw Error(ErrorCode::kSchemaError, "$.nodes: expected an array");
  for (std::size_t i = 0; i < jn.size(); ++i) {
    const std::string path = "$.nodes[" + std::to_string(i) + "]";
    nodes.push_back({ju::integer(ju::field(jn[i], "id", path), path + ".id"),
                     ju::string(ju::field(jn[i], "category", path), path + ".category")});
  }
  if (const json* je = ju::optional_field(doc, "edges")) {
    if (!je->is_array()) throw Error(ErrorCode::kSchemaError, "$.edges: expected an array");
    for (std::size_t i = 0; i < je->size(); ++i) {
      const std::string path = "$.edges[" + std::to_string(i) + "]";
      const json& e = (*je)[i];
      const std::string rel = ju::string(ju::field(e, "relation", path), path + ".relation");
      auto label = parse_relation(rel);
      if (!label) throw Error(ErrorCode::kSchemaError, path + ".relation: unknown relation '" + rel + "'");
      edges.push_back({ju::integer(ju::field(e, "from", path), path + ".from"),
                       ju::integer(ju::field(e, "to", path), path + ".to"), *label});
    }
  }
  if (auto problem = SceneGraph::check(nodes, edges); !problem.empty()) {
    throw Error(ErrorCode::kSchemaError, problem);
  }
  return SceneGraph(std::move(nodes), std::move(edges));
}

json graph_to_json(const SceneGraph& graph) {
  json nodes = json::array();
  for (const auto& n : graph.nodes()) nodes.push_back({{"id", n.id}, {"category", n.category}});
  json edges = json::array();
  for (const auto& e : graph.edges()) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"relation", std::string(to_string(e.relation))}});
  }
  return {{"nodes", nodes}, {"edges", edges}};
}

SceneGraph load_graph_file(const std::string& path) {
  return graph_from_json(ju::parse_text(ju::read_file(path), path));
}

std::string save_graph(const SceneGraph& graph) { return graph_to_json(graph).dump(2); }

DepthSidecar sidecar_from_json(const json& doc) {
  DepthSidecar s;
  s.intrinsics.fx = ju::number(ju::field(doc, "fx", "$"), "$.fx");
  s.intrinsics.fy = ju::number(ju::field(doc, "fy", "$"), "$.fy");
  s.intrinsics.cx = ju::number(ju::field(doc, "cx", "$"), "$.cx");
  s.intrinsics.cy = ju::number(ju::field(doc, "cy", "$"), "$.cy");
  s.intrinsics.width = ju::integer(ju::field(doc, "width", "$"), "$.width");
  s.intrinsics.height = ju::integer(ju::field(doc, "height", "$"), "$.height");
  if (!s.intrinsics.is_valid()) throw Error(ErrorCode::kSchemaError, "$: invalid intrinsics");
  if (const json* pose = ju::optional_field(doc, "camera_pose")) {
    s.camera_pose.rotation = ju::mat3_row_major(ju::field(*pose, "rotation", "$.camera_pose"),
                                                "$.camera_pose.rotation");
    s.camera_pose.translation = ju::vec3(ju::field(*pose, "translation", "$.camera_pose"),
                                         "$.camera_pose.translation");
    if (!s.camera_pose.is_proper(1e-6)) {
      throw Error(ErrorCode::kSchemaError, "$.camera_pose.rotation: not a proper rotation");
    }
  }
  if (const json* inst = ju::optional_field(doc, "instances")) {
    for (std::size_t i = 0; i < inst->size(); ++i) {
      const std::string path = "$.instances[" + std::to_string(i) + "]";
      const int label = ju::integer(ju::field((*inst)[i], "label", path), path + ".label");
      if (label < 1 || label > 255) throw Error(ErrorCode::kSchemaError, path + ".label: must be 1..255");
      s.instances.push_back({static_cast<std::uint8_t>(label),
                             ju::string(ju::field((*inst)[i], "category", path), path + ".category")});
    }
  }
  if (const json* t = ju::optional_field(doc, "table_half_extents")) {
    s.table_half_extents = ju::vec3(*t, "$.table_half_extents");
  }
  return s;
}

json sidecar_to_json(const DepthSidecar& s) {
  json instances = json::array();
  for (const auto& i : s.instances) instances.push_back({{"label", i.label}, {"category", i.category}});
  return {{"fx", s.intrinsics.fx},
          {"fy", s.intrinsics.fy},
          {"cx", s.intrinsics.cx},
          {"cy", s.intrinsics.cy},
          {"width", s.intrinsics.width},
          {"height", s.intrinsics.height},
          {"camera_pose",
           {{"rotation", ju::to_json_row_major(s.camera_pose.rotation)},
            {"translation", ju::to_json(s.camera_pose.translation)}}},
          {"instances", instances},
          {"table_half_extents", ju::to_json(s.table_half_extents)}};
}

namespace {

template <typename T>
Raster<T> read_raster(const std::string& path, int width, int height) {
  const std::string bytes = ju::read_file(path);
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() != count * sizeof(T)) {
    throw Error(ErrorCode::kShapeMismatch, path + ": expected " + std::to_string(count * sizeof(T)) +
                                               " bytes, found " + std::to_string(bytes.size()));
  }
  Raster<T> r;
  r.width = width;
  r.height = height;
  r.data.resize(count);
  std::memcpy(r.data.data(), bytes.data(), bytes.size());
  return r;
}

template <typename T>
void write_raster(const std::string& path, const Raster<T>& r) {
  std::string bytes(r.data.size() * sizeof(T), '\0');
  std::memcpy(bytes.data(), r.data.data(), bytes.size());
  ju::write_file(path, bytes);
}

}  // namespace

DepthImage read_depth_raster(const std::string& path, int width, int height) {
  return read_raster<float>(path, width, height);
}
void write_depth_raster(const std::string& path, const DepthImage& depth) { write_raster(path, depth); }
MaskImage read_mask_raster(const std::string& path, int width, int height) {
  return read_raster<std::uint8_t>(path, width, height);
}
void write_mask_raster(const std::string& path, const MaskImage& mask) { write_raster(path, mask); }

SceneState ingest_depth(const DepthImage& depth, const MaskImage& mask, const DepthSidecar& sidecar) {
  std::vector<InstanceLabel> instances = sidecar.instances;
  if (instances.empty()) {
    std::set<std::uint8_t> labels(mask.data.begin(), mask.data.end());
    labels.erase(0);
    for (auto l : labels) instances.push_back({l, "unknown"});
  }
  SceneState scene;
  scene.table = Box3{Vec3::Zero(), sidecar.table_half_extents, 0.0};
  for (const auto& inst : instances) {
    PointCloud cloud = back_project(depth, mask, sidecar.intrinsics, sidecar.camera_pose, inst.label);
    scene.objects.push_back(make_object(inst.label, inst.category, std::move(cloud)));
  }
  return scene;
}

}  // namespace sgbot
