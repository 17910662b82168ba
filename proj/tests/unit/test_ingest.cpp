#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "sgbot/core/error.hpp"
#include "sgbot/ingest/back_project.hpp"
#include "sgbot/ingest/json_util.hpp"
#include "sgbot/ingest/scene_io.hpp"

using namespace sgbot;
using nlohmann::json;

namespace {

CameraIntrinsics small_camera() { return {100.0, 100.0, 4.0, 3.0, 8, 6}; }

DepthImage depth_of(const CameraIntrinsics& k, float fill = 0.0f) {
  return {k.width, k.height, std::vector<float>(static_cast<std::size_t>(k.width * k.height), fill)};
}

MaskImage mask_of(const CameraIntrinsics& k, std::uint8_t fill = 0) {
  return {k.width, k.height, std::vector<std::uint8_t>(static_cast<std::size_t>(k.width * k.height), fill)};
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("back_project examples") {
  const CameraIntrinsics k = small_camera();
  DepthImage d = depth_of(k);
  MaskImage m = mask_of(k);
  d.data[3 * 8 + 4] = 1.0f;
  m.data[3 * 8 + 4] = 1;
  PointCloud c = back_project(d, m, k, RigidTransform::identity());
  REQUIRE(c.size() == 1);
  CHECK(c.points[0] == Vec3(0, 0, 1.0));

  // Pixel (cx + fx, cy) is outside an 8-pixel image, so use a wider camera.
  const CameraIntrinsics wide{100.0, 100.0, 4.0, 3.0, 128, 6};
  DepthImage d2 = depth_of(wide);
  MaskImage m2 = mask_of(wide);
  d2.data[3 * 128 + 104] = 2.0f;
  m2.data[3 * 128 + 104] = 1;
  c = back_project(d2, m2, wide, RigidTransform::identity());
  REQUIRE(c.size() == 1);
  const Vec3 by_hand((104 - 4.0) * 2.0 / 100.0, (3 - 3.0) * 2.0 / 100.0, 2.0);
  CHECK((c.points[0] - by_hand).norm() < 1e-12);
  CHECK((c.points[0] - Vec3(2.0, 0, 2.0)).norm() < 1e-12);
}

TEST_CASE("back_project errors and pose") {
  const CameraIntrinsics k = small_camera();
  DepthImage d = depth_of(k);
  MaskImage m = mask_of(k, 1);
  CHECK(code_of([&] { back_project(d, m, k, {}); }) == ErrorCode::kEmptyMask);
  MaskImage wrong{4, 4, std::vector<std::uint8_t>(16, 1)};
  CHECK(code_of([&] { back_project(depth_of(k, 1.0f), wrong, k, {}); }) == ErrorCode::kShapeMismatch);

  d = depth_of(k, 1.5f);
  m = mask_of(k);
  m.data[0] = 2;
  m.data[5] = 3;
  const RigidTransform pose{rot_x(kPi), Vec3(0, 0, 1.5)};
  const PointCloud all = back_project(d, m, k, pose);
  CHECK(all.size() == 2);
  CHECK(all.frame == Frame::kTable);
  for (const Vec3& p : all.points) CHECK(std::abs(p.z()) < 1e-12);
  CHECK(back_project(d, m, k, pose, 3).size() == 1);
}

TEST_CASE("back_project projects back to the same pixel") {
  const CameraIntrinsics k{525.0, 525.0, 31.5, 23.5, 64, 48};
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> z(0.3, 3.0);
  DepthImage d = depth_of(k);
  MaskImage m = mask_of(k, 1);
  for (auto& v : d.data) v = static_cast<float>(z(rng));
  const PointCloud c = back_project(d, m, k, {});
  REQUIRE(c.size() == d.data.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Eigen::Vector2d uv = project(k, c.points[i]);
    CHECK(std::abs(uv.x() - static_cast<double>(i % 64)) < 1e-9);
    CHECK(std::abs(uv.y() - static_cast<double>(i / 64)) < 1e-9);
  }
}

TEST_CASE("load_scene minimal document and errors") {
  std::istringstream in(R"({"table":{"half_extents":[0.8,0.6,0.01]},"objects":[{"id":1,"category":"cup","points":[[0,0,0],[0.1,0,0],[0,0.1,0.05]]}]})");
  const SceneState s = load_scene(in);
  CHECK(s.objects.size() == 1);
  CHECK(s.objects[0].category == "cup");
  CHECK_FALSE(s.objects[0].is_obstacle);
  for (const Vec3& p : s.objects[0].cloud.points) CHECK(s.objects[0].box.contains(p, 1e-6));

  std::istringstream dup(R"({"table":{"half_extents":[0.8,0.6,0.01]},"objects":[{"id":1,"category":"cup","points":[[0,0,0],[0.1,0,0],[0,0.1,0]]},
                                       {"id":1,"category":"cup","points":[[0,0,0],[0.1,0,0],[0,0.1,0]]}]})");
  CHECK(code_of([&] { load_scene(dup); }) == ErrorCode::kSchemaError);
  std::istringstream broken("{\"objects\": [\n  {\"id\": 1,,}]}");
  try {
    load_scene(broken);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParseError);
    CHECK(e.detail().find(":2:") != std::string::npos);
  }
  std::istringstream bad_field(R"({"table":{"half_extents":[0.8,0.6,0.01]},"objects":[{"id":"one","category":"cup","points":[]}]})");
  try {
    load_scene(bad_field);
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSchemaError);
    CHECK(e.detail().find("objects[0].id") != std::string::npos);
  }
  std::istringstream off_table(R"({"table":{"half_extents":[0.8,0.6,0.01]},"objects":[{"id":1,"category":"cup","points":[[5,0,0],[5.1,0,0],[5,0.1,0]]}]})");
  CHECK(code_of([&] { load_scene(off_table); }) == ErrorCode::kSchemaError);
  CHECK(code_of([] { load_scene_file("/nonexistent/scene.json"); }) == ErrorCode::kFileNotFound);
}

TEST_CASE("save and load round trip is byte stable") {
  SceneState s;
  std::mt19937_64 rng(22);
  for (int i = 0; i < 10; ++i) {
    PointCloud c = test::random_cloud(rng, 25, 0.05);
    for (Vec3& p : c.points) p += Vec3(-0.6 + 0.13 * i, 0.1 * (i % 3), 0.06);
    s.objects.push_back(make_object(i + 1, i % 2 ? "fork" : "plate", c, i == 9));
  }
  const std::string first = save_scene(s);
  std::istringstream in(first);
  const SceneState loaded = load_scene(in);
  CHECK(save_scene(loaded) == first);
  REQUIRE(loaded.objects.size() == s.objects.size());
  for (std::size_t i = 0; i < s.objects.size(); ++i) {
    CHECK(loaded.objects[i].id == s.objects[i].id);
    CHECK(loaded.objects[i].is_obstacle == s.objects[i].is_obstacle);
    for (std::size_t k = 0; k < s.objects[i].cloud.size(); ++k) {
      CHECK((loaded.objects[i].cloud.points[k] - s.objects[i].cloud.points[k]).norm() <= 1e-9);
    }
  }
  CHECK(loaded.table.half_extents == s.table.half_extents);
}

TEST_CASE("graph json round trip") {
  const SceneGraph g({{1, "plate"}, {2, "fork"}, {3, "knife"}},
                     {{2, 1, RelationLabel::kLeft}, {3, 1, RelationLabel::kRight}});
  CHECK(graph_from_json(graph_to_json(g)) == g);
  const json bad = json::parse(R"({"nodes":[{"id":1,"category":"plate"}],"edges":[{"from":1,"to":1,"relation":"left"}]})");
  CHECK(code_of([&] { graph_from_json(bad); }) == ErrorCode::kSchemaError);
  const json unknown = json::parse(R"({"nodes":[],"edges":[{"from":1,"to":2,"relation":"above"}]})");
  CHECK(code_of([&] { graph_from_json(unknown); }) == ErrorCode::kSchemaError);
}

TEST_CASE("ingest_depth from rasters on disk") {
  const auto dir = std::filesystem::temp_directory_path() / "sgbot_ingest_test";
  std::filesystem::create_directories(dir);
  DepthSidecar side;
  side.intrinsics = {50.0, 50.0, 15.5, 11.5, 32, 24};
  side.camera_pose = {rot_x(kPi), Vec3(0, 0, 1.0)};
  side.instances = {{1, "plate"}, {2, "hammer"}};
  DepthImage d = depth_of(side.intrinsics, 0.98f);
  MaskImage m = mask_of(side.intrinsics);
  for (int v = 2; v < 8; ++v) {
    for (int u = 2; u < 10; ++u) m.data[v * 32 + u] = 1;
  }
  for (int v = 14; v < 20; ++v) {
    for (int u = 20; u < 28; ++u) {
      m.data[v * 32 + u] = 2;
      d.data[v * 32 + u] = static_cast<float>(0.9 + 0.002 * (u + v));
    }
  }
  write_depth_raster((dir / "d.raw").string(), d);
  write_mask_raster((dir / "m.raw").string(), m);
  const DepthImage d2 = read_depth_raster((dir / "d.raw").string(), 32, 24);
  const MaskImage m2 = read_mask_raster((dir / "m.raw").string(), 32, 24);
  CHECK(d2.data == d.data);
  CHECK(m2.data == m.data);
  CHECK(code_of([&] { read_depth_raster((dir / "d.raw").string(), 33, 24); }) == ErrorCode::kShapeMismatch);

  const DepthSidecar parsed = sidecar_from_json(sidecar_to_json(side));
  CHECK(parsed.instances.size() == 2);
  CHECK((parsed.camera_pose.rotation - side.camera_pose.rotation).norm() < 1e-12);
  const SceneState s = ingest_depth(d2, m2, parsed);
  REQUIRE(s.objects.size() == 2);
  CHECK(s.objects[0].id == 1);
  CHECK(s.objects[0].category == "plate");
  CHECK(s.objects[0].cloud.size() == 48);
  CHECK(s.objects[1].category == "hammer");
  std::filesystem::remove_all(dir);
}

TEST_CASE("json helpers report paths") {
  const json doc = json::parse(R"({"a":{"b":[1,2]}})");
  try {
    json_util::vec3(doc["a"]["b"], "doc.a.b");
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSchemaError);
    CHECK(e.detail().find("doc.a.b") != std::string::npos);
  }
  CHECK(json_util::to_json(Vec3(1, 2, 3)).dump() == "[1.0,2.0,3.0]");
  CHECK(json_util::mat3_row_major(json_util::to_json_row_major(rot_z(0.3)), "m") == rot_z(0.3));
}
