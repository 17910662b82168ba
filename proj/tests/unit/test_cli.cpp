#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "sgbot/ingest/json_util.hpp"
#include "sgbot/ingest/scene_io.hpp"
#include "sgbot/service/json_codec.hpp"

using namespace sgbot;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string err;
};

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / name) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& f) const { return (path_ / f).string(); }

 private:
  fs::path path_;
};

Run cli(const TempDir& dir, const std::string& args) {
  const std::string err = dir / "stderr.txt";
  const int status = std::system((std::string(SGBOT_CLI_PATH) + " " + args + " >/dev/null 2>" + err).c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = json_util::read_file(err);
  return r;
}

void write_scene(const std::string& path) {
  SceneState s;
  s.objects = {test::placed(1, "plate", 0.45, -0.3, 0.2), test::placed(2, "fork", -0.5, 0.35, 1.1),
               test::placed(3, "knife", 0.3, 0.35, -0.4)};
  json_util::write_file(path, save_scene(s));
}

}  // namespace

TEST_CASE("graph, synth and plan from files") {
  TempDir dir("sgbot_cli_pipeline");
  write_scene(dir / "scene.json");
  Run r = cli(dir, "graph --scene " + (dir / "scene.json") + " --mode commonsense --out " + (dir / "g.json"));
  REQUIRE(r.code == 0);
  const SceneGraph g = load_graph_file(dir / "g.json");
  CHECK(g.edges().size() == 2);
  CHECK(g.has_edge({2, 1, RelationLabel::kLeft}));
  CHECK(g.has_edge({3, 1, RelationLabel::kRight}));

  r = cli(dir, "graph --scene " + (dir / "scene.json") + " --mode file --graph " + (dir / "g.json") + " --out " + (dir / "g2.json"));
  REQUIRE(r.code == 0);
  CHECK(load_graph_file(dir / "g2.json") == g);

  r = cli(dir, "synth --scene " + (dir / "scene.json") + " --graph " + (dir / "g.json") + " --seed 11 --out " + (dir / "goal.json"));
  REQUIRE(r.code == 0);
  r = cli(dir, "plan --scene " + (dir / "scene.json") + " --goal " + (dir / "goal.json") + " --sigma 0.01 --out " + (dir / "plan.json"));
  REQUIRE(r.code == 0);
  const json plan = json::parse(json_util::read_file(dir / "plan.json"));
  CHECK(plan["status"] == "complete");
  CHECK(plan["actions"].size() == 3);

  const GoalScene goal = synthesize_goal(load_scene_file(dir / "scene.json"), g, 11);
  CHECK(json::parse(json_util::read_file(dir / "goal.json")) == json::parse(goal_to_json(goal).dump()));
  CHECK(plan == json::parse(plan_to_json(execute_plan(load_scene_file(dir / "scene.json"), goal).second).dump()));
}

TEST_CASE("missing goal file exits with code 2") {
  TempDir dir("sgbot_cli_missing");
  write_scene(dir / "scene.json");
  const Run r = cli(dir, "plan --scene " + (dir / "scene.json") + " --goal " + (dir / "absent.json") + " --sigma 0.01 --out " + (dir / "p.json"));
  CHECK(r.code == 2);
  const json err = json::parse(r.err);
  CHECK(err["error"] == "file_not_found");
  CHECK(err["detail"].get<std::string>().find("absent.json") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "p.json"));
}

TEST_CASE("errors are single json objects") {
  TempDir dir("sgbot_cli_errors");
  json_util::write_file(dir / "bad.json", "{\"objects\": [");
  Run r = cli(dir, "graph --scene " + (dir / "bad.json") + " --out " + (dir / "g.json"));
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "parse_error");
  r = cli(dir, "graph --scene");
  CHECK(r.code == 64);
  CHECK(json::parse(r.err)["error"] == "invalid_argument");
  r = cli(dir, "frobnicate");
  CHECK(r.code == 64);
}

TEST_CASE("ingest rasters") {
  TempDir dir("sgbot_cli_ingest");
  DepthSidecar side;
  side.intrinsics = {60.0, 60.0, 19.5, 14.5, 40, 30};
  side.camera_pose = {rot_x(kPi), Vec3(0, 0, 1.0)};
  side.instances = {{1, "plate"}, {2, "cup"}};
  DepthImage d{40, 30, std::vector<float>(1200, 0.99f)};
  MaskImage m{40, 30, std::vector<std::uint8_t>(1200, 0)};
  for (int v = 4; v < 12; ++v) {
    for (int u = 4; u < 14; ++u) m.data[v * 40 + u] = 1;
  }
  for (int v = 16; v < 24; ++v) {
    for (int u = 24; u < 32; ++u) {
      m.data[v * 40 + u] = 2;
      d.data[v * 40 + u] = static_cast<float>(0.92 + 0.001 * u);
    }
  }
  write_depth_raster(dir / "d.raw", d);
  write_mask_raster(dir / "m.raw", m);
  json_util::write_file(dir / "side.json", sidecar_to_json(side).dump());
  const Run r = cli(dir, "ingest --depth " + (dir / "d.raw") + " --mask " + (dir / "m.raw") + " --intrinsics " + (dir / "side.json") +
                             " --out " + (dir / "scene.json"));
  REQUIRE(r.code == 0);
  const SceneState s = load_scene_file(dir / "scene.json");
  REQUIRE(s.objects.size() == 2);
  CHECK(s.objects[0].cloud.size() == 80);
  CHECK(s.objects[1].category == "cup");
}

TEST_CASE("bench twice gives identical csv") {
  TempDir dir("sgbot_cli_bench");
  json_util::write_file(dir / "m.json", R"({"seeds":[2,0],"out_dir":"out","min_objects":2,"max_objects":3})");
  REQUIRE(cli(dir, "bench --manifest " + (dir / "m.json")).code == 0);
  const std::string first = json_util::read_file(dir / "out/bench.csv");
  REQUIRE(cli(dir, "bench --manifest " + (dir / "m.json")).code == 0);
  CHECK(json_util::read_file(dir / "out/bench.csv") == first);
  CHECK(fs::exists(dir / "out/report_0.json"));
  CHECK(fs::exists(dir / "out/report_2.json"));
}
