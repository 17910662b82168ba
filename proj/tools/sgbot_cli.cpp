#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "sgbot/core/error.hpp"
#include "sgbot/graph/commonsense.hpp"
#include "sgbot/ingest/json_util.hpp"
#include "sgbot/ingest/scene_io.hpp"
#include "sgbot/service/config.hpp"
#include "sgbot/service/json_codec.hpp"
#include "sgbot/service/server.hpp"
#include "sgbot/sim/bench.hpp"

namespace {

using namespace sgbot;
using nlohmann::json;

constexpr int kExitError = 1;
constexpr int kExitFileNotFound = 2;
constexpr int kExitUsage = 64;

void report(const std::string& code, const std::string& detail) {
  std::cerr << json{{"error", code}, {"detail", detail}}.dump() << "\n";
}

ServiceConfig load_config(const std::string& path) {
  ServiceConfig cfg = path.empty() ? ServiceConfig{} : load_config_file(path);
  return apply_env_overrides(cfg, process_env());
}

void write_json(const std::string& path, const json& doc) { json_util::write_file(path, doc.dump(2) + "\n"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabletop rearrangement toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file");

  std::string depth, mask, intrinsics, out, scene_path, graph_path, goal_path, manifest_path, mode = "commonsense", addr;
  std::uint64_t seed = 0;
  double sigma = -1.0;

  auto* ingest = app.add_subcommand("ingest", "Depth raster and mask to Scene JSON");
  ingest->add_option("--depth", depth, "float32 depth raster")->required();
  ingest->add_option("--mask", mask, "uint8 instance mask raster")->required();
  ingest->add_option("--intrinsics", intrinsics, "sidecar JSON with intrinsics and camera pose")->required();
  ingest->add_option("--out", out, "Scene JSON output")->required();

  auto* graph = app.add_subcommand("graph", "Build or import a goal scene graph");
  graph->add_option("--scene", scene_path, "Scene JSON")->required();
  graph->add_option("--mode", mode, "commonsense or file")->check(CLI::IsMember({"commonsense", "file"}));
  graph->add_option("--graph", graph_path, "Graph JSON for file mode");
  graph->add_option("--out", out, "Graph JSON output")->required();

  auto* synth = app.add_subcommand("synth", "Synthesize a goal scene");
  synth->add_option("--scene", scene_path, "Scene JSON")->required();
  synth->add_option("--graph", graph_path, "Graph JSON")->required();
  synth->add_option("--seed", seed, "layout seed");
  synth->add_option("--out", out, "GoalScene JSON output")->required();

  auto* plan = app.add_subcommand("plan", "Plan the rearrangement");
  plan->add_option("--scene", scene_path, "Scene JSON")->required();
  plan->add_option("--goal", goal_path, "GoalScene JSON")->required();
  plan->add_option("--sigma", sigma, "occupancy threshold (m)");
  plan->add_option("--out", out, "Plan JSON output")->required();

  auto* bench = app.add_subcommand("bench", "Run a seeded benchmark");
  bench->add_option("--manifest", manifest_path, "manifest JSON")->required();

  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  serve->add_option("--addr", addr, "host:port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report("invalid_argument", e.what());
    return kExitUsage;
  }

  try {
    const ServiceConfig cfg = load_config(config_path);
    if (ingest->parsed()) {
      const DepthSidecar sidecar = sidecar_from_json(json_util::parse_text(json_util::read_file(intrinsics), intrinsics));
      const int w = sidecar.intrinsics.width, h = sidecar.intrinsics.height;
      const SceneState scene = ingest_depth(read_depth_raster(depth, w, h), read_mask_raster(mask, w, h), sidecar);
      write_json(out, scene_to_json(scene));
    } else if (graph->parsed()) {
      SceneState scene = load_scene_file(scene_path);
      SceneGraph g;
      if (mode == "file") {
        if (graph_path.empty()) throw Error(ErrorCode::kInvalidArgument, "--graph is required in file mode");
        g = load_graph_file(graph_path);
        for (const auto& n : g.nodes()) {
          if (!scene.find(n.id)) throw Error(ErrorCode::kUnknownReference, "graph node " + std::to_string(n.id) + " is not in the scene");
        }
      } else {
        const CategoryVocabulary vocab = CategoryVocabulary::standard();
        mark_obstacles(scene, vocab);
        g = build_commonsense_graph(scene.objects, vocab);
      }
      write_json(out, graph_to_json(g));
    } else if (synth->parsed()) {
      const SceneState scene = load_scene_file(scene_path);
      const SceneGraph g = load_graph_file(graph_path);
      LayoutParams params;
      params.grounding = cfg.grounding;
      write_json(out, goal_to_json(synthesize_goal(scene, g, seed, CategoryVocabulary::standard(), params)));
    } else if (plan->parsed()) {
      const SceneState scene = load_scene_file(scene_path);
      const GoalScene goal = goal_from_json(json_util::parse_text(json_util::read_file(goal_path), goal_path));
      PlannerConfig pc;
      pc.sigma = sigma >= 0.0 ? sigma : cfg.sigma;
      pc.icp = cfg.icp;
      write_json(out, plan_to_json(execute_plan(scene, goal, pc).second));
    } else if (bench->parsed()) {
      BenchManifest m = manifest_from_json(json_util::parse_text(json_util::read_file(manifest_path), manifest_path));
      const std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
      if (std::filesystem::path(m.out_dir).is_relative()) m.out_dir = (base / m.out_dir).string();
      std::filesystem::create_directories(m.out_dir);
      const auto runs = run_bench(m);
      std::cout << json{{"runs", runs.size()}, {"csv", (std::filesystem::path(m.out_dir) / "bench.csv").string()}}.dump() << "\n";
    } else if (serve->parsed()) {
      const HostPort hp = parse_addr(addr.empty() ? cfg.addr : addr);
      Service service(cfg);
      HttpServer server(service);
      const int port = server.bind(hp.host, hp.port);
      std::cerr << json{{"listening", hp.host + ":" + std::to_string(port)}}.dump() << std::endl;
      if (!server.listen()) throw Error(ErrorCode::kInvalidArgument, "server stopped unexpectedly");
    }
  } catch (const Error& e) {
    report(error_slug(e.code()), e.detail());
    return e.code() == ErrorCode::kFileNotFound ? kExitFileNotFound : kExitError;
  } catch (const std::filesystem::filesystem_error& e) {
    report("file_not_found", e.what());
    return kExitFileNotFound;
  }
  return 0;
}
