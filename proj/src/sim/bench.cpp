#include "sgbot/sim/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "sgbot/core/error.hpp"
#include "sgbot/ingest/json_util.hpp"
#include "sgbot/synth/goal_scene.hpp"

namespace sgbot {

using json_util::json;

IcpConfig icp_from_json(const json& doc, const std::string& path, IcpConfig base) {
  if (!doc.is_object()) throw Error(ErrorCode::kSchemaError, path + ": expected an object");
  if (const json* v = json_util::optional_field(doc, "n")) base.n_segments = json_util::integer(*v, path + ".n");
  if (const json* v = json_util::optional_field(doc, "max_iters")) {
    base.max_iterations = json_util::integer(*v, path + ".max_iters");
  }
  if (const json* v = json_util::optional_field(doc, "tol")) base.tolerance = json_util::number(*v, path + ".tol");
  if (const json* v = json_util::optional_field(doc, "trim_fraction")) {
    base.trim_fraction = json_util::number(*v, path + ".trim_fraction");
  }
  if (const json* v = json_util::optional_field(doc, "max_correspondence_distance")) {
    base.max_correspondence_distance = json_util::number(*v, path + ".max_correspondence_distance");
  }
  base.validate();
  return base;
}

json icp_to_json(const IcpConfig& cfg) {
  json out{{"n", cfg.n_segments}, {"max_iters", cfg.max_iterations}, {"tol", cfg.tolerance},
           {"trim_fraction", cfg.trim_fraction}};
  if (std::isfinite(cfg.max_correspondence_distance)) {
    out["max_correspondence_distance"] = cfg.max_correspondence_distance;
  }
  return out;
}

BenchManifest manifest_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kSchemaError, "manifest: expected an object");
  BenchManifest m;
  const json& seeds = json_util::field(doc, "seeds", "manifest");
  if (!seeds.is_array()) throw Error(ErrorCode::kSchemaError, "manifest.seeds: expected an array");
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const std::string path = "manifest.seeds[" + std::to_string(i) + "]";
    if (!seeds[i].is_number_integer() || seeds[i].get<long long>() < 0) {
      throw Error(ErrorCode::kSchemaError, path + ": expected a non-negative integer");
    }
    m.seeds.push_back(seeds[i].get<std::uint64_t>());
  }
  m.out_dir = json_util::string(json_util::field(doc, "out_dir", "manifest"), "manifest.out_dir");
  if (const json* v = json_util::optional_field(doc, "sigma")) m.planner.sigma = json_util::number(*v, "manifest.sigma");
  if (const json* v = json_util::optional_field(doc, "icp")) m.planner.icp = icp_from_json(*v, "manifest.icp");
  if (const json* v = json_util::optional_field(doc, "min_objects")) {
    m.counts.min = json_util::integer(*v, "manifest.min_objects");
  }
  if (const json* v = json_util::optional_field(doc, "max_objects")) {
    m.counts.max = json_util::integer(*v, "manifest.max_objects");
  }
  if (!(m.planner.sigma >= 0.0)) throw Error(ErrorCode::kSchemaError, "manifest.sigma: must be >= 0");
  return m;
}

BenchRun run_seed(std::uint64_t seed, const BenchManifest& manifest) {
  BenchRun run;
  run.seed = seed;
  try {
    const ScenePair pair = generate_scene_pair(seed, standard_templates(), manifest.counts);
    const GoalScene goal = synthesize_goal(pair.initial, pair.graph_truth, seed);
    auto [final_scene, plan] = execute_plan(pair.initial, goal, manifest.planner);
    run.actions = plan.actions.size();
    run.status = std::string(to_string(plan.status));
    run.report = evaluate(final_scene, pair.goal_truth, default_symmetries(), manifest.planner.icp);
  } catch (const Error& e) {
    run.status = error_slug(e.code());
    run.detail = e.detail();
  }
  return run;
}

json report_to_json(const BenchRun& run) {
  json objects = json::array();
  for (const auto& o : run.report.objects) {
    objects.push_back({{"id", o.id},
                       {"category", o.category},
                       {"R_e", o.rotation_error},
                       {"t_e", o.translation_error},
                       {"R_f", o.rotation_error_final},
                       {"t_f", o.translation_error_final},
                       {"iou", o.iou}});
  }
  json out{{"seed", run.seed},         {"status", run.status},       {"actions", run.actions},
           {"objects", objects},       {"R_e", run.report.R_e},     {"t_e", run.report.t_e},
           {"R_f", run.report.R_f},    {"t_f", run.report.t_f},     {"iou25", run.report.iou25},
           {"iou50", run.report.iou50}};
  if (!run.detail.empty()) out["detail"] = run.detail;
  return out;
}

std::string bench_csv(const std::vector<BenchRun>& runs) {
  std::string out = "seed,R_e,t_e,R_f,t_f,iou25,iou50,actions,status\n";
  char line[512];
  for (const auto& r : runs) {
    std::snprintf(line, sizeof line, "%llu,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%zu,%s\n",
                  static_cast<unsigned long long>(r.seed), r.report.R_e, r.report.t_e, r.report.R_f, r.report.t_f,
                  r.report.iou25, r.report.iou50, r.actions, r.status.c_str());
    out += line;
  }
  return out;
}

std::vector<BenchRun> run_bench(const BenchManifest& manifest) {
  std::vector<std::uint64_t> seeds = manifest.seeds;
  std::sort(seeds.begin(), seeds.end());
  std::vector<BenchRun> runs;
  const std::filesystem::path dir(manifest.out_dir);
  for (std::uint64_t seed : seeds) {
    runs.push_back(run_seed(seed, manifest));
    json_util::write_file((dir / ("report_" + std::to_string(seed) + ".json")).string(),
                          report_to_json(runs.back()).dump(2) + "\n");
  }
  json_util::write_file((dir / "bench.csv").string(), bench_csv(runs));
  return runs;
}

}  // namespace sgbot
