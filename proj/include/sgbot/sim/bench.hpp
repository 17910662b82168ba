#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgbot/planner/planner.hpp"
#include "sgbot/sim/generator.hpp"
#include "sgbot/sim/metrics.hpp"

namespace sgbot {

// Manifest JSON:
//   { "seeds": [int, ...], "sigma": f, "icp": {"n", "max_iters", "tol", "trim_fraction"},
//     "out_dir": path, "min_objects": int, "max_objects": int }
// Everything except "seeds" and "out_dir" is optional.
struct BenchManifest {
  std::vector<std::uint64_t> seeds;
  PlannerConfig planner;
  ObjectCounts counts;
  std::string out_dir;
};

BenchManifest manifest_from_json(const nlohmann::json& doc);
IcpConfig icp_from_json(const nlohmann::json& doc, const std::string& path, IcpConfig base = {});
nlohmann::json icp_to_json(const IcpConfig& cfg);

struct BenchRun {
  std::uint64_t seed = 0;
  EvalReport report;
  std::size_t actions = 0;
  std::string status;  // plan status, or the error slug when the seed failed
  std::string detail;
};

/// Generate, synthesize, plan and evaluate one seed. Library errors become
/// a run whose status is the error slug.
BenchRun run_seed(std::uint64_t seed, const BenchManifest& manifest);

nlohmann::json report_to_json(const BenchRun& run);

/// Header plus one row per run, in the given order.
std::string bench_csv(const std::vector<BenchRun>& runs);

/// Runs every seed in ascending order, writes report_<seed>.json per run and
/// bench.csv into out_dir, and returns the runs.
std::vector<BenchRun> run_bench(const BenchManifest& manifest);

}  // namespace sgbot
