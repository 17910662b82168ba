#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sgbot/graph/grounding.hpp"
#include "sgbot/registration/icp.hpp"

namespace sgbot {

// Config JSON, every section and key optional:
//   { "grounding": {"eps_z", "delta_close_factor", "footprint_overlap"},
//     "icp": {"n", "max_iters", "tol", "trim_fraction", "max_correspondence_distance"},
//     "planner": {"sigma"},
//     "server": {"addr": "host:port"} }
struct ServiceConfig {
  GroundingParams grounding;
  IcpConfig icp;
  double sigma = 0.01;
  std::string addr = "127.0.0.1:8080";
};

struct HostPort {
  std::string host;
  int port = 0;
};

/// Splits "host:port"; throws InvalidArgument on a malformed address.
HostPort parse_addr(std::string_view addr);

ServiceConfig config_from_json(const nlohmann::json& doc, ServiceConfig base = {});
nlohmann::json config_to_json(const ServiceConfig& cfg);
ServiceConfig load_config_file(const std::string& path);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads SGBOT_SIGMA, SGBOT_ADDR, SGBOT_ICP_<KEY> and SGBOT_GROUNDING_<KEY>,
/// where KEY is the upper-cased JSON key. Malformed values throw InvalidArgument.
ServiceConfig apply_env_overrides(ServiceConfig cfg, const EnvLookup& lookup);
EnvLookup process_env();

}  // namespace sgbot
