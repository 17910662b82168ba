#include "sgbot/service/config.hpp"

#include <cstdlib>

#include "sgbot/core/error.hpp"
#include "sgbot/ingest/json_util.hpp"
#include "sgbot/sim/bench.hpp"

namespace sgbot {

using json_util::json;

namespace {

double parse_double(const std::string& name, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorCode::kInvalidArgument, name + ": expected a number, got '" + text + "'");
  return v;
}

int parse_int(const std::string& name, const std::string& text) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorCode::kInvalidArgument, name + ": expected an integer, got '" + text + "'");
  return v;
}

void check_grounding(const GroundingParams& g) {
  if (!(g.eps_z >= 0.0) || !(g.delta_close_factor > 0.0) || !(g.footprint_overlap > 0.0 && g.footprint_overlap <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "grounding parameters out of range");
  }
}

}  // namespace

HostPort parse_addr(std::string_view addr) {
  const std::size_t colon = addr.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == addr.size()) {
    throw Error(ErrorCode::kInvalidArgument, "address must be host:port, got '" + std::string(addr) + "'");
  }
  HostPort hp;
  hp.host = std::string(addr.substr(0, colon));
  hp.port = parse_int("port", std::string(addr.substr(colon + 1)));
  if (hp.port < 0 || hp.port > 65535) throw Error(ErrorCode::kInvalidArgument, "port out of range");
  return hp;
}

ServiceConfig config_from_json(const json& doc, ServiceConfig cfg) {
  if (!doc.is_object()) throw Error(ErrorCode::kSchemaError, "config: expected an object");
  if (const json* g = json_util::optional_field(doc, "grounding")) {
    if (!g->is_object()) throw Error(ErrorCode::kSchemaError, "config.grounding: expected an object");
    if (const json* v = json_util::optional_field(*g, "eps_z")) cfg.grounding.eps_z = json_util::number(*v, "config.grounding.eps_z");
    if (const json* v = json_util::optional_field(*g, "delta_close_factor")) {
      cfg.grounding.delta_close_factor = json_util::number(*v, "config.grounding.delta_close_factor");
    }
    if (const json* v = json_util::optional_field(*g, "footprint_overlap")) {
      cfg.grounding.footprint_overlap = json_util::number(*v, "config.grounding.footprint_overlap");
    }
    check_grounding(cfg.grounding);
  }
  if (const json* v = json_util::optional_field(doc, "icp")) cfg.icp = icp_from_json(*v, "config.icp", cfg.icp);
  if (const json* p = json_util::optional_field(doc, "planner")) {
    if (!p->is_object()) throw Error(ErrorCode::kSchemaError, "config.planner: expected an object");
    if (const json* v = json_util::optional_field(*p, "sigma")) cfg.sigma = json_util::number(*v, "config.planner.sigma");
    if (!(cfg.sigma >= 0.0)) throw Error(ErrorCode::kSchemaError, "config.planner.sigma: must be >= 0");
  }
  if (const json* s = json_util::optional_field(doc, "server")) {
    if (!s->is_object()) throw Error(ErrorCode::kSchemaError, "config.server: expected an object");
    if (const json* v = json_util::optional_field(*s, "addr")) {
      cfg.addr = json_util::string(*v, "config.server.addr");
      parse_addr(cfg.addr);
    }
  }
  return cfg;
}

json config_to_json(const ServiceConfig& cfg) {
  return json{{"grounding",
               {{"eps_z", cfg.grounding.eps_z},
                {"delta_close_factor", cfg.grounding.delta_close_factor},
                {"footprint_overlap", cfg.grounding.footprint_overlap}}},
              {"icp", icp_to_json(cfg.icp)},
              {"planner", {{"sigma", cfg.sigma}}},
              {"server", {{"addr", cfg.addr}}}};
}

ServiceConfig load_config_file(const std::string& path) {
  return config_from_json(json_util::parse_text(json_util::read_file(path), path));
}

ServiceConfig apply_env_overrides(ServiceConfig cfg, const EnvLookup& lookup) {
  auto real = [&](const std::string& name, double& field) {
    if (auto v = lookup(name)) field = parse_double(name, *v);
  };
  auto whole = [&](const std::string& name, int& field) {
    if (auto v = lookup(name)) field = parse_int(name, *v);
  };
  real("SGBOT_SIGMA", cfg.sigma);
  if (!(cfg.sigma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "SGBOT_SIGMA: must be >= 0");
  if (auto v = lookup("SGBOT_ADDR")) {
    parse_addr(*v);
    cfg.addr = *v;
  }
  whole("SGBOT_ICP_N", cfg.icp.n_segments);
  whole("SGBOT_ICP_MAX_ITERS", cfg.icp.max_iterations);
  real("SGBOT_ICP_TOL", cfg.icp.tolerance);
  real("SGBOT_ICP_TRIM_FRACTION", cfg.icp.trim_fraction);
  real("SGBOT_ICP_MAX_CORRESPONDENCE_DISTANCE", cfg.icp.max_correspondence_distance);
  cfg.icp.validate();
  real("SGBOT_GROUNDING_EPS_Z", cfg.grounding.eps_z);
  real("SGBOT_GROUNDING_DELTA_CLOSE_FACTOR", cfg.grounding.delta_close_factor);
  real("SGBOT_GROUNDING_FOOTPRINT_OVERLAP", cfg.grounding.footprint_overlap);
  check_grounding(cfg.grounding);
  return cfg;
}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

}  // namespace sgbot
