#include "sgbot/service/server.hpp"

#include <httplib.h>

#include <regex>

#include "sgbot/core/error.hpp"
#include "sgbot/ingest/json_util.hpp"
#include "sgbot/ingest/scene_io.hpp"
#include "sgbot/service/json_codec.hpp"

namespace sgbot {

using nlohmann::json;

namespace {

const std::regex kSessionPath(R"(^/sessions/([^/]+)(/(graph|goal|plan|step))?/?$)");

std::optional<std::uint64_t> expected_revision(const json& body) {
  const json* v = json_util::optional_field(body, "revision");
  if (!v || v->is_null()) return std::nullopt;
  if (!v->is_number_integer() || v->get<long long>() < 0) {
    throw Error(ErrorCode::kSchemaError, "body.revision: expected a non-negative integer");
  }
  return v->get<std::uint64_t>();
}

HttpResponse error_response(const Error& e) {
  const bool malformed = e.code() == ErrorCode::kParseError || e.code() == ErrorCode::kSchemaError;
  return {malformed ? 400 : 422, error_to_json(e)};
}

HttpResponse not_found(const std::string& detail) { return {404, json{{"error", "NotFound"}, {"detail", detail}}}; }

}  // namespace

Service::Service(ServiceConfig cfg) : cfg_(std::move(cfg)) {}

HttpResponse Service::handle(const std::string& method, const std::string& path, const std::string& body) {
  try {
    json doc = body.empty() ? json::object() : json_util::parse_text(body, "body");
    if (!doc.is_object()) throw Error(ErrorCode::kSchemaError, "body: expected an object");
    return route(method, path, doc);
  } catch (const SessionNotFound& e) {
    return not_found(e.what());
  } catch (const RevisionConflict& e) {
    return {409, json{{"error", "RevisionConflict"}, {"detail", e.what()}, {"expected", e.expected}, {"revision", e.actual}}};
  } catch (const Error& e) {
    return error_response(e);
  }
}

HttpResponse Service::route(const std::string& method, const std::string& path, const json& body) {
  if (path == "/schema" && method == "GET") return {200, schema_json()};
  if ((path == "/sessions" || path == "/sessions/") && method == "POST") {
    const SceneState scene = scene_from_json(json_util::field(body, "scene", "body"));
    std::optional<SceneGraph> graph;
    if (const json* g = json_util::optional_field(body, "graph")) graph = graph_from_json(*g);
    const Session s = store_.create(scene, std::move(graph));
    return {201, json{{"session_id", s.id}, {"revision", s.revision}}};
  }

  std::smatch m;
  if (!std::regex_match(path, m, kSessionPath)) return not_found("no route for " + method + " " + path);
  const std::string id = m[1].str();
  const std::string action = m[3].str();

  if (action.empty() && method == "GET") return {200, session_to_json(store_.get(id))};
  if (action == "graph" && method == "PUT") {
    const json* edits = json_util::optional_field(body, "edits");
    const json* graph = json_util::optional_field(body, "graph");
    if ((edits != nullptr) == (graph != nullptr)) {
      throw Error(ErrorCode::kSchemaError, "body: expected exactly one of 'edits' or 'graph'");
    }
    std::vector<GraphEdit> parsed;
    std::optional<SceneGraph> replacement;
    if (edits) parsed = edits_from_json(*edits, "body.edits");
    if (graph) replacement = graph_from_json(*graph);
    const Session s = store_.mutate(id, expected_revision(body), [&](Session& w) {
      if (replacement) {
        replace_graph(w, *replacement);
      } else {
        edit_graph(w, parsed);
      }
    });
    return {200, session_to_json(s)};
  }
  if (action == "goal" && method == "POST") {
    const json& v = json_util::field(body, "seed", "body");
    if (!v.is_number_integer() || v.get<long long>() < 0) throw Error(ErrorCode::kSchemaError, "body.seed: expected a non-negative integer");
    const std::uint64_t seed = v.get<std::uint64_t>();
    const Session s = store_.mutate(id, expected_revision(body), [&](Session& w) { synthesize(w, seed, cfg_); });
    return {200, goal_to_json(*s.goal)};
  }
  if (action == "plan" && method == "POST") {
    double sigma = cfg_.sigma;
    if (const json* v = json_util::optional_field(body, "sigma")) sigma = json_util::number(*v, "body.sigma");
    if (!(sigma >= 0.0)) throw Error(ErrorCode::kSchemaError, "body.sigma: must be >= 0");
    const Session s = store_.mutate(id, expected_revision(body), [&](Session& w) { make_plan(w, sigma, cfg_); });
    return {200, plan_to_json(*s.plan)};
  }
  if (action == "step" && method == "POST") {
    Action applied;
    const Session s = store_.mutate(id, expected_revision(body), [&](Session& w) { applied = step(w); });
    json out = session_to_json(s);
    out["action"] = action_to_json(applied);
    return {200, out};
  }
  store_.get(id);
  return not_found("no route for " + method + " " + path);
}

HttpServer::HttpServer(Service& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto adapt = [this](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r = service_.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server_->Get(".*", adapt);
  server_->Post(".*", adapt);
  server_->Put(".*", adapt);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kInvalidArgument, "cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    throw Error(ErrorCode::kInvalidArgument, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

bool HttpServer::listen() { return server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_->is_running()) server_->stop();
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace sgbot
