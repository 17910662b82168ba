#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "sgbot/service/config.hpp"
#include "sgbot/service/session.hpp"

namespace httplib {
class Server;
}

namespace sgbot {

struct HttpResponse {
  int status = 200;
  nlohmann::json body;
};

/// Transport-independent request handling for the session endpoints:
///   POST /sessions                {scene, graph?}          -> {session_id, revision}
///   GET  /sessions/{id}                                    -> session snapshot
///   PUT  /sessions/{id}/graph     {edits | graph, revision?} -> session snapshot
///   POST /sessions/{id}/goal      {seed, revision?}        -> GoalScene
///   POST /sessions/{id}/plan      {sigma?, revision?}      -> Plan
///   POST /sessions/{id}/step      {revision?}              -> session snapshot plus "action"
///   GET  /schema                                           -> edit vocabulary
/// Status codes: 400 malformed body, 404 unknown session or route,
/// 409 stale revision, 422 library error (body from error_to_json).
class Service {
 public:
  explicit Service(ServiceConfig cfg = {});

  HttpResponse handle(const std::string& method, const std::string& path, const std::string& body);

  const ServiceConfig& config() const noexcept { return cfg_; }
  SessionStore& store() noexcept { return store_; }

 private:
  HttpResponse route(const std::string& method, const std::string& path, const nlohmann::json& body);

  ServiceConfig cfg_;
  SessionStore store_;
};

/// httplib front end for a Service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  /// Binds host:port (port 0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  Service& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace sgbot
