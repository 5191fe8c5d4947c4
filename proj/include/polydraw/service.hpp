#pragma once

#include "polydraw/views.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace polydraw {

struct SessionConfig {
  std::string polytope = "cube(3)";  // family expression or polytope JSON
  std::size_t facet = 0;
  Scalar zeta{1, 2};
  SpringParams spring;
  /// Objective lambda = x_k for the spring model (k counted from 1).
  std::optional<std::size_t> objective;
};

SessionConfig session_config_from_json(const Json& j, SessionConfig base = {});
Json session_config_to_json(const SessionConfig& c);

/// One interactive session: a polytope with a Schlegel viewpoint state and a
/// spring embedding of its graph. Every successful command is appended to
/// the log; replaying the log on a fresh session reproduces the state.
class Session {
 public:
  explicit Session(SessionConfig config);

  /// Commands: "schlegel/select_facet" {marked}, "schlegel/zoom" {zeta},
  /// "schlegel/drag" {vertex, target | displacement} (scene coordinates),
  /// "spring/params" {delta_rep, ...}, "spring/step" {count}. Throws
  /// ValidationError or ComputationError and leaves the state unchanged.
  void apply(const std::string& op, const Json& body);

  /// {"scene": ..., "state": ...} of the current view.
  Json response() const;
  Scene scene() const;
  Json state_summary() const;

  const SessionConfig& config() const { return config_; }
  const Json& log() const { return log_; }

  static Session replay(const SessionConfig& config, const Json& log);

 private:
  void apply_unlogged(const std::string& op, const Json& body);
  bool has_schlegel() const { return polytope_.dim == 3 || polytope_.dim == 4; }

  SessionConfig config_;
  Polytope polytope_;
  Graph graph_;
  SpringInputs inputs_;
  std::optional<SchlegelState> schlegel_;
  SpringParams params_;
  EmbeddingState embedding_;
  std::string view_;
  Json log_ = Json::array();
};

struct ServiceError {
  int status = 400;
  Json payload;
};

/// Structured error payload {"error": {"code", "message"}} with an HTTP
/// status: 409 for ambiguous facet selections, 422 for invalid viewpoints
/// and other rejected commands, 400 for malformed requests, 500 for failed
/// computations.
ServiceError error_for(const std::exception& e);

struct ServiceReply {
  int status = 200;
  std::string body;
};

/// Session registry behind the HTTP endpoints. Commands on one session are
/// serialized; GET /scene serves the last committed snapshot without waiting
/// for a running command.
class Service {
 public:
  explicit Service(SessionConfig default_config);

  /// Returns the id of a new session after replaying `log` on it.
  std::string create_session(const SessionConfig& config, const Json& log = Json::array());

  /// Dispatches one request. `session` defaults to "default".
  ServiceReply handle(const std::string& method, const std::string& path, const std::string& body,
                      const std::string& session = "default");

 private:
  struct Slot {
    std::mutex command_mutex;
    Session session;
    std::mutex snapshot_mutex;
    std::shared_ptr<const std::string> snapshot;
    explicit Slot(Session s) : session(std::move(s)) {}
  };

  std::shared_ptr<Slot> find(const std::string& id);
  static void publish(Slot& slot);

  SessionConfig default_config_;
  std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::size_t next_id_ = 1;
};

/// HTTP front end for a Service. The session is taken from the "session"
/// query parameter or the X-Session header.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to host:port (port 0 picks a free port) and returns the port.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace polydraw
