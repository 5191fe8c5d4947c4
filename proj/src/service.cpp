#include "polydraw/service.hpp"

#include "polydraw/face_lattice.hpp"

#include <httplib.h>

#include <cstring>

namespace polydraw {

SessionConfig session_config_from_json(const Json& j, SessionConfig c) {
  if (!j.is_object()) throw ValidationError("session config must be an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "polytope") c.polytope = value.is_string() ? value.get<std::string>() : value.dump();
      else if (key == "facet") c.facet = value.get<std::size_t>();
      else if (key == "zeta") c.zeta = scalar_from_json(value);
      else if (key == "spring") c.spring = spring_params_from_json(value, c.spring);
      else if (key == "objective") c.objective = value.is_null() ? std::nullopt : std::optional(value.get<std::size_t>());
      else throw ValidationError("unknown session setting '" + key + "'");
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("bad session config: ") + e.what());
  }
  return c;
}

Json session_config_to_json(const SessionConfig& c) {
  Json out{{"polytope", c.polytope},
           {"facet", c.facet},
           {"zeta", scalar_to_json(c.zeta)},
           {"spring", spring_params_to_json(c.spring)}};
  out["objective"] = c.objective ? Json(*c.objective) : Json(nullptr);
  return out;
}

Session::Session(SessionConfig config) : config_(std::move(config)) {
  polytope_ = load_polytope(config_.polytope);
  graph_ = graph_of(polytope_);
  if (config_.objective) inputs_ = coordinate_objective(polytope_, *config_.objective);
  params_ = config_.spring;
  params_.validate();
  embedding_ = init_random_sphere(graph_, params_.seed);
  if (has_schlegel()) {
    schlegel_ = init_state(polytope_, config_.facet, config_.zeta);
    view_ = "schlegel";
  } else {
    view_ = "spring";
  }
}

namespace {

std::vector<double> double_list(const Json& j, const char* what) {
  try {
    return j.get<std::vector<double>>();
  } catch (const Json::exception&) {
    throw ValidationError(std::string(what) + " must be a list of numbers");
  }
}

}  // namespace

void Session::apply_unlogged(const std::string& op, const Json& body) {
  if (!body.is_object()) throw ValidationError("request body must be a JSON object");
  if (op.rfind("schlegel/", 0) == 0) {
    if (!schlegel_) throw ValidationError("Schlegel commands need a 3- or 4-polytope");
    SchlegelState& s = *schlegel_;
    if (op == "schlegel/select_facet") {
      if (!body.contains("marked")) throw ValidationError("missing 'marked'");
      std::vector<std::size_t> marked;
      try {
        marked = body["marked"].get<std::vector<std::size_t>>();
      } catch (const Json::exception&) {
        throw ValidationError("'marked' must be a list of vertex ids");
      }
      s = init_state(polytope_, select_facet(polytope_, marked), s.zeta);
    } else if (op == "schlegel/zoom") {
      if (!body.contains("zeta")) throw ValidationError("missing 'zeta'");
      s = set_zoom(polytope_, s, scalar_from_json(body["zeta"]));
    } else if (op == "schlegel/drag") {
      if (!body.contains("vertex")) throw ValidationError("missing 'vertex'");
      if (body.contains("target") == body.contains("displacement")) {
        throw ValidationError("give exactly one of 'target' and 'displacement'");
      }
      std::size_t vertex = 0;
      try {
        vertex = body["vertex"].get<std::size_t>();
      } catch (const Json::exception&) {
        throw ValidationError("'vertex' must be a vertex id");
      }
      if (vertex >= polytope_.num_vertices()) throw ValidationError("vertex out of range");
      SchlegelDiagram d = project(polytope_, s);
      std::vector<double> here = d.frame.isometric(d.positions[vertex]);
      std::vector<double> delta;
      if (body.contains("target")) {
        auto target = double_list(body["target"], "target");
        if (target.size() != here.size()) throw ValidationError("target has wrong dimension");
        for (std::size_t k = 0; k < here.size(); ++k) delta.push_back(target[k] - here[k]);
      } else {
        delta = double_list(body["displacement"], "displacement");
        if (delta.size() != here.size()) throw ValidationError("displacement has wrong dimension");
      }
      if (polytope_.incidence[s.facet].test(vertex)) {
        Vector dir = polytope_.to_chart(d.frame.direction_of(d.frame.from_isometric(delta)));
        s = drag_facet_vertex(polytope_, s, vertex, dir);
      } else {
        // Exact current image plus the rounded displacement.
        Vector coords = add(d.positions[vertex], d.frame.from_isometric(delta));
        s = drag_nonfacet_vertex(polytope_, s, vertex, polytope_.to_chart(d.frame.point_of(coords)));
      }
    } else {
      throw ValidationError("unknown command '" + op + "'");
    }
    view_ = "schlegel";
  } else if (op == "spring/params") {
    for (const auto& [key, value] : body.items()) {
      if (key != "delta_rep" && key != "delta_visc" && key != "delta_lin") {
        throw ValidationError("spring/params accepts delta_rep, delta_visc and delta_lin");
      }
    }
    params_ = spring_params_from_json(body, params_);
    view_ = "spring";
  } else if (op == "spring/step") {
    std::size_t count = 1;
    if (body.contains("count")) {
      try {
        count = body["count"].get<std::size_t>();
      } catch (const Json::exception&) {
        throw ValidationError("'count' must be a nonnegative integer");
      }
    }
    if (count > 100000) throw ValidationError("at most 100000 steps per request");
    embedding_ = spring_steps(graph_, embedding_, params_, inputs_, count);
    view_ = "spring";
  } else {
    throw ValidationError("unknown command '" + op + "'");
  }
}

void Session::apply(const std::string& op, const Json& body) {
  Session next = *this;
  next.apply_unlogged(op, body);
  next.log_.push_back({{"op", op}, {"body", body}});
  *this = std::move(next);
}

Scene Session::scene() const {
  if (view_ == "schlegel") return schlegel_scene(polytope_, *schlegel_);
  return spring_scene(graph_, embedding_, params_);
}

Json Session::state_summary() const {
  Json out{{"view", view_}, {"polytope", config_.polytope}};
  if (schlegel_) {
    out["schlegel"] = {{"facet", schlegel_->facet},
                       {"zeta", scalar_to_json(schlegel_->zeta)},
                       {"bounded", schlegel_->bounded()},
                       {"viewpoint", vector_to_json(schlegel_->viewpoint)},
                       {"valid", validate_viewpoint(polytope_, schlegel_->facet, schlegel_->viewpoint)}};
  }
  out["spring"] = {{"iteration", embedding_.iteration},
                   {"fluctuation", fluctuation(embedding_.current, embedding_.previous)},
                   {"params", spring_params_to_json(params_)}};
  out["commands"] = log_.size();
  return out;
}

Json Session::response() const { return {{"scene", scene_to_json(scene())}, {"state", state_summary()}}; }

Session Session::replay(const SessionConfig& config, const Json& log) {
  if (!log.is_array()) throw ValidationError("command log must be an array");
  Session s(config);
  for (const auto& entry : log) {
    if (!entry.is_object() || !entry.contains("op") || !entry["op"].is_string()) {
      throw ValidationError("command log entries need an 'op'");
    }
    s.apply(entry["op"].get<std::string>(), entry.value("body", Json::object()));
  }
  return s;
}

ServiceError error_for(const std::exception& e) {
  const std::string message = e.what();
  auto payload = [&](const std::string& code) { return Json{{"error", {{"code", code}, {"message", message}}}}; };
  if (dynamic_cast<const ComputationError*>(&e)) return {500, payload("computation_failed")};
  if (dynamic_cast<const ValidationError*>(&e)) {
    if (message == "ambiguous") return {409, payload("ambiguous")};
    if (message == "invalid viewpoint") return {422, payload("invalid_viewpoint")};
    if (message == "no such facet") return {422, payload("no_such_facet")};
    return {422, payload("invalid_command")};
  }
  if (dynamic_cast<const Json::exception*>(&e)) return {400, payload("malformed_request")};
  return {500, payload("internal_error")};
}

Service::Service(SessionConfig default_config) : default_config_(std::move(default_config)) {
  auto slot = std::make_shared<Slot>(Session(default_config_));
  publish(*slot);
  sessions_.emplace("default", std::move(slot));
}

std::string Service::create_session(const SessionConfig& config, const Json& log) {
  auto slot = std::make_shared<Slot>(Session::replay(config, log));
  publish(*slot);
  std::lock_guard lock(sessions_mutex_);
  std::string id = "s" + std::to_string(next_id_++);
  sessions_.emplace(id, std::move(slot));
  return id;
}

std::shared_ptr<Service::Slot> Service::find(const std::string& id) {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void Service::publish(Slot& slot) {
  auto text = std::make_shared<const std::string>(slot.session.response().dump());
  std::lock_guard lock(slot.snapshot_mutex);
  slot.snapshot = std::move(text);
}

ServiceReply Service::handle(const std::string& method, const std::string& path, const std::string& body,
                             const std::string& session) {
  auto fail = [](int status, const std::string& code, const std::string& message) {
    return ServiceReply{status, Json{{"error", {{"code", code}, {"message", message}}}}.dump()};
  };
  try {
    if (method == "POST" && path == "/sessions") {
      Json request = body.empty() ? Json::object() : Json::parse(body);
      if (!request.is_object()) throw ValidationError("request body must be a JSON object");
      SessionConfig config = session_config_from_json(request.value("config", Json::object()), default_config_);
      std::string id = create_session(config, request.value("log", Json::array()));
      auto slot = find(id);
      std::lock_guard lock(slot->snapshot_mutex);
      Json out = Json::parse(*slot->snapshot);
      out["session"] = id;
      return {200, out.dump()};
    }
    auto slot = find(session);
    if (!slot) return fail(404, "no_such_session", "no session '" + session + "'");
    if (method == "GET" && path == "/scene") {
      std::shared_ptr<const std::string> snapshot;
      {
        std::lock_guard lock(slot->snapshot_mutex);
        snapshot = slot->snapshot;
      }
      return {200, *snapshot};
    }
    if (method == "GET" && path == "/log") {
      std::lock_guard lock(slot->command_mutex);
      return {200, Json{{"config", session_config_to_json(slot->session.config())}, {"log", slot->session.log()}}
                       .dump()};
    }
    static const char* commands[] = {"/schlegel/select_facet", "/schlegel/zoom", "/schlegel/drag", "/spring/params",
                                     "/spring/step"};
    for (const char* c : commands) {
      if (path != c) continue;
      if (method != "POST") return fail(405, "method_not_allowed", path + " expects POST");
      Json request = body.empty() ? Json::object() : Json::parse(body);
      std::lock_guard lock(slot->command_mutex);
      slot->session.apply(path.substr(1), request);
      publish(*slot);
      std::lock_guard snap(slot->snapshot_mutex);
      return {200, *slot->snapshot};
    }
    return fail(404, "not_found", "no endpoint " + method + " " + path);
  } catch (const std::exception& e) {
    ServiceError err = error_for(e);
    return {err.status, err.payload.dump()};
  }
}

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;
  explicit Impl(Service& s) : service(s) {}
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    std::string session = "default";
    if (req.has_param("session")) session = req.get_param_value("session");
    else if (req.has_header("X-Session")) session = req.get_header_value("X-Session");
    ServiceReply reply = impl_->service.handle(req.method, req.path, req.body, session);
    res.status = reply.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(reply.body, "application/json");
  };
  impl_->server.Get(R"(/.*)", handler);
  impl_->server.Post(R"(/.*)", handler);
  impl_->server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type, X-Session");
    res.status = 204;
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host.c_str());
  return impl_->server.bind_to_port(host.c_str(), port) ? port : -1;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace polydraw
