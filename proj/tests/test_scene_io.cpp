#include "polydraw/constructions.hpp"
#include "polydraw/export.hpp"
#include "polydraw/face_lattice.hpp"
#include "polydraw/pdgraph.hpp"
#include "polydraw/service.hpp"
#include "polydraw/tightspan.hpp"

#include <gtest/gtest.h>
#include <httplib.h>

#include <cmath>
#include <regex>
#include <sstream>
#include <thread>

using namespace polydraw;

namespace {

std::size_t count_lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) ++n;
  }
  return n;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

Scene k2(double length) {
  Graph g(2);
  g.add_edge(0, 1);
  return scene_from_graph(g, std::vector<std::vector<double>>{{0.0, 0.0}, {length, 0.0}});
}

Json reply_json(const ServiceReply& r) { return Json::parse(r.body); }

SessionConfig config_of(const std::string& polytope) {
  SessionConfig c;
  c.polytope = polytope;
  return c;
}

}  // namespace

TEST(Export, EmptySceneGivesValidEmptyDocuments) {
  Scene empty;
  Json j = Json::parse(export_scene(empty, ExportFormat::json));
  EXPECT_TRUE(j["nodes"].empty());
  EXPECT_TRUE(j["edges"].empty());
  std::string svg = export_scene(empty, ExportFormat::svg);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_EQ(count(svg, "<svg "), 1u);
  EXPECT_EQ(count(svg, "</svg>"), 1u);
  EXPECT_EQ(count(svg, "<line"), 0u);
  std::string obj = export_scene(empty, ExportFormat::obj);
  EXPECT_EQ(count_lines_starting(obj, "v "), 0u);
  EXPECT_EQ(count_lines_starting(obj, "#"), 1u);
}

TEST(Export, UnitEdgeHasViewportLength) {
  for (double scale : {100.0, 37.5}) {
    ExportOptions opt;
    opt.scale = scale;
    std::string svg = export_scene(k2(1.0), ExportFormat::svg, opt);
    std::regex line(R"re(<line [^>]*x1="([-0-9.]+)" y1="([-0-9.]+)" x2="([-0-9.]+)" y2="([-0-9.]+)")re");
    auto begin = std::sregex_iterator(svg.begin(), svg.end(), line);
    ASSERT_EQ(std::distance(begin, std::sregex_iterator()), 1);
    std::smatch m = *begin;
    double dx = std::stod(m[3]) - std::stod(m[1]);
    double dy = std::stod(m[4]) - std::stod(m[2]);
    EXPECT_NEAR(std::hypot(dx, dy), scale, 1e-3);
  }
}

TEST(Export, ThreeDimensionalSvgNeedsACamera) {
  Graph g(2);
  g.add_edge(0, 1);
  Scene s = scene_from_graph(g, std::vector<std::vector<double>>{{0, 0, 0}, {0, 0, 1}});
  EXPECT_THROW(export_scene(s, ExportFormat::svg), ValidationError);
  ExportOptions opt;
  opt.camera = Camera{0, 0};
  std::string svg = export_scene(s, ExportFormat::svg, opt);
  EXPECT_EQ(count(svg, "<line"), 1u);
  // Looking along the x axis, the z axis points straight up the screen.
  auto top = camera_project(*opt.camera, {0, 0, 1});
  EXPECT_NEAR(top[0], 0, 1e-12);
  EXPECT_NEAR(top[1], 1, 1e-12);
  EXPECT_THROW(parse_export_format("png"), ValidationError);
}

TEST(Export, IcosahedronRealizationObj) {
  Graph g = graphs::icosahedron();
  Scene s = realization_scene(g, steinitz_realize(g));
  std::string obj = export_scene(s, ExportFormat::obj);
  EXPECT_EQ(count_lines_starting(obj, "v "), 12u);
  EXPECT_EQ(count_lines_starting(obj, "f "), 20u);
  EXPECT_EQ(count_lines_starting(obj, "l "), 30u);
  // Faces are ordered counterclockwise seen from outside: the Newell normal
  // points away from the centroid of the solid.
  std::array<double, 3> center{0, 0, 0};
  for (const auto& n : s.nodes) {
    for (int k = 0; k < 3; ++k) center[k] += n.position[k] / 12;
  }
  for (const auto& f : s.faces) {
    std::array<double, 3> normal{0, 0, 0}, mid{0, 0, 0};
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto& a = s.nodes[f[i]].position;
      const auto& b = s.nodes[f[(i + 1) % f.size()]].position;
      normal[0] += (a[1] - b[1]) * (a[2] + b[2]);
      normal[1] += (a[2] - b[2]) * (a[0] + b[0]);
      normal[2] += (a[0] - b[0]) * (a[1] + b[1]);
      for (int k = 0; k < 3; ++k) mid[k] += a[k] / static_cast<double>(f.size());
    }
    double out = 0;
    for (int k = 0; k < 3; ++k) out += normal[k] * (mid[k] - center[k]);
    EXPECT_GT(out, 0);
  }
}

TEST(Export, JsonRoundTripIsByteIdentical) {
  std::vector<Scene> scenes;
  Polytope p = permutohedron(4);
  scenes.push_back(schlegel_scene(p, init_state(p, 0)));
  Graph ico = graphs::icosahedron();
  scenes.push_back(realization_scene(ico, steinitz_realize(ico)));
  SpringParams params;
  params.seed = 3;
  params.max_iters = 200;
  Metric m;
  m.labels = {"a", "b", "c", "d"};
  for (auto row : {std::vector<int>{0, 2, 2, 2}, {2, 0, 2, 2}, {2, 2, 0, 2}, {2, 2, 2, 0}}) {
    m.d.emplace_back();
    for (int x : row) m.d.back().push_back(Scalar(x));
  }
  scenes.push_back(visualize_tightspan(m, TightSpanMode::combinatorial, params).scene);
  scenes.push_back(pd_scene(build_pd_graph(minimal_cube4_triangulation()), params, {}, false));
  scenes.push_back(k2(0.1 + 0.2));
  for (const auto& s : scenes) {
    std::string once = export_scene(s, ExportFormat::json);
    std::string twice = export_scene(scene_from_json(Json::parse(once)), ExportFormat::json);
    EXPECT_EQ(once, twice);
  }
}

TEST(Export, OutputIsDeterministic) {
  Polytope p = cube(4);
  Scene s = schlegel_scene(p, init_state(p, 0));
  ExportOptions opt;
  opt.camera = Camera{};
  for (auto f : {ExportFormat::json, ExportFormat::svg, ExportFormat::obj}) {
    EXPECT_EQ(export_scene(s, f, opt), export_scene(s, f, opt));
  }
}

TEST(Session, SelectFacetWithTwoCubeVerticesIsAmbiguous) {
  Service service(config_of("cube(3)"));
  std::string before = service.handle("GET", "/scene", "").body;
  ServiceReply r = service.handle("POST", "/schlegel/select_facet", R"({"marked": [0, 1]})");
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(reply_json(r)["error"]["code"], "ambiguous");
  EXPECT_EQ(service.handle("GET", "/scene", "").body, before);
  r = service.handle("POST", "/schlegel/select_facet", R"({"marked": [0, 7]})");
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(reply_json(r)["error"]["code"], "no_such_facet");
}

TEST(Session, SelectFacetWithThreeVerticesMovesTheFacet) {
  Polytope p = cube(3);
  Service service(config_of("cube(3)"));
  auto verts = p.facet_vertices(3);
  Json body{{"marked", {verts[0], verts[1], verts[2]}}};
  ServiceReply r = service.handle("POST", "/schlegel/select_facet", body.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(reply_json(r)["state"]["schlegel"]["facet"], 3);
}

TEST(Session, ZoomEqualsDirectCall) {
  Polytope p = cross_polytope(3);
  Service service(config_of("cross(3)"));
  ServiceReply r = service.handle("POST", "/schlegel/zoom", R"({"zeta": 0.5})");
  ASSERT_EQ(r.status, 200) << r.body;
  Json j = reply_json(r);
  EXPECT_TRUE(j["state"]["schlegel"]["valid"].get<bool>());
  SchlegelState direct = set_zoom(p, init_state(p, 0), Scalar(1, 2));
  EXPECT_EQ(j["scene"].dump(), scene_to_json(schlegel_scene(p, direct)).dump());
}

TEST(Session, InvalidCommandsLeaveStateUnchanged) {
  Service service(config_of("cube(3)"));
  std::string before = service.handle("GET", "/scene", "").body;
  EXPECT_EQ(service.handle("POST", "/schlegel/zoom", R"({"zeta": 1})").status, 422);
  EXPECT_EQ(service.handle("POST", "/schlegel/zoom", R"({"zeta": )").status, 400);
  EXPECT_EQ(service.handle("POST", "/schlegel/drag", R"({"vertex": 0})").status, 422);
  EXPECT_EQ(service.handle("POST", "/schlegel/drag", R"({"vertex": 99, "target": [0, 0]})").status, 422);
  EXPECT_EQ(service.handle("POST", "/spring/params", R"({"delta_rep": -1})").status, 422);
  EXPECT_EQ(service.handle("POST", "/spring/params", R"({"seed": 4})").status, 422);
  EXPECT_EQ(service.handle("POST", "/nowhere", "{}").status, 404);
  EXPECT_EQ(service.handle("GET", "/schlegel/zoom", "").status, 405);
  EXPECT_EQ(service.handle("GET", "/scene", "", "missing").status, 404);
  EXPECT_EQ(service.handle("GET", "/scene", "").body, before);
  EXPECT_EQ(reply_json(service.handle("GET", "/log", ""))["log"].size(), 0u);
}

TEST(Session, DragOutsideTheRegionIsAnInvalidViewpoint) {
  // Dragging a non-facet vertex of the octahedron far outside the facet puts
  // the viewpoint beyond another facet.
  Service service(config_of("cross(3)"));
  Polytope p = cross_polytope(3);
  std::size_t off = 0;
  while (p.incidence[0].test(off)) ++off;
  Json body{{"vertex", off}, {"target", {100.0, 100.0}}};
  ServiceReply r = service.handle("POST", "/schlegel/drag", body.dump());
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(reply_json(r)["error"]["code"], "invalid_viewpoint");
}

TEST(Session, DragMovesTheImageToTheTarget) {
  Service service(config_of("cross(3)"));
  Polytope p = cross_polytope(3);
  std::size_t off = 0;
  while (p.incidence[0].test(off)) ++off;
  Json scene = reply_json(service.handle("GET", "/scene", ""))["scene"];
  auto here = scene["nodes"][off]["position"].get<std::vector<double>>();
  Json body{{"vertex", off}, {"displacement", {0.01, -0.02}}};
  ServiceReply r = service.handle("POST", "/schlegel/drag", body.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  auto there = reply_json(r)["scene"]["nodes"][off]["position"].get<std::vector<double>>();
  EXPECT_NEAR(there[0], here[0] + 0.01, 1e-9);
  EXPECT_NEAR(there[1], here[1] - 0.02, 1e-9);
  // Facet vertices: the anchor moves, the state stays valid.
  std::size_t on = p.facet_vertices(0).front();
  body = {{"vertex", on}, {"displacement", {0.05, 0.05}}};
  r = service.handle("POST", "/schlegel/drag", body.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_TRUE(reply_json(r)["state"]["schlegel"]["valid"].get<bool>());
}

TEST(Session, SpringCommands) {
  Service service(config_of("cube(3)"));
  ServiceReply r = service.handle("POST", "/spring/params", R"({"delta_rep": 0.02, "delta_visc": 0.5})");
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(reply_json(r)["state"]["view"], "spring");
  EXPECT_EQ(reply_json(r)["state"]["spring"]["params"]["delta_rep"], 0.02);
  r = service.handle("POST", "/spring/step", R"({"count": 25})");
  ASSERT_EQ(r.status, 200) << r.body;
  Json j = reply_json(r);
  EXPECT_EQ(j["state"]["spring"]["iteration"], 25);
  EXPECT_EQ(j["scene"]["nodes"].size(), 8u);
  // Same as stepping directly.
  Graph g = graph_of(cube(3));
  SpringParams params;
  params.delta_rep = 0.02;
  params.delta_visc = 0.5;
  EmbeddingState direct = spring_steps(g, init_random_sphere(g, 0), params, {}, 25);
  EXPECT_EQ(j["scene"].dump(), scene_to_json(spring_scene(g, direct, params)).dump());
}

TEST(Session, ReplayingTheLogGivesIdenticalBytes) {
  Service service(config_of("permutohedron(4)"));
  Polytope p = permutohedron(4);
  std::size_t off = 0;
  while (p.incidence[0].test(off)) ++off;
  std::vector<std::pair<std::string, Json>> commands{
      {"/schlegel/zoom", {{"zeta", "1/3"}}},
      {"/schlegel/drag", {{"vertex", p.facet_vertices(0)[1]}, {"displacement", {0.1, -0.05}}}},
      {"/schlegel/drag", {{"vertex", off}, {"displacement", {0.001, 0.002}}}},
      {"/spring/step", {{"count", 10}}},
      {"/schlegel/zoom", {{"zeta", 0.7}}},
  };
  for (const auto& [path, body] : commands) {
    auto reply = service.handle("POST", path, body.dump());
    ASSERT_EQ(reply.status, 200) << path << " " << reply.body;
  }
  std::string final_scene = service.handle("GET", "/scene", "").body;
  Json log = reply_json(service.handle("GET", "/log", ""));
  EXPECT_EQ(log["log"].size(), commands.size());
  ServiceReply created = service.handle("POST", "/sessions", Json{{"config", log["config"]}, {"log", log["log"]}}.dump());
  ASSERT_EQ(created.status, 200) << created.body;
  std::string id = reply_json(created)["session"];
  EXPECT_EQ(service.handle("GET", "/scene", "", id).body, final_scene);
  // A fresh process (another service) replays to the same bytes too.
  Service other(session_config_from_json(log["config"]));
  std::string id2 = other.create_session(session_config_from_json(log["config"]), log["log"]);
  EXPECT_EQ(other.handle("GET", "/scene", "", id2).body, final_scene);
}

TEST(Session, FourPolytopeScenesAreThreeDimensional) {
  Service service(config_of("cube(4)"));
  Polytope p = cube(4);
  std::size_t off = 0;
  while (p.incidence[0].test(off)) ++off;
  Json body{{"vertex", off}, {"displacement", {0.01, 0.0, -0.01}}};
  ServiceReply r = service.handle("POST", "/schlegel/drag", body.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  Json j = reply_json(r);
  EXPECT_EQ(j["scene"]["nodes"][0]["position"].size(), 3u);
  EXPECT_EQ(j["scene"]["edges"].size(), 32u);
  EXPECT_TRUE(j["state"]["schlegel"]["valid"].get<bool>());
}

TEST(Session, NonSchlegelPolytopeStartsInSpringView) {
  Service service(config_of("simplex(5)"));
  Json j = reply_json(service.handle("GET", "/scene", ""));
  EXPECT_EQ(j["state"]["view"], "spring");
  EXPECT_EQ(service.handle("POST", "/schlegel/zoom", R"({"zeta": 0.5})").status, 422);
}

TEST(Http, EndpointsOverTheWire) {
  Service service(config_of("cube(3)"));
  HttpServer server(service);
  int port = server.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread thread([&] { server.listen(); });
  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  auto get = client.Get("/scene");
  ASSERT_TRUE(get);
  EXPECT_EQ(get->status, 200);
  EXPECT_EQ(get->get_header_value("Content-Type"), "application/json");
  EXPECT_EQ(Json::parse(get->body)["scene"]["nodes"].size(), 8u);
  auto bad = client.Post("/schlegel/select_facet", R"({"marked": [0, 1]})", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 409);
  EXPECT_EQ(Json::parse(bad->body)["error"]["code"], "ambiguous");
  auto zoom = client.Post("/schlegel/zoom", R"({"zeta": "1/4"})", "application/json");
  ASSERT_TRUE(zoom);
  EXPECT_EQ(zoom->status, 200);
  EXPECT_EQ(Json::parse(zoom->body)["state"]["schlegel"]["zeta"], "1/4");
  auto created = client.Post("/sessions", R"j({"config": {"polytope": "cross(3)"}})j", "application/json");
  ASSERT_TRUE(created);
  std::string id = Json::parse(created->body)["session"];
  auto other = client.Get(("/scene?session=" + id).c_str());
  ASSERT_TRUE(other);
  EXPECT_EQ(Json::parse(other->body)["scene"]["nodes"].size(), 6u);
  httplib::Headers headers{{"X-Session", id}};
  auto step = client.Post("/spring/step", headers, R"({"count": 3})", "application/json");
  ASSERT_TRUE(step);
  EXPECT_EQ(Json::parse(step->body)["state"]["spring"]["iteration"], 3);
  server.stop();
  thread.join();
}

TEST(Http, SessionsRunConcurrently) {
  Service service(config_of("cube(3)"));
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(service.create_session(config_of("permutohedron(4)")));
  std::vector<std::thread> threads;
  std::vector<std::string> finals(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    threads.emplace_back([&, i] {
      for (int k = 0; k < 5; ++k) {
        service.handle("POST", "/spring/step", R"({"count": 20})", ids[i]);
        service.handle("GET", "/scene", "", ids[i]);
      }
      finals[i] = service.handle("GET", "/scene", "", ids[i]).body;
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& f : finals) EXPECT_EQ(f, finals[0]);
  EXPECT_EQ(Json::parse(finals[0])["state"]["spring"]["iteration"], 100);
}

TEST(Views, LinearObjectiveIsTheInnerProduct) {
  Polytope p = product(simplex(2), cube(3));
  SpringInputs inputs = linear_objective(p, {Scalar(1), Scalar(2), Scalar(0), Scalar(0), Scalar(0)});
  ASSERT_EQ(inputs.objective->size(), p.num_vertices());
  for (std::size_t v = 0; v < p.num_vertices(); ++v) {
    EXPECT_EQ((*inputs.objective)[v], to_double(p.vertices[v][0]) + 2 * to_double(p.vertices[v][1]));
  }
  EXPECT_THROW(linear_objective(p, {Scalar(1)}), ValidationError);
}

TEST(Views, OriginalLengthsOfTheKleeMintyCube) {
  Polytope p = klee_minty(3);
  Graph g = graph_of(p);
  auto lengths = original_edge_lengths(p, g);
  ASSERT_EQ(lengths.size(), g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    double sq = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      double d = to_double(p.vertices[e.u][k]) - to_double(p.vertices[e.v][k]);
      sq += d * d;
    }
    EXPECT_DOUBLE_EQ(lengths[i], std::sqrt(sq));
  }
  EXPECT_THROW(original_edge_lengths(p, graphs::cycle(3)), ValidationError);
}
