#include "polydraw/constructions.hpp"
#include "polydraw/export.hpp"
#include "polydraw/face_lattice.hpp"
#include "polydraw/pdgraph.hpp"
#include "polydraw/service.hpp"
#include "polydraw/tightspan.hpp"
#include "polydraw/tropical.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

using namespace polydraw;

namespace {

// A path to an existing file is read; anything else is taken literally.
std::string read_source(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + arg + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& arg, const char* what) {
  try {
    return Json::parse(read_source(arg));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed ") + what + ": " + e.what());
  }
}

void write_output(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw ValidationError("cannot write '" + out + "'");
  file << text;
}

std::vector<Scalar> parse_scalar_list(const std::string& text) {
  std::vector<Scalar> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(parse_scalar(item));
  return out;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoul(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ValidationError("bad index list '" + text + "'");
    }
  }
  return out;
}

struct Common {
  std::uint64_t seed = 0;
  std::string params_file;
  std::string format = "json";
  std::string out;
  double azimuth = 30;
  double elevation = 20;

  SpringParams spring() const {
    SpringParams p;
    if (!params_file.empty()) p = spring_params_from_json(read_json(params_file, "parameter file"), p);
    p.seed = seed;
    p.validate();
    return p;
  }

  void emit(const Scene& scene) const {
    ExportOptions options;
    options.camera = Camera{azimuth, elevation};
    write_output(export_scene(scene, parse_export_format(format), options), out);
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Random seed")->envname("POLYDRAW_SEED");
  cmd->add_option("--params", c.params_file, "JSON file with spring parameters")->envname("POLYDRAW_PARAMS");
  cmd->add_option("--format", c.format, "Output format: json, svg or obj")->envname("POLYDRAW_FORMAT");
  cmd->add_option("--out", c.out, "Output file (default: standard output)");
  cmd->add_option("--azimuth", c.azimuth, "SVG camera azimuth in degrees for 3D scenes");
  cmd->add_option("--elevation", c.elevation, "SVG camera elevation in degrees for 3D scenes");
}

Scene tropical_projection_scene(const TropicalComplex& t, ProjectionSide side) {
  auto coords = project_to_R3(t, side);
  std::vector<std::vector<double>> positions;
  for (const auto& c : coords) {
    std::vector<double> p;
    for (const auto& x : c) p.push_back(to_double(x));
    while (p.size() < 2) p.push_back(0.0);
    positions.push_back(p);
  }
  Graph g = t.complex.skeleton;
  for (std::size_t v = 0; v < g.num_nodes(); ++v) g.nodes()[v].label = "p" + std::to_string(v);
  for (auto r : t.generators) g.nodes()[t.row_vertex[r]].label = "row" + std::to_string(r + 1);
  Scene s = scene_from_graph(g, positions);
  s.metadata = {{"source", "tropical"},
                {"projection", side == ProjectionSide::first_m ? "first" : "last"},
                {"m", t.matrix.m()},
                {"n", t.matrix.n()},
                {"pseudo_vertices", t.num_pseudo_vertices()},
                {"tropical_vertices", t.generators.size()}};
  return s;
}

TropicalMatrix load_tropical(const std::string& arg) {
  std::smatch m;
  static const std::regex cyclic(R"(\s*cyclic\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
  static const std::regex perm(R"(\s*perm\s*\(\s*(\d+)\s*\)\s*)");
  if (std::regex_match(arg, m, cyclic)) return tropical_cyclic(std::stoul(m[1]), std::stoul(m[2]));
  if (std::regex_match(arg, m, perm)) return permutation_matrix(std::stoul(m[1]));
  return parse_tropical_matrix(read_source(arg));
}

SimplicialComplex load_complex(const std::string& arg) {
  if (arg == "cube4") return minimal_cube4_triangulation();
  if (arg == "genus2") return genus_two_solid();
  std::string text = read_source(arg);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return complex_from_json(Json::parse(text));
    } catch (const Json::exception& e) {
      throw ValidationError(std::string("malformed complex: ") + e.what());
    }
  }
  return complex_from_off(text);
}

std::atomic<HttpServer*> active_server{nullptr};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polytope construction and graph drawing"};
  app.require_subcommand(1);
  Common common;

  std::string source;

  auto* construct = app.add_subcommand("construct", "Build a polytope and print it as JSON");
  construct->add_option("polytope", source, "Family expression, e.g. cube(3), or polytope JSON")->required();
  construct->add_option("--out", common.out, "Output file");

  auto* schlegel = app.add_subcommand("schlegel", "Schlegel diagram of a 3- or 4-polytope");
  std::size_t facet = 0;
  std::string marked, zeta = "1/2", log_file;
  schlegel->add_option("polytope", source, "Family expression or polytope JSON")->required();
  schlegel->add_option("--facet", facet, "Projection facet index");
  schlegel->add_option("--marked", marked, "Comma-separated vertices selecting the facet");
  schlegel->add_option("--zeta", zeta, "Zoom value in (0, 1), e.g. 1/2");
  schlegel->add_option("--log", log_file, "Command log to replay (as returned by GET /log)");
  add_common(schlegel, common);

  auto* spring = app.add_subcommand("spring", "Force-directed drawing of a graph or polytope graph");
  std::size_t objective = 0, steps = 0;
  spring->add_option("graph", source, "Graph name, graph JSON, or polytope source")->required();
  spring->add_option("--objective", objective, "Use lambda = x_k of the polytope's vertices (k from 1)");
  std::string linear;
  bool original_lengths = false;
  spring->add_option("--linear", linear, "Use lambda = c1 x1 + c2 x2 + ... with comma-separated coefficients")
      ->excludes("--objective");
  spring->add_flag("--original-lengths", original_lengths, "Desired edge lengths from the polytope's coordinates");
  spring->add_option("--steps", steps, "Run exactly this many steps instead of iterating to convergence");
  add_common(spring, common);

  auto* tutte = app.add_subcommand("tutte", "Tutte rubber-band drawing of a planar 3-connected graph");
  std::string outer;
  tutte->add_option("graph", source, "Graph name, graph JSON, or polytope source")->required();
  tutte->add_option("--outer", outer, "Comma-separated outer face cycle");
  add_common(tutte, common);

  auto* realize = app.add_subcommand("realize", "Realize a planar 3-connected graph as a 3-polytope");
  realize->add_option("graph", source, "Graph name, graph JSON, or polytope source")->required();
  add_common(realize, common);

  auto* tightspan = app.add_subcommand("tightspan", "Tight span of a finite metric");
  std::string mode = "combinatorial";
  tightspan->add_option("metric", source, "Metric file (text matrix or JSON)")->required();
  tightspan->add_option("--mode", mode, "combinatorial or approximate");
  add_common(tightspan, common);

  auto* tropical = app.add_subcommand("tropical", "Tropical polytope of a matrix");
  std::string tmode = "combinatorial";
  tropical->add_option("matrix", source, "Matrix file (CSV or JSON), cyclic(m,n) or perm(n)")->required();
  tropical->add_option("--mode", tmode, "combinatorial, project-first or project-last");
  add_common(tropical, common);

  auto* pdgraph = app.add_subcommand("pdgraph", "Primal-dual graph of a simplicial complex");
  PdLengths lengths;
  bool hide_artificial = false;
  pdgraph->add_option("complex", source, "Complex file (JSON or OFF), cube4 or genus2")->required();
  pdgraph->add_option("--primal-length", lengths.primal, "Desired primal edge length");
  pdgraph->add_option("--dual-length", lengths.dual, "Desired dual edge length");
  pdgraph->add_option("--artificial-length", lengths.artificial, "Desired artificial edge length");
  pdgraph->add_flag("--hide-artificial", hide_artificial, "Leave artificial edges out of the scene");
  add_common(pdgraph, common);

  auto* serve = app.add_subcommand("serve", "Serve interactive sessions over HTTP");
  std::string listen = "127.0.0.1:8080", session_config;
  serve->add_option("polytope", source, "Family expression or polytope JSON for the default session");
  serve->add_option("--listen", listen, "host:port")->envname("POLYDRAW_LISTEN");
  serve->add_option("--config", session_config, "JSON session config (facet, zeta, spring, objective)");
  serve->add_option("--seed", common.seed, "Random seed")->envname("POLYDRAW_SEED");
  serve->add_option("--params", common.params_file, "JSON file with spring parameters")->envname("POLYDRAW_PARAMS");

  auto* exporter = app.add_subcommand("export", "Convert a scene JSON document");
  exporter->add_option("scene", source, "Scene JSON file")->required();
  add_common(exporter, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (construct->parsed()) {
      write_output(polytope_to_json(load_polytope(read_source(source))).dump(2) + "\n", common.out);
    } else if (schlegel->parsed()) {
      SessionConfig config;
      config.polytope = read_source(source);
      config.facet = facet;
      config.zeta = parse_scalar(zeta);
      Polytope p = load_polytope(config.polytope);
      if (!marked.empty()) config.facet = select_facet(p, parse_index_list(marked));
      Session session(config);
      if (!log_file.empty()) {
        Json log = read_json(log_file, "command log");
        session = Session::replay(config, log.is_object() ? log.at("log") : log);
      }
      common.emit(session.scene());
    } else if (spring->parsed()) {
      SpringParams params = common.spring();
      std::string text = read_source(source);
      Graph g = load_graph(text);
      SpringInputs inputs;
      if (objective > 0) inputs = coordinate_objective(load_polytope(text), objective);
      if (!linear.empty()) inputs = linear_objective(load_polytope(text), parse_scalar_list(linear));
      if (original_lengths) inputs.lengths = original_edge_lengths(load_polytope(text), g);
      if (steps > 0) {
        EmbeddingState state = spring_steps(g, init_random_sphere(g, params.seed), params, inputs, steps);
        common.emit(spring_scene(g, state, params));
      } else {
        SpringResult r = run(g, params, inputs);
        common.emit(spring_scene(g, r.state, params, r));
      }
    } else if (tutte->parsed()) {
      Graph g = load_graph(read_source(source));
      std::optional<std::vector<std::size_t>> face;
      if (!outer.empty()) face = parse_index_list(outer);
      common.emit(tutte_scene(g, face));
    } else if (realize->parsed()) {
      Graph g = load_graph(read_source(source));
      common.emit(realization_scene(g, steinitz_realize(g)));
    } else if (tightspan->parsed()) {
      std::string text = read_source(source);
      auto first = text.find_first_not_of(" \t\r\n");
      Metric m = first != std::string::npos && text[first] == '{' ? metric_from_json(read_json(source, "metric"))
                                                                   : parse_metric_text(text);
      TightSpanMode tm;
      if (mode == "combinatorial") tm = TightSpanMode::combinatorial;
      else if (mode == "approximate") tm = TightSpanMode::approximate_metric;
      else throw ValidationError("unknown tight span mode '" + mode + "'");
      common.emit(visualize_tightspan(m, tm, common.spring()).scene);
    } else if (tropical->parsed()) {
      TropicalComplex t = tropical_polytope(load_tropical(source));
      if (tmode == "combinatorial") common.emit(tropical_scene(t, common.spring()));
      else if (tmode == "project-first") common.emit(tropical_projection_scene(t, ProjectionSide::first_m));
      else if (tmode == "project-last") common.emit(tropical_projection_scene(t, ProjectionSide::last_n));
      else throw ValidationError("unknown tropical mode '" + tmode + "'");
    } else if (pdgraph->parsed()) {
      SimplicialComplex k = load_complex(source);
      common.emit(pd_scene(build_pd_graph(k), common.spring(), lengths, hide_artificial));
    } else if (exporter->parsed()) {
      common.emit(scene_from_json(read_json(source, "scene")));
    } else if (serve->parsed()) {
      SessionConfig config;
      if (!session_config.empty()) config = session_config_from_json(read_json(session_config, "session config"));
      if (!source.empty()) config.polytope = read_source(source);
      if (!common.params_file.empty()) config.spring = common.spring();
      if (common.seed != 0) config.spring.seed = common.seed;
      auto colon = listen.rfind(':');
      if (colon == std::string::npos) throw ValidationError("--listen expects host:port");
      int port = 0;
      try {
        port = std::stoi(listen.substr(colon + 1));
      } catch (const std::logic_error&) {
        throw ValidationError("--listen expects host:port");
      }
      Service service(config);
      HttpServer server(service);
      int bound = server.bind(listen.substr(0, colon), port);
      if (bound <= 0) throw ComputationError("cannot listen on " + listen);
      std::cerr << "listening on " << listen.substr(0, colon) << ':' << bound << std::endl;
      active_server = &server;
      std::signal(SIGINT, [](int) {
        if (auto* s = active_server.load()) s->stop();
      });
      server.listen();
      active_server = nullptr;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ComputationError& e) {
    std::cerr << "computation failed: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
