#include "polydraw/export.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace polydraw {

ExportFormat parse_export_format(const std::string& name) {
  if (name == "json") return ExportFormat::json;
  if (name == "svg") return ExportFormat::svg;
  if (name == "obj") return ExportFormat::obj;
  throw ValidationError("unknown export format '" + name + "' (json, svg, obj)");
}

std::array<double, 2> camera_project(const Camera& camera, const std::vector<double>& p) {
  const double a = camera.azimuth * std::numbers::pi / 180;
  const double e = camera.elevation * std::numbers::pi / 180;
  const std::array<double, 3> right{-std::sin(a), std::cos(a), 0};
  const std::array<double, 3> up{-std::sin(e) * std::cos(a), -std::sin(e) * std::sin(a), std::cos(e)};
  return {right[0] * p[0] + right[1] * p[1] + right[2] * p[2], up[0] * p[0] + up[1] * p[1] + up[2] * p[2]};
}

namespace {

std::string shortest(double x) {
  if (x == 0) return "0";  // also folds -0
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string fixed3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  return s == "-0.000" ? "0.000" : s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string edge_color(const SceneEdge& e) {
  if (!e.color.empty()) return e.color;
  if (e.kind == "dual") return "#1e3ce6";
  if (e.kind == "artificial") return "#999999";
  return "#333333";
}

std::string export_svg(const Scene& scene, const ExportOptions& options) {
  const std::size_t dim = scene.dimension();
  if (dim == 3 && !options.camera) {
    throw ValidationError("dimension mismatch: SVG export of a 3D scene needs a camera");
  }
  if (!(options.scale > 0) || !(options.margin >= 0)) throw ValidationError("SVG scale must be positive");
  std::vector<std::array<double, 2>> screen;
  for (const auto& n : scene.nodes) {
    screen.push_back(dim == 3 ? camera_project(*options.camera, n.position)
                              : std::array<double, 2>{n.position[0], n.position[1]});
  }
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  if (!screen.empty()) {
    min_x = max_x = screen[0][0];
    min_y = max_y = screen[0][1];
    for (const auto& s : screen) {
      min_x = std::min(min_x, s[0]);
      max_x = std::max(max_x, s[0]);
      min_y = std::min(min_y, s[1]);
      max_y = std::max(max_y, s[1]);
    }
  }
  // Scene y points up, SVG y points down.
  auto sx = [&](double x) { return options.margin + (x - min_x) * options.scale; };
  auto sy = [&](double y) { return options.margin + (max_y - y) * options.scale; };
  const std::string width = fixed3((max_x - min_x) * options.scale + 2 * options.margin);
  const std::string height = fixed3((max_y - min_y) * options.scale + 2 * options.margin);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<g class=\"edges\" fill=\"none\">\n";
  for (const auto& e : scene.edges) {
    const double stroke = e.kind == "dual" ? 2.5 : e.kind == "artificial" ? 0.5 : 1.0;
    out << "<line class=\"" << e.kind << "\" x1=\"" << fixed3(sx(screen[e.u][0])) << "\" y1=\""
        << fixed3(sy(screen[e.u][1])) << "\" x2=\"" << fixed3(sx(screen[e.v][0])) << "\" y2=\""
        << fixed3(sy(screen[e.v][1])) << "\" stroke=\"" << edge_color(e) << "\" stroke-width=\"" << stroke << "\"";
    if (e.kind == "artificial") out << " stroke-dasharray=\"2 2\"";
    out << "/>\n";
  }
  out << "</g>\n<g class=\"nodes\">\n";
  for (std::size_t i = 0; i < scene.nodes.size(); ++i) {
    const auto& n = scene.nodes[i];
    out << "<circle class=\"" << to_string(n.kind) << "\" cx=\"" << fixed3(sx(screen[i][0])) << "\" cy=\""
        << fixed3(sy(screen[i][1])) << "\" r=\"3\" fill=\"" << (n.color.empty() ? "#000000" : n.color) << "\"><title>"
        << xml_escape(n.label) << "</title></circle>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string export_obj(const Scene& scene) {
  std::ostringstream out;
  out << "# " << scene.nodes.size() << " vertices, " << scene.faces.size() << " faces, " << scene.edges.size()
      << " edges\n";
  for (const auto& n : scene.nodes) {
    out << 'v';
    for (std::size_t k = 0; k < 3; ++k) out << ' ' << shortest(k < n.position.size() ? n.position[k] : 0.0);
    out << '\n';
  }
  for (const auto& f : scene.faces) {
    out << 'f';
    for (auto v : f) out << ' ' << v + 1;
    out << '\n';
  }
  for (const auto& e : scene.edges) out << "l " << e.u + 1 << ' ' << e.v + 1 << '\n';
  return out.str();
}

}  // namespace

std::string export_scene(const Scene& scene, ExportFormat format, const ExportOptions& options) {
  scene.validate();
  switch (format) {
    case ExportFormat::json: return scene_to_json(scene).dump(2) + "\n";
    case ExportFormat::svg: return export_svg(scene, options);
    case ExportFormat::obj: return export_obj(scene);
  }
  throw ValidationError("unknown export format");
}

}  // namespace polydraw
