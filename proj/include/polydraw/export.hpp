#pragma once

#include "polydraw/scene.hpp"

#include <array>
#include <optional>
#include <string>

namespace polydraw {

enum class ExportFormat { json, svg, obj };

ExportFormat parse_export_format(const std::string& name);

/// Orthographic view of a 3D scene, angles in degrees. The eye looks at the
/// origin from direction (cos e cos a, cos e sin a, sin e).
struct Camera {
  double azimuth = 30;
  double elevation = 20;
};

struct ExportOptions {
  std::optional<Camera> camera;
  double scale = 100;  // SVG pixels per scene unit
  double margin = 20;  // SVG pixels around the drawing
};

/// Deterministic serialization. JSON: the scene document, pretty-printed.
/// SVG: 2D scenes directly, 3D scenes only with a camera. OBJ: "v" records
/// (z = 0 for 2D), "f" records for the scene's faces and "l" records for
/// its edges. Throws ValidationError on a dimension mismatch.
std::string export_scene(const Scene& scene, ExportFormat format, const ExportOptions& options = {});

/// Screen coordinates of a 3D point under the camera.
std::array<double, 2> camera_project(const Camera& camera, const std::vector<double>& p);

}  // namespace polydraw
