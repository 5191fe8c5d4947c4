#pragma once

#include "polydraw/face_lattice.hpp"
#include "polydraw/polyhedron.hpp"

#include <optional>
#include <vector>

namespace polydraw {

/// Viewpoint steering state. All points are in the chart coordinates of the
/// polytope (its ambient coordinates when it is full-dimensional).
struct SchlegelState {
  std::size_t facet = 0;
  Vector w;                           // anchor in the relative interior of the facet
  Vector r;                           // ray leaving P through w
  Scalar zeta{1, 2};                  // zoom value in (0, 1)
  std::optional<Scalar> lambda_max;   // nullopt: the ray never leaves the beyond-region
  Vector viewpoint;

  bool bounded() const { return lambda_max.has_value(); }
  bool operator==(const SchlegelState&) const = default;
};

/// Rational orthogonal frame of the affine hull of a facet, in ambient
/// coordinates. Basis vectors are not normalized; `norms2` holds their
/// squared lengths, so isometric coordinates are coords[k] * sqrt(norms2[k]).
struct FacetFrame {
  Vector origin;
  Matrix basis;
  Vector norms2;

  Vector coords_of(const Vector& ambient_point) const;
  Vector point_of(const Vector& coords) const;
  /// Ambient direction with the given frame coordinates.
  Vector direction_of(const Vector& coords) const;
  std::vector<double> isometric(const Vector& coords) const;
  /// Inverse of `isometric`, rounded through doubles.
  Vector from_isometric(const std::vector<double>& xs) const;
};

FacetFrame facet_frame(const Polytope& p, std::size_t facet);

struct SchlegelCell {
  Bitset vertices;
  int dim = 0;
};

struct SchlegelDiagram {
  std::size_t facet = 0;
  FacetFrame frame;
  /// Projected vertices in ambient coordinates and in frame coordinates.
  std::vector<Vector> ambient_positions;
  std::vector<Vector> positions;
  /// Images of all nonempty proper faces except the facet itself.
  std::vector<SchlegelCell> cells;

  std::vector<std::size_t> cells_of_dim(int d) const;
};

/// Facet normal and offset in chart coordinates.
Inequality chart_facet(const Polytope& p, std::size_t facet);

/// Largest t with w + t r strictly beyond `facet` for all smaller t > 0, or
/// nullopt if no other facet bounds the ray.
std::optional<Scalar> lambda_max(const Polytope& p, std::size_t facet, const Vector& w, const Vector& r);

SchlegelState init_state(const Polytope& p, std::size_t facet, const Scalar& zeta = Scalar(1, 2));

/// v violates the facet's inequality and strictly satisfies all others.
bool validate_viewpoint(const Polytope& p, std::size_t facet, const Vector& v);

/// Central projection from v onto the facet. Throws "invalid viewpoint".
SchlegelDiagram project(const Polytope& p, std::size_t facet, const Vector& v);
SchlegelDiagram project(const Polytope& p, const SchlegelState& state);

SchlegelState set_zoom(const Polytope& p, const SchlegelState& state, const Scalar& zeta);

/// The unique facet containing all marked vertices. Throws "no such facet"
/// or "ambiguous".
std::size_t select_facet(const Polytope& p, const std::vector<std::size_t>& marked);

/// Moves w by -d and v by +d for a displacement d parallel to the facet
/// (chart coordinates). Inadmissible displacements are shortened by bisection.
SchlegelState drag_facet_vertex(const Polytope& p, const SchlegelState& state, std::size_t vertex,
                                const Vector& displacement);

/// New viewpoint on the line through vertex x and the target point (on the
/// facet's hyperplane) at the height of the current viewpoint, so that x
/// projects onto the target. Throws "invalid viewpoint" if not beyond.
SchlegelState drag_nonfacet_vertex(const Polytope& p, const SchlegelState& state, std::size_t vertex,
                                   const Vector& target);

/// State with viewpoint v anchored at w (v must be valid and w in the facet's
/// relative interior). `zeta_hint` is kept when the new ray is unbounded.
SchlegelState anchor_state(const Polytope& p, std::size_t facet, const Vector& w, const Vector& v,
                           const Scalar& zeta_hint);

}  // namespace polydraw
