#include "polydraw/schlegel.hpp"

#include <cmath>

namespace polydraw {

namespace {

Vector chart_vertex(const Polytope& p, std::size_t v) { return p.to_chart(p.vertices.at(v)); }

void check_facet(const Polytope& p, std::size_t facet) {
  if (facet >= p.num_facets()) throw ValidationError("not a facet");
  if (p.dim < 1) throw ValidationError("Schlegel diagrams need dim >= 1");
}

void check_point(const Polytope& p, const Vector& x) {
  if (x.size() != p.chart.size()) throw ValidationError("point has wrong dimension");
}

bool in_relative_interior(const Polytope& p, std::size_t facet, const Vector& y) {
  for (std::size_t i = 0; i < p.num_facets(); ++i) {
    Inequality f = chart_facet(p, i);
    Scalar s = f.slack(y);
    if (i == facet ? s != 0 : s <= 0) return false;
  }
  return true;
}

Vector viewpoint_for(const Vector& w, const Vector& r, const Scalar& zeta, const std::optional<Scalar>& lambda) {
  if (lambda) return axpy(w, zeta * *lambda, r);
  return axpy(w, zeta / (1 - zeta), r);
}

void check_zeta(const Scalar& zeta) {
  if (zeta <= 0 || zeta >= 1) throw ValidationError("zoom value must lie strictly between 0 and 1");
}

}  // namespace

Vector FacetFrame::coords_of(const Vector& ambient_point) const {
  Vector diff = subtract(ambient_point, origin);
  Vector out;
  for (std::size_t k = 0; k < basis.size(); ++k) out.push_back(dot(diff, basis[k]) / norms2[k]);
  return out;
}

Vector FacetFrame::direction_of(const Vector& coords) const {
  if (coords.size() != basis.size()) throw ValidationError("frame coordinates of wrong dimension");
  Vector out(origin.size(), Scalar(0));
  for (std::size_t k = 0; k < basis.size(); ++k) out = axpy(out, coords[k], basis[k]);
  return out;
}

Vector FacetFrame::point_of(const Vector& coords) const { return add(origin, direction_of(coords)); }

std::vector<double> FacetFrame::isometric(const Vector& coords) const {
  std::vector<double> out;
  for (std::size_t k = 0; k < coords.size(); ++k) out.push_back(to_double(coords[k]) * std::sqrt(to_double(norms2[k])));
  return out;
}

Vector FacetFrame::from_isometric(const std::vector<double>& xs) const {
  if (xs.size() != basis.size()) throw ValidationError("frame coordinates of wrong dimension");
  Vector out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (!std::isfinite(xs[k])) throw ValidationError("non-finite coordinate");
    out.push_back(scalar_from_double(xs[k] / std::sqrt(to_double(norms2[k]))));
  }
  return out;
}

FacetFrame facet_frame(const Polytope& p, std::size_t facet) {
  check_facet(p, facet);
  Matrix constraints;
  for (const auto& eq : p.equations) constraints.push_back(eq.a);
  constraints.push_back(p.facets[facet].a);
  FacetFrame frame;
  frame.origin = p.vertices.at(p.facet_vertices(facet).front());
  for (const auto& b : nullspace(constraints, p.ambient_dim)) {
    Vector e = b;
    for (std::size_t j = 0; j < frame.basis.size(); ++j) {
      e = axpy(e, -dot(b, frame.basis[j]) / frame.norms2[j], frame.basis[j]);
    }
    e = to_scalar(primitive_integer(e));
    frame.norms2.push_back(dot(e, e));
    frame.basis.push_back(std::move(e));
  }
  return frame;
}

std::vector<std::size_t> SchlegelDiagram::cells_of_dim(int d) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].dim == d) out.push_back(i);
  }
  return out;
}

Inequality chart_facet(const Polytope& p, std::size_t facet) {
  const auto& f = p.facets.at(facet);
  return {p.to_chart(f.a), f.b};
}

std::optional<Scalar> lambda_max(const Polytope& p, std::size_t facet, const Vector& w, const Vector& r) {
  std::optional<Scalar> best;
  for (std::size_t i = 0; i < p.num_facets(); ++i) {
    if (i == facet) continue;
    Inequality f = chart_facet(p, i);
    Scalar ar = dot(f.a, r);
    if (ar <= 0) continue;
    Scalar ratio = f.slack(w) / ar;
    if (!best || ratio < *best) best = ratio;
  }
  return best;
}

SchlegelState init_state(const Polytope& p, std::size_t facet, const Scalar& zeta) {
  check_facet(p, facet);
  check_zeta(zeta);
  SchlegelState s;
  s.facet = facet;
  std::vector<Vector> fv;
  for (auto v : p.facet_vertices(facet)) fv.push_back(chart_vertex(p, v));
  s.w = barycenter(fv);
  s.r = to_scalar(primitive_integer(chart_facet(p, facet).a));
  s.zeta = zeta;
  s.lambda_max = lambda_max(p, facet, s.w, s.r);
  s.viewpoint = viewpoint_for(s.w, s.r, s.zeta, s.lambda_max);
  return s;
}

bool validate_viewpoint(const Polytope& p, std::size_t facet, const Vector& v) {
  if (facet >= p.num_facets() || v.size() != p.chart.size()) return false;
  for (std::size_t i = 0; i < p.num_facets(); ++i) {
    Scalar s = chart_facet(p, i).slack(v);
    if (i == facet ? s >= 0 : s <= 0) return false;
  }
  return true;
}

SchlegelDiagram project(const Polytope& p, std::size_t facet, const Vector& v) {
  check_facet(p, facet);
  check_point(p, v);
  if (!validate_viewpoint(p, facet, v)) throw ValidationError("invalid viewpoint");
  const Inequality f = chart_facet(p, facet);
  const Scalar av = dot(f.a, v);
  SchlegelDiagram d;
  d.facet = facet;
  d.frame = facet_frame(p, facet);
  for (std::size_t i = 0; i < p.num_vertices(); ++i) {
    Vector x = chart_vertex(p, i);
    Scalar t = (f.b - av) / (dot(f.a, x) - av);
    Vector image = axpy(v, t, subtract(x, v));
    d.ambient_positions.push_back(p.from_chart(image));
    d.positions.push_back(d.frame.coords_of(d.ambient_positions.back()));
  }
  FaceLattice lattice = face_lattice(p);
  for (std::size_t i = 0; i < lattice.faces.size(); ++i) {
    int dim = lattice.dims[i];
    if (dim < 0 || dim >= p.dim) continue;
    if (lattice.faces[i] == p.incidence[facet]) continue;
    d.cells.push_back({lattice.faces[i], dim});
  }
  return d;
}

SchlegelDiagram project(const Polytope& p, const SchlegelState& state) {
  return project(p, state.facet, state.viewpoint);
}

SchlegelState set_zoom(const Polytope& p, const SchlegelState& state, const Scalar& zeta) {
  check_facet(p, state.facet);
  check_zeta(zeta);
  SchlegelState s = state;
  s.zeta = zeta;
  s.viewpoint = viewpoint_for(s.w, s.r, zeta, s.lambda_max);
  return s;
}

std::size_t select_facet(const Polytope& p, const std::vector<std::size_t>& marked) {
  if (marked.empty()) throw ValidationError("no vertices marked");
  Bitset want(p.num_vertices());
  for (auto v : marked) {
    if (v >= p.num_vertices()) throw ValidationError("marked vertex out of range");
    want.set(v);
  }
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < p.num_facets(); ++i) {
    if (!want.is_subset_of(p.incidence[i])) continue;
    if (found) throw ValidationError("ambiguous");
    found = i;
  }
  if (!found) throw ValidationError("no such facet");
  return *found;
}

SchlegelState anchor_state(const Polytope& p, std::size_t facet, const Vector& w, const Vector& v,
                           const Scalar& zeta_hint) {
  check_zeta(zeta_hint);
  if (!in_relative_interior(p, facet, w)) throw ValidationError("anchor not in the facet's relative interior");
  if (!validate_viewpoint(p, facet, v)) throw ValidationError("invalid viewpoint");
  SchlegelState s;
  s.facet = facet;
  s.w = w;
  s.viewpoint = v;
  Vector u = subtract(v, w);
  s.lambda_max = lambda_max(p, facet, w, u);
  if (s.lambda_max) {
    // v = w + u sits at parameter 1 on a ray of length lambda.
    s.r = u;
    s.zeta = 1 / *s.lambda_max;
  } else {
    s.zeta = zeta_hint;
    s.r = scale(u, (1 - zeta_hint) / zeta_hint);
  }
  return s;
}

SchlegelState drag_facet_vertex(const Polytope& p, const SchlegelState& state, std::size_t vertex,
                                const Vector& displacement) {
  check_facet(p, state.facet);
  check_point(p, displacement);
  if (vertex >= p.num_vertices() || !p.incidence[state.facet].test(vertex)) {
    throw ValidationError("vertex is not on the facet");
  }
  if (dot(chart_facet(p, state.facet).a, displacement) != 0) {
    throw ValidationError("displacement not parallel to the facet");
  }
  if (is_zero(displacement)) return state;
  auto admissible = [&](const Scalar& t) {
    return in_relative_interior(p, state.facet, axpy(state.w, -t, displacement)) &&
           validate_viewpoint(p, state.facet, axpy(state.viewpoint, t, displacement));
  };
  Scalar t(1);
  if (!admissible(t)) {
    Scalar lo(0), hi(1);
    for (int i = 0; i < 40; ++i) {
      Scalar mid = (lo + hi) / 2;
      if (admissible(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    t = lo;
  }
  if (t == 0) return state;
  return anchor_state(p, state.facet, axpy(state.w, -t, displacement), axpy(state.viewpoint, t, displacement),
                      state.zeta);
}

SchlegelState drag_nonfacet_vertex(const Polytope& p, const SchlegelState& state, std::size_t vertex,
                                   const Vector& target) {
  check_facet(p, state.facet);
  check_point(p, target);
  if (vertex >= p.num_vertices()) throw ValidationError("vertex out of range");
  const Inequality f = chart_facet(p, state.facet);
  Vector x = chart_vertex(p, vertex);
  if (f.slack(x) == 0) throw ValidationError("vertex lies on the facet");
  if (f.slack(target) != 0) throw ValidationError("target not on the facet hyperplane");
  Scalar denom = dot(f.a, target) - dot(f.a, x);
  if (denom == 0) throw ValidationError("line is parallel to the viewpoint hyperplane");
  Scalar s = (dot(f.a, state.viewpoint) - dot(f.a, x)) / denom;
  Vector v = axpy(x, s, subtract(target, x));
  if (!validate_viewpoint(p, state.facet, v)) throw ValidationError("invalid viewpoint");
  return anchor_state(p, state.facet, state.w, v, state.zeta);
}

}  // namespace polydraw
