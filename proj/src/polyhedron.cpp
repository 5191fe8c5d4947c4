#include "polydraw/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace polydraw {

namespace {

Integer int_dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Ray {
  IntVector x;
  Bitset zeros;  // processed rows tight on x
};

bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Primitive integer normal, rescaling b by the same positive factor.
Inequality normalize_inequality(const Vector& a, const Scalar& b) {
  IntVector ia = primitive_integer(a);
  std::size_t k = 0;
  while (k < a.size() && a[k] == 0) ++k;
  if (k == a.size()) return {a, b};
  Scalar factor = Scalar(ia[k]) / a[k];
  return {to_scalar(ia), b * factor};
}

std::vector<Bitset> incidence_of(const std::vector<Inequality>& ineqs,
                                 const std::vector<Vector>& points) {
  std::vector<Bitset> inc(ineqs.size(), Bitset(points.size()));
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (ineqs[i].slack(points[j]) == 0) inc[i].set(j);
    }
  }
  return inc;
}

struct AffineHull {
  std::vector<Inequality> equations;  // RREF
  std::vector<std::size_t> chart;     // free coordinates
};

AffineHull affine_hull(const std::vector<Vector>& points) {
  const std::size_t d = points.front().size();
  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(subtract(points[i], points[0]));
  Matrix normals = nullspace(diffs, d);
  AffineHull hull;
  if (normals.empty()) {
    for (std::size_t i = 0; i < d; ++i) hull.chart.push_back(i);
    return hull;
  }
  Matrix aug;
  for (const auto& n : normals) {
    Vector row = n;
    row.push_back(dot(n, points[0]));
    aug.push_back(std::move(row));
  }
  RowEchelon ref = reduced_row_echelon(std::move(aug), d);
  std::vector<bool> pivot(d, false);
  for (auto p : ref.pivots) pivot[p] = true;
  for (const auto& row : ref.rows) {
    hull.equations.push_back({Vector(row.begin(), row.begin() + static_cast<long>(d)), row[d]});
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!pivot[i]) hull.chart.push_back(i);
  }
  return hull;
}

}  // namespace

std::vector<std::size_t> Polytope::facet_vertices(std::size_t facet) const {
  std::vector<std::size_t> out;
  const Bitset& row = incidence.at(facet);
  for (auto i = row.find_first(); i != Bitset::npos; i = row.find_next(i)) out.push_back(i);
  return out;
}

std::vector<std::size_t> Polytope::vertex_facets(std::size_t vertex) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < incidence.size(); ++f) {
    if (incidence[f].test(vertex)) out.push_back(f);
  }
  return out;
}

Vector Polytope::to_chart(const Vector& x) const {
  Vector y;
  y.reserve(chart.size());
  for (auto c : chart) y.push_back(x.at(c));
  return y;
}

Vector Polytope::from_chart(const Vector& y) const {
  Vector x(ambient_dim, Scalar(0));
  for (std::size_t k = 0; k < chart.size(); ++k) x[chart[k]] = y.at(k);
  // Equations are in RREF: the pivot coordinate is solved from the chart ones.
  for (const auto& eq : equations) {
    std::size_t pivot = 0;
    while (eq.a[pivot] == 0) ++pivot;
    Scalar value = eq.b;
    for (auto c : chart) value -= eq.a[c] * x[c];
    x[pivot] = value;
  }
  return x;
}

Polytope Polytope::in_chart() const {
  Polytope q;
  q.ambient_dim = chart.size();
  q.dim = dim;
  for (const auto& v : vertices) q.vertices.push_back(to_chart(v));
  for (const auto& f : facets) q.facets.push_back({to_chart(f.a), f.b});
  for (std::size_t i = 0; i < chart.size(); ++i) q.chart.push_back(i);
  q.incidence = incidence;
  return q;
}

bool Polytope::contains(const Vector& x) const {
  for (const auto& eq : equations) {
    if (dot(eq.a, x) != eq.b) return false;
  }
  for (const auto& f : facets) {
    if (f.slack(x) < 0) return false;
  }
  return true;
}

bool Polyhedron::contains(const Vector& x) const {
  for (const auto& f : inequalities) {
    if (f.slack(x) < 0) return false;
  }
  return true;
}

std::vector<IntVector> cone_extreme_rays(const std::vector<IntVector>& rows, std::size_t dim) {
  Matrix scalar_rows;
  scalar_rows.reserve(rows.size());
  for (const auto& r : rows) scalar_rows.push_back(to_scalar(r));
  std::vector<std::size_t> basis = independent_rows(scalar_rows, dim);
  if (basis.size() < dim) throw ValidationError("not pointed");

  const std::size_t m = rows.size();
  // The simplicial cone of the basis rows: ray k is -B^{-1} e_k.
  Matrix b_mat;
  for (auto i : basis) b_mat.push_back(scalar_rows[i]);
  std::vector<Ray> rays;
  for (std::size_t k = 0; k < dim; ++k) {
    Vector rhs(dim, Scalar(0));
    rhs[k] = -1;
    auto sol = solve(b_mat, rhs);
    Ray ray{primitive_integer(*sol), Bitset(m)};
    for (std::size_t j = 0; j < dim; ++j) {
      if (j != k) ray.zeros.set(basis[j]);
    }
    rays.push_back(std::move(ray));
  }

  std::vector<bool> in_basis(m, false);
  for (auto i : basis) in_basis[i] = true;
  const std::size_t min_common = dim >= 2 ? dim - 2 : 0;

  for (std::size_t row = 0; row < m; ++row) {
    if (in_basis[row]) continue;
    const IntVector& a = rows[row];
    std::vector<Integer> values(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      values[i] = int_dot(a, rays[i].x);
      if (values[i] > 0) pos.push_back(i);
      else if (values[i] < 0) neg.push_back(i);
    }
    if (pos.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i) {
        if (values[i] == 0) rays[i].zeros.set(row);
      }
      continue;
    }

    std::vector<Ray> next;
    next.reserve(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (values[i] > 0) continue;
      Ray r = rays[i];
      if (values[i] == 0) r.zeros.set(row);
      next.push_back(std::move(r));
    }
    for (auto p : pos) {
      for (auto n : neg) {
        Bitset common = rays[p].zeros & rays[n].zeros;
        if (common.count() < min_common) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == p || o == n) continue;
          if (common.is_subset_of(rays[o].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        IntVector x(dim);
        for (std::size_t c = 0; c < dim; ++c) {
          x[c] = values[p] * rays[n].x[c] - values[n] * rays[p].x[c];
        }
        Ray r{primitive_integer(std::span<const Integer>(x)), std::move(common)};
        r.zeros.set(row);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
  }

  std::vector<IntVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.x));
  return out;
}

Polytope convex_hull(const std::vector<Vector>& input) {
  if (input.empty()) throw ValidationError("convex hull of an empty point set");
  const std::size_t d = input.front().size();
  for (const auto& p : input) {
    if (p.size() != d) throw ValidationError("points of mixed dimension");
  }
  std::vector<Vector> points = input;
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());

  Polytope poly;
  poly.ambient_dim = d;
  AffineHull hull = affine_hull(points);
  poly.equations = hull.equations;
  poly.chart = hull.chart;
  poly.dim = static_cast<int>(hull.chart.size());

  if (poly.dim == 0) {
    poly.vertices = points;
    return poly;
  }

  const std::size_t k = hull.chart.size();
  std::vector<Vector> local;
  for (const auto& p : points) {
    Vector y;
    for (auto c : hull.chart) y.push_back(p[c]);
    local.push_back(std::move(y));
  }

  // Valid inequalities (a, b) form the cone {a·y_i - b <= 0}.
  std::vector<IntVector> rows;
  for (const auto& y : local) {
    Vector r = y;
    r.push_back(Scalar(-1));
    rows.push_back(primitive_integer(r));
  }
  std::vector<Inequality> local_facets;
  for (const auto& ray : cone_extreme_rays(rows, k + 1)) {
    Vector a = to_scalar(std::span<const Integer>(ray.data(), k));
    if (is_zero(a)) continue;  // the trivial inequality 0 <= b
    local_facets.push_back(normalize_inequality(a, Scalar(ray[k])));
  }

  // A point is a vertex iff the normals of its facets have full rank.
  std::vector<Vector> verts;
  std::vector<Vector> local_verts;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Matrix tight;
    for (const auto& f : local_facets) {
      if (f.slack(local[i]) == 0) tight.push_back(f.a);
    }
    if (rank(tight, k) == k) {
      verts.push_back(points[i]);
      local_verts.push_back(local[i]);
    }
  }

  std::vector<Inequality> facets;
  for (const auto& f : local_facets) {
    Vector a(d, Scalar(0));
    for (std::size_t c = 0; c < k; ++c) a[hull.chart[c]] = f.a[c];
    facets.push_back({std::move(a), f.b});
  }
  std::sort(facets.begin(), facets.end(), [](const Inequality& x, const Inequality& y) {
    if (x.a != y.a) return lex_less(x.a, y.a);
    return x.b < y.b;
  });

  poly.vertices = std::move(verts);
  poly.facets = std::move(facets);
  poly.incidence = incidence_of(poly.facets, poly.vertices);
  return poly;
}

Polyhedron vertex_enumeration(std::size_t dim, const std::vector<Inequality>& inequalities) {
  Matrix normals;
  for (const auto& f : inequalities) {
    if (f.a.size() != dim) throw ValidationError("inequality of wrong dimension");
    normals.push_back(f.a);
  }

  if (rank(normals, dim) < dim) {
    // Decide feasibility in the row space before reporting the line.
    RowEchelon ref = reduced_row_echelon(normals, dim);
    const std::size_t r = ref.rows.size();
    std::vector<Inequality> reduced;
    for (const auto& f : inequalities) {
      Vector a(r);
      for (std::size_t j = 0; j < r; ++j) a[j] = dot(f.a, ref.rows[j]);
      reduced.push_back({std::move(a), f.b});
    }
    if (r > 0) {
      vertex_enumeration(r, reduced);  // throws "empty" if infeasible
    } else {
      for (const auto& f : inequalities) {
        if (f.b < 0) throw ValidationError("empty");
      }
    }
    throw ValidationError("not pointed");
  }

  // Homogenize: (x, t) with t >= 0 and a·x - b t <= 0.
  std::vector<IntVector> rows;
  for (const auto& f : inequalities) {
    Vector r = f.a;
    r.push_back(-f.b);
    rows.push_back(primitive_integer(r));
  }
  IntVector t_row(dim + 1, Integer(0));
  t_row[dim] = -1;
  rows.push_back(t_row);

  Polyhedron out;
  out.dim = dim;
  out.inequalities = inequalities;
  for (const auto& ray : cone_extreme_rays(rows, dim + 1)) {
    if (ray[dim] > 0) {
      Vector v(dim);
      for (std::size_t c = 0; c < dim; ++c) v[c] = Scalar(ray[c]) / Scalar(ray[dim]);
      out.vertices.push_back(std::move(v));
    } else {
      out.rays.push_back(to_scalar(std::span<const Integer>(ray.data(), dim)));
    }
  }
  if (out.vertices.empty()) throw ValidationError("empty");
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
  std::sort(out.rays.begin(), out.rays.end(), lex_less);

  out.incidence.assign(inequalities.size(), Bitset(out.num_generators()));
  for (std::size_t i = 0; i < inequalities.size(); ++i) {
    for (std::size_t j = 0; j < out.vertices.size(); ++j) {
      if (inequalities[i].slack(out.vertices[j]) == 0) out.incidence[i].set(j);
    }
    for (std::size_t j = 0; j < out.rays.size(); ++j) {
      if (dot(inequalities[i].a, out.rays[j]) == 0) out.incidence[i].set(out.vertices.size() + j);
    }
  }
  return out;
}

Polytope polytope_from_inequalities(std::size_t dim, const std::vector<Inequality>& inequalities) {
  Polyhedron p = vertex_enumeration(dim, inequalities);
  if (!p.rays.empty()) throw ValidationError("unbounded");
  return convex_hull(p.vertices);
}

Polytope polar(const Polytope& p) {
  Polytope q = p.in_chart();
  return polar(q, barycenter(q.vertices));
}

Polytope polar(const Polytope& p, const Vector& center) {
  if (static_cast<std::size_t>(p.dim) != p.ambient_dim) {
    throw ValidationError("polar requires a full-dimensional polytope");
  }
  for (const auto& f : p.facets) {
    if (f.slack(center) <= 0) throw ValidationError("polar center is not interior");
  }
  Polytope q;
  q.ambient_dim = p.ambient_dim;
  q.dim = p.dim;
  for (std::size_t i = 0; i < p.ambient_dim; ++i) q.chart.push_back(i);
  // Facet a·x <= b becomes the vertex c + a / (b - a·c).
  for (const auto& f : p.facets) {
    q.vertices.push_back(axpy(center, 1 / f.slack(center), f.a));
  }
  // Vertex v becomes the facet (v - c)·(y - c) <= 1.
  for (const auto& v : p.vertices) {
    Vector n = subtract(v, center);
    q.facets.push_back(normalize_inequality(n, 1 + dot(n, center)));
  }
  q.incidence.assign(p.vertices.size(), Bitset(p.facets.size()));
  for (std::size_t f = 0; f < p.facets.size(); ++f) {
    for (std::size_t v = 0; v < p.vertices.size(); ++v) {
      if (p.incidence[f].test(v)) q.incidence[v].set(f);
    }
  }
  return q;
}

void validate(const Polytope& p) {
  if (p.incidence.size() != p.facets.size()) throw ValidationError("incidence rows do not match facets");
  for (std::size_t f = 0; f < p.facets.size(); ++f) {
    if (p.incidence[f].size() != p.vertices.size()) throw ValidationError("incidence width mismatch");
    for (std::size_t v = 0; v < p.vertices.size(); ++v) {
      Scalar s = p.facets[f].slack(p.vertices[v]);
      if (s < 0) throw ValidationError("vertex violates a facet inequality");
      if ((s == 0) != p.incidence[f].test(v)) throw ValidationError("incidence disagrees with tightness");
    }
  }
  for (const auto& eq : p.equations) {
    for (const auto& v : p.vertices) {
      if (dot(eq.a, v) != eq.b) throw ValidationError("vertex off the affine hull");
    }
  }
  if (affine_dimension(p.vertices) != p.dim) throw ValidationError("stored dimension is not intrinsic");
}

}  // namespace polydraw
