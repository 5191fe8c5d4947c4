#include "polydraw/constructions.hpp"

#include "polydraw/face_lattice.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numeric>

namespace polydraw {

Polytope simplex(int d) {
  if (d < 1) throw ValidationError("simplex dimension must be >= 1");
  std::vector<Vector> pts;
  pts.emplace_back(static_cast<std::size_t>(d), Scalar(0));
  for (int i = 0; i < d; ++i) pts.push_back(unit_vector(static_cast<std::size_t>(d), static_cast<std::size_t>(i)));
  return convex_hull(pts);
}

Polytope cube(int d) {
  if (d < 1) throw ValidationError("cube dimension must be >= 1");
  std::vector<Vector> pts;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    Vector p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    pts.push_back(std::move(p));
  }
  return convex_hull(pts);
}

Polytope cross_polytope(int d) {
  if (d < 1) throw ValidationError("cross-polytope dimension must be >= 1");
  std::vector<Vector> pts;
  for (int i = 0; i < d; ++i) {
    Vector e = unit_vector(static_cast<std::size_t>(d), static_cast<std::size_t>(i));
    pts.push_back(e);
    pts.push_back(scale(e, Scalar(-1)));
  }
  return convex_hull(pts);
}

Polytope permutohedron(int n) {
  if (n < 2) throw ValidationError("permutohedron degree must be >= 2");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<Vector> pts;
  do {
    Vector p;
    for (int x : perm) p.emplace_back(x);
    pts.push_back(std::move(p));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return convex_hull(pts);
}

Polytope cyclic(int d, const std::vector<Scalar>& t) {
  if (d < 1) throw ValidationError("cyclic polytope dimension must be >= 1");
  if (t.size() < static_cast<std::size_t>(d) + 1) throw ValidationError("cyclic polytope needs n >= d+1 points");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i - 1] < t[i])) throw ValidationError("cyclic t-values must be strictly increasing");
  }
  std::vector<Vector> pts;
  for (const auto& ti : t) {
    Vector p;
    Scalar power = 1;
    for (int k = 0; k < d; ++k) {
      power *= ti;
      p.push_back(power);
    }
    pts.push_back(std::move(p));
  }
  return convex_hull(pts);
}

Polytope cyclic(int d, int n) {
  if (n < 2) throw ValidationError("cyclic polytope needs n >= 2");
  std::vector<Scalar> t;
  for (int i = 1; i <= n; ++i) t.emplace_back(i);
  return cyclic(d, t);
}

std::vector<Inequality> klee_minty_inequalities(int d) {
  if (d < 1) throw ValidationError("Klee-Minty dimension must be >= 1");
  const auto n = static_cast<std::size_t>(d);
  const Scalar third(1, 3);
  std::vector<Inequality> ineqs;
  ineqs.push_back({scale(unit_vector(n, 0), Scalar(-1)), Scalar(0)});
  ineqs.push_back({unit_vector(n, 0), Scalar(1)});
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Vector lower(n, Scalar(0));  // x_i / 3 - x_{i+1} <= 0
    lower[i] = third;
    lower[i + 1] = -1;
    ineqs.push_back({lower, Scalar(0)});
    Vector upper(n, Scalar(0));  // x_i / 3 + x_{i+1} <= 1
    upper[i] = third;
    upper[i + 1] = 1;
    ineqs.push_back({upper, Scalar(1)});
  }
  return ineqs;
}

Polytope klee_minty(int d) {
  return polytope_from_inequalities(static_cast<std::size_t>(d), klee_minty_inequalities(d));
}

Polytope product(const Polytope& p, const Polytope& q) {
  std::vector<Vector> pts;
  for (const auto& a : p.vertices) {
    for (const auto& b : q.vertices) {
      Vector c = a;
      c.insert(c.end(), b.begin(), b.end());
      pts.push_back(std::move(c));
    }
  }
  return convex_hull(pts);
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool consume(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) throw ValidationError(std::string("expected '") + c + "' in family expression");
  }
  std::string identifier() {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    if (start == pos) throw ValidationError("expected a family name");
    return std::string(text.substr(start, pos - start));
  }
  Scalar number() {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != ',' && text[pos] != ')' && text[pos] != ';') ++pos;
    return parse_scalar(text.substr(start, pos - start));
  }
  int integer() {
    Scalar s = number();
    if (boost::multiprecision::denominator(s) != 1) throw ValidationError("expected an integer parameter");
    return boost::multiprecision::numerator(s).convert_to<int>();
  }

  Polytope polytope() {
    std::string name = identifier();
    expect('(');
    Polytope result;
    if (name == "product") {
      Polytope a = polytope();
      expect(',');
      Polytope b = polytope();
      result = product(a, b);
    } else if (name == "cyclic") {
      int d = integer();
      if (consume(';')) {
        std::vector<Scalar> t{number()};
        while (consume(',')) t.push_back(number());
        result = cyclic(d, t);
      } else {
        expect(',');
        result = cyclic(d, integer());
      }
    } else {
      int arg = integer();
      if (name == "simplex") result = simplex(arg);
      else if (name == "cube") result = cube(arg);
      else if (name == "cross") result = cross_polytope(arg);
      else if (name == "permutohedron") result = permutohedron(arg);
      else if (name == "klee_minty") result = klee_minty(arg);
      else throw ValidationError("unknown polytope family '" + name + "'");
    }
    expect(')');
    return result;
  }
};

Graph graph_from_points(const std::vector<std::array<double, 3>>& pts, double edge_length) {
  Graph g(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double d2 = 0;
      for (int k = 0; k < 3; ++k) d2 += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      if (std::abs(std::sqrt(d2) - edge_length) < 1e-9) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace

Polytope construct_standard(std::string_view expression) {
  Parser parser{expression};
  Polytope p = parser.polytope();
  parser.skip();
  if (parser.pos != expression.size()) throw ValidationError("trailing characters in family expression");
  return p;
}

namespace graphs {

Graph path(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle(std::size_t n) {
  Graph g = path(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

Graph wheel(std::size_t rim) {
  Graph g(rim + 1);
  for (std::size_t i = 1; i <= rim; ++i) {
    g.add_edge(0, i);
    g.add_edge(i, i == rim ? 1 : i + 1);
  }
  return g;
}

Graph icosahedron() {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  std::vector<std::array<double, 3>> pts;
  for (double a : {-1.0, 1.0}) {
    for (double b : {-phi, phi}) {
      pts.push_back({0, a, b});
      pts.push_back({a, b, 0});
      pts.push_back({b, 0, a});
    }
  }
  return graph_from_points(pts, 2.0);
}

Graph dodecahedron() {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  std::vector<std::array<double, 3>> pts;
  for (double x : {-1.0, 1.0}) {
    for (double y : {-1.0, 1.0}) {
      for (double z : {-1.0, 1.0}) pts.push_back({x, y, z});
    }
  }
  for (double a : {-1 / phi, 1 / phi}) {
    for (double b : {-phi, phi}) {
      pts.push_back({0, a, b});
      pts.push_back({a, b, 0});
      pts.push_back({b, 0, a});
    }
  }
  return graph_from_points(pts, 2 / phi);
}

Graph cube() { return graph_of(polydraw::cube(3)); }

}  // namespace graphs

}  // namespace polydraw
