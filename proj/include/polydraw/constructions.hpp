#pragma once

#include "polydraw/graph.hpp"
#include "polydraw/polyhedron.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace polydraw {

/// conv(0, e_1, ..., e_d)
Polytope simplex(int d);
/// [0,1]^d
Polytope cube(int d);
/// conv(±e_i)
Polytope cross_polytope(int d);
/// Convex hull of all permutation vectors of (1, ..., n); dimension n-1.
Polytope permutohedron(int n);
/// Convex hull of (t, t^2, ..., t^d) for strictly increasing t-values.
Polytope cyclic(int d, const std::vector<Scalar>& t);
/// Cyclic polytope with t-values 1, ..., n.
Polytope cyclic(int d, int n);

/// 0 <= x_1 <= 1 and x_i / 3 <= x_{i+1} <= 1 - x_i / 3.
std::vector<Inequality> klee_minty_inequalities(int d);
Polytope klee_minty(int d);

/// Cartesian product, coordinates concatenated.
Polytope product(const Polytope& p, const Polytope& q);

/// Parses and builds a family expression such as "cube(3)", "cyclic(4,7)",
/// "cyclic(4;0,1,3,4,6)" (explicit t-values), or "product(simplex(2),cube(3))".
Polytope construct_standard(std::string_view expression);

namespace graphs {

Graph path(std::size_t n);
Graph cycle(std::size_t n);
Graph complete(std::size_t n);
/// Hub 0 joined to the cycle 1..n.
Graph wheel(std::size_t rim);
Graph icosahedron();
Graph dodecahedron();
Graph cube();

}  // namespace graphs

}  // namespace polydraw
