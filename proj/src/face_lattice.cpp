#include "polydraw/face_lattice.hpp"

#include <algorithm>
#include <map>

namespace polydraw {

std::vector<std::size_t> FaceLattice::rank_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(max_dim() + 2), 0);
  for (int d : dims) counts[static_cast<std::size_t>(d + 1)]++;
  return counts;
}

std::vector<std::size_t> FaceLattice::faces_of_dim(int d) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (dims[i] == d) out.push_back(i);
  }
  return out;
}

int FaceLattice::max_dim() const {
  return dims.empty() ? -1 : *std::max_element(dims.begin(), dims.end());
}

FaceLattice enumerate_faces(const std::vector<Bitset>& incidence, std::size_t num_generators,
                            std::size_t num_vertices, bool include_empty) {
  auto closure = [&](const Bitset& s) {
    Bitset result(num_generators);
    result.set();
    for (const auto& row : incidence) {
      if (s.is_subset_of(row)) result &= row;
    }
    return result;
  };
  auto bounded = [&](const Bitset& s) {
    for (std::size_t i = num_vertices; i < num_generators; ++i) {
      if (s.test(i)) return false;
    }
    return true;
  };

  FaceLattice lattice;
  std::map<Bitset, std::size_t> index;
  auto intern = [&](const Bitset& face, int dim) {
    auto [it, inserted] = index.emplace(face, lattice.faces.size());
    if (inserted) {
      lattice.faces.push_back(face);
      lattice.dims.push_back(dim);
      lattice.covers.emplace_back();
    }
    return it->second;
  };

  std::size_t empty_index = SIZE_MAX;
  if (include_empty) empty_index = intern(Bitset(num_generators), -1);

  std::vector<std::size_t> level;
  for (std::size_t v = 0; v < num_vertices; ++v) {
    Bitset atom(num_generators);
    atom.set(v);
    std::size_t idx = intern(closure(atom), 0);
    if (include_empty) lattice.covers[empty_index].push_back(idx);
    level.push_back(idx);
  }
  std::sort(level.begin(), level.end());
  level.erase(std::unique(level.begin(), level.end()), level.end());
  if (include_empty) {
    auto& c = lattice.covers[empty_index];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }

  int dim = 0;
  while (!level.empty()) {
    std::vector<std::size_t> next_level;
    for (auto g : level) {
      const Bitset face = lattice.faces[g];
      std::vector<Bitset> candidates;
      for (std::size_t x = 0; x < num_generators; ++x) {
        if (face.test(x)) continue;
        Bitset s = face;
        s.set(x);
        Bitset c = closure(s);
        if (std::find(candidates.begin(), candidates.end(), c) == candidates.end()) {
          candidates.push_back(std::move(c));
        }
      }
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool minimal = true;
        for (std::size_t j = 0; j < candidates.size() && minimal; ++j) {
          if (i != j && candidates[j].is_proper_subset_of(candidates[i])) minimal = false;
        }
        if (!minimal || !bounded(candidates[i])) continue;
        std::size_t idx = intern(candidates[i], dim + 1);
        lattice.covers[g].push_back(idx);
        next_level.push_back(idx);
      }
    }
    std::sort(next_level.begin(), next_level.end());
    next_level.erase(std::unique(next_level.begin(), next_level.end()), next_level.end());
    level = std::move(next_level);
    ++dim;
  }
  return lattice;
}

FaceLattice face_lattice(const Polytope& p) {
  return enumerate_faces(p.incidence, p.num_vertices(), p.num_vertices(), true);
}

FaceLattice bounded_faces(const Polyhedron& p) {
  return enumerate_faces(p.incidence, p.num_generators(), p.vertices.size(), false);
}

namespace {

Bitset vertex_closure(const Polytope& p, const Bitset& s) {
  Bitset result(p.num_vertices());
  result.set();
  for (const auto& row : p.incidence) {
    if (s.is_subset_of(row)) result &= row;
  }
  return result;
}

}  // namespace

Graph graph_of(const Polytope& p) {
  Graph g;
  for (std::size_t i = 0; i < p.num_vertices(); ++i) g.add_node({"v" + std::to_string(i), NodeKind::primal});
  if (p.dim < 1) return g;
  const std::size_t n = p.num_vertices();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      Bitset s(n);
      s.set(u);
      s.set(v);
      if (vertex_closure(p, s).count() == 2) g.add_edge(u, v);
    }
  }
  return g;
}

Graph dual_graph_of(const Polytope& p) {
  Graph g;
  const std::size_t m = p.num_facets();
  for (std::size_t i = 0; i < m; ++i) g.add_node({"F" + std::to_string(i), NodeKind::dual});
  // F_i ∩ F_j is a ridge iff no other F_i ∩ F_k strictly contains it.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      Bitset common = p.incidence[i] & p.incidence[j];
      bool ridge = true;
      for (std::size_t k = 0; k < m && ridge; ++k) {
        if (k == i || k == j) continue;
        if (common.is_proper_subset_of(p.incidence[i] & p.incidence[k])) ridge = false;
      }
      if (ridge) g.add_edge(i, j);
    }
  }
  return g;
}

bool is_simple(const Polytope& p) {
  Graph g = graph_of(p);
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    if (static_cast<int>(g.degree(v)) != p.dim) return false;
  }
  return true;
}

long euler_characteristic(const FaceLattice& lattice) {
  const int top = lattice.max_dim();
  long sum = 0;
  for (int d : lattice.dims) {
    if (d < 0 || d == top) continue;
    sum += (d % 2 == 0) ? 1 : -1;
  }
  return sum;
}

}  // namespace polydraw
