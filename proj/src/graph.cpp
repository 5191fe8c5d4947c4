#include "polydraw/graph.hpp"

#include "polydraw/rational.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace polydraw {

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::primal: return "primal";
    case NodeKind::dual: return "dual";
    case NodeKind::taxon: return "taxon";
    case NodeKind::generic: return "generic";
  }
  return "generic";
}

NodeKind node_kind_from_string(const std::string& name) {
  if (name == "primal") return NodeKind::primal;
  if (name == "dual") return NodeKind::dual;
  if (name == "taxon") return NodeKind::taxon;
  if (name == "generic") return NodeKind::generic;
  throw ValidationError("unknown node kind '" + name + "'");
}

Graph::Graph(std::size_t n, NodeKind kind) {
  for (std::size_t i = 0; i < n; ++i) add_node({std::to_string(i), kind});
}

std::size_t Graph::add_node(Node node) {
  nodes_.push_back(std::move(node));
  adjacency_.emplace_back();
  return nodes_.size() - 1;
}

bool Graph::add_edge(std::size_t u, std::size_t v, std::optional<double> length) {
  if (u >= nodes_.size() || v >= nodes_.size()) throw ValidationError("edge endpoint out of range");
  if (u == v) throw ValidationError("loops are not allowed");
  if (has_edge(u, v)) return false;
  if (u > v) std::swap(u, v);
  edges_.push_back({u, v, length});
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  return true;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  const auto& a = adjacency_.at(u);
  return std::find(a.begin(), a.end(), v) != a.end();
}

std::optional<std::size_t> Graph::edge_index(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].u == u && edges_[i].v == v) return i;
  }
  return std::nullopt;
}

bool Graph::is_connected() const {
  if (nodes_.empty()) return true;
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == nodes_.size();
}

std::size_t local_connectivity(const Graph& g, std::size_t s, std::size_t t, std::size_t cap) {
  // Split node v into v_in = 2v and v_out = 2v+1 with a unit arc between.
  const std::size_t n = g.num_nodes();
  struct Arc {
    std::size_t to;
    int capacity;
    std::size_t reverse;
  };
  std::vector<std::vector<Arc>> net(2 * n);
  auto add_arc = [&](std::size_t a, std::size_t b, int c) {
    net[a].push_back({b, c, net[b].size()});
    net[b].push_back({a, 0, net[a].size() - 1});
  };
  for (std::size_t v = 0; v < n; ++v) {
    add_arc(2 * v, 2 * v + 1, (v == s || v == t) ? static_cast<int>(n) : 1);
  }
  for (const auto& e : g.edges()) {
    add_arc(2 * e.u + 1, 2 * e.v, 1);
    add_arc(2 * e.v + 1, 2 * e.u, 1);
  }
  const std::size_t source = 2 * s + 1;
  const std::size_t sink = 2 * t;
  std::size_t flow = 0;
  while (flow < cap) {
    std::vector<std::pair<std::size_t, std::size_t>> parent(2 * n, {SIZE_MAX, 0});
    std::queue<std::size_t> queue;
    queue.push(source);
    parent[source] = {source, 0};
    while (!queue.empty() && parent[sink].first == SIZE_MAX) {
      auto x = queue.front();
      queue.pop();
      for (std::size_t i = 0; i < net[x].size(); ++i) {
        const Arc& arc = net[x][i];
        if (arc.capacity > 0 && parent[arc.to].first == SIZE_MAX) {
          parent[arc.to] = {x, i};
          queue.push(arc.to);
        }
      }
    }
    if (parent[sink].first == SIZE_MAX) break;
    for (std::size_t y = sink; y != source;) {
      auto [x, i] = parent[y];
      net[x][i].capacity -= 1;
      net[y][net[x][i].reverse].capacity += 1;
      y = x;
    }
    ++flow;
  }
  return flow;
}

bool k_connected(const Graph& g, std::size_t k) {
  if (k == 0) throw ValidationError("k must be positive");
  if (g.num_nodes() <= k) throw ValidationError("k-connectivity needs more than k nodes");
  if (!g.is_connected()) return false;
  // Any separator of size < k misses one of the first k nodes; that node is
  // then separated from some non-adjacent node.
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = 0; t < g.num_nodes(); ++t) {
      if (t == s || g.has_edge(s, t)) continue;
      if (local_connectivity(g, s, t, k) < k) return false;
    }
  }
  return true;
}

namespace {

// Colour refinement; returns stable colour classes as small integers.
std::vector<int> refine(const Graph& g, std::vector<int> colors) {
  const std::size_t n = g.num_nodes();
  for (std::size_t round = 0; round <= n; ++round) {
    std::vector<std::pair<int, std::vector<int>>> signature(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<int> nb;
      for (auto w : g.neighbors(v)) nb.push_back(colors[w]);
      std::sort(nb.begin(), nb.end());
      signature[v] = {colors[v], std::move(nb)};
    }
    std::map<std::pair<int, std::vector<int>>, int> ids;
    for (const auto& s : signature) ids.emplace(s, 0);
    int next_id = 0;
    for (auto& [key, id] : ids) id = next_id++;
    std::vector<int> next(n);
    for (std::size_t v = 0; v < n; ++v) next[v] = ids[signature[v]];
    std::size_t old_classes = std::set<int>(colors.begin(), colors.end()).size();
    colors = std::move(next);
    if (static_cast<std::size_t>(next_id) == old_classes) break;
  }
  return colors;
}

struct Matcher {
  const Graph& a;
  const Graph& b;
  std::vector<int> ca, cb;
  std::vector<std::size_t> map_ab, map_ba;
  std::vector<std::size_t> order;

  bool feasible(std::size_t x, std::size_t y) const {
    if (ca[x] != cb[y] || a.degree(x) != b.degree(y)) return false;
    for (auto nx : a.neighbors(x)) {
      if (map_ab[nx] != SIZE_MAX && !b.has_edge(y, map_ab[nx])) return false;
    }
    std::size_t mapped_nb_a = 0, mapped_nb_b = 0;
    for (auto nx : a.neighbors(x)) mapped_nb_a += map_ab[nx] != SIZE_MAX;
    for (auto ny : b.neighbors(y)) mapped_nb_b += map_ba[ny] != SIZE_MAX;
    return mapped_nb_a == mapped_nb_b;
  }

  bool search(std::size_t depth) {
    if (depth == order.size()) return true;
    std::size_t x = order[depth];
    for (std::size_t y = 0; y < b.num_nodes(); ++y) {
      if (map_ba[y] != SIZE_MAX || !feasible(x, y)) continue;
      map_ab[x] = y;
      map_ba[y] = x;
      if (search(depth + 1)) return true;
      map_ab[x] = SIZE_MAX;
      map_ba[y] = SIZE_MAX;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::size_t>> find_isomorphism(const Graph& a, const Graph& b,
                                                         const std::vector<int>* colors_a,
                                                         const std::vector<int>* colors_b) {
  const std::size_t n = a.num_nodes();
  if (n != b.num_nodes() || a.num_edges() != b.num_edges()) return std::nullopt;

  // Refine both graphs jointly so colour ids are comparable.
  Graph joint;
  for (std::size_t i = 0; i < n; ++i) joint.add_node(a.nodes()[i]);
  for (std::size_t i = 0; i < n; ++i) joint.add_node(b.nodes()[i]);
  for (const auto& e : a.edges()) joint.add_edge(e.u, e.v);
  for (const auto& e : b.edges()) joint.add_edge(n + e.u, n + e.v);
  std::vector<int> initial(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    initial[i] = colors_a ? (*colors_a)[i] : 0;
    initial[n + i] = colors_b ? (*colors_b)[i] : 0;
  }
  std::vector<int> colors = refine(joint, initial);

  Matcher m{a, b, {}, {}, std::vector<std::size_t>(n, SIZE_MAX), std::vector<std::size_t>(n, SIZE_MAX), {}};
  m.ca.assign(colors.begin(), colors.begin() + static_cast<long>(n));
  m.cb.assign(colors.begin() + static_cast<long>(n), colors.end());
  {
    auto sa = m.ca, sb = m.cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }

  // Visit nodes in BFS order so each new node has mapped neighbours.
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::queue<std::size_t> q;
    q.push(start);
    seen[start] = true;
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      m.order.push_back(v);
      for (auto w : a.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
      }
    }
  }
  if (!m.search(0)) return std::nullopt;
  return m.map_ab;
}

bool isomorphic(const Graph& a, const Graph& b) { return find_isomorphism(a, b).has_value(); }

std::vector<std::size_t> longest_ascending_path(const Graph& g, const std::vector<Scalar>& objective) {
  const std::size_t n = g.num_nodes();
  if (objective.size() != n) throw ValidationError("objective must have one value per node");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return objective[a] < objective[b]; });
  // Longest path in the DAG of strictly ascending edges, by increasing objective.
  std::vector<std::size_t> length(n, 1), prev(n, SIZE_MAX);
  for (auto v : order) {
    for (auto w : g.neighbors(v)) {
      if (objective[w] < objective[v] && length[w] + 1 > length[v]) {
        length[v] = length[w] + 1;
        prev[v] = w;
      }
    }
  }
  std::vector<std::size_t> path;
  if (n == 0) return path;
  std::size_t end = static_cast<std::size_t>(std::max_element(length.begin(), length.end()) - length.begin());
  for (std::size_t v = end; v != SIZE_MAX; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace polydraw
