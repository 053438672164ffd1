#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hardcore/rng.hpp"

namespace hardcore {

using Vertex = int;

/// Girth of an acyclic graph.
inline constexpr int kInfiniteGirth = std::numeric_limits<int>::max();

/// Simple undirected graph with sorted adjacency lists. Immutable after
/// construction; safe to share across threads.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list, validating simplicity. Throws
  /// std::invalid_argument on self-loops, duplicate edges or out-of-range
  /// endpoints.
  Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges)
      : adj_(static_cast<std::size_t>(check_count(vertex_count))) {
    for (const auto& [u, v] : edges) {
      if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
        throw std::invalid_argument("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loop");
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& nbrs : adj_) {
      std::sort(nbrs.begin(), nbrs.end());
      if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
        throw std::invalid_argument("duplicate edge");
      max_degree_ = std::max(max_degree_, static_cast<int>(nbrs.size()));
    }
    edge_count_ = static_cast<int>(edges.size());
  }

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return edge_count_; }
  int max_degree() const { return max_degree_; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }

  bool has_edge(int u, int v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < vertex_count(); ++u)
      for (int v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool is_regular() const {
    for (int v = 0; v < vertex_count(); ++v)
      if (degree(v) != max_degree_) return false;
    return true;
  }

  /// Subgraph induced by `keep`; vertex i of the result is keep[i].
  Graph induced(const std::vector<int>& keep) const {
    std::vector<int> pos(vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(keep.size()); ++i) pos[keep[i]] = i;
    std::vector<std::pair<int, int>> es;
    for (int u : keep)
      for (int v : adj_[u])
        if (pos[v] >= 0 && u < v) es.emplace_back(pos[u], pos[v]);
    return Graph(static_cast<int>(keep.size()), es);
  }

 private:
  static int check_count(int n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    return n;
  }

  std::vector<std::vector<int>> adj_;
  int max_degree_ = 0;
  int edge_count_ = 0;
};

/// BFS distances from src; -1 for unreachable. Stops expanding past
/// `radius` when radius >= 0.
inline std::vector<int> bfs_distances(const Graph& g, int src,
                                      int radius = -1) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    if (radius >= 0 && dist[u] >= radius) continue;
    for (int v : g.neighbors(u))
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
  }
  return dist;
}

/// Vertices within distance <= r of v, sorted.
inline std::vector<int> ball(const Graph& g, int v, int r) {
  if (r < 0) throw std::invalid_argument("negative radius");
  auto dist = bfs_distances(g, v, r);
  std::vector<int> out;
  for (int u = 0; u < g.vertex_count(); ++u)
    if (dist[u] >= 0 && dist[u] <= r) out.push_back(u);
  return out;
}

/// Vertices at distance exactly r of v, sorted.
inline std::vector<int> sphere(const Graph& g, int v, int r) {
  if (r < 0) throw std::invalid_argument("negative radius");
  auto dist = bfs_distances(g, v, r);
  std::vector<int> out;
  for (int u = 0; u < g.vertex_count(); ++u)
    if (dist[u] == r) out.push_back(u);
  return out;
}

/// Length of the shortest cycle, or kInfiniteGirth for forests.
/// BFS from every root; a non-tree edge (u,w) seen from root r closes a
/// walk of length dist[u]+dist[w]+1 which contains a cycle, and for a root
/// on a shortest cycle the bound is attained.
inline int girth(const Graph& g) {
  const int n = g.vertex_count();
  int best = kInfiniteGirth;
  std::vector<int> dist(n), parent(n);
  for (int r = 0; r < n; ++r) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::queue<int> q;
    dist[r] = 0;
    q.push(r);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (2 * dist[u] + 1 >= best) continue;
      for (int w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          q.push(w);
        } else if (w != parent[u]) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

namespace detail {

inline void count_cycles_through(const Graph& g, int v, int max_len,
                                 std::vector<char>& on_path,
                                 std::vector<int>& path, long long& found) {
  int u = path.back();
  if (static_cast<int>(path.size()) >= 3 && g.has_edge(u, v)) ++found;
  if (static_cast<int>(path.size()) == max_len) return;
  for (int w : g.neighbors(u)) {
    if (w == v || on_path[w]) continue;
    on_path[w] = 1;
    path.push_back(w);
    count_cycles_through(g, v, max_len, on_path, path, found);
    path.pop_back();
    on_path[w] = 0;
  }
}

}  // namespace detail

/// Number of distinct cycles of length < g_max passing through v.
/// Exhaustive path enumeration; intended for small length bounds.
inline long long short_cycle_count(const Graph& g, int v, int g_max) {
  if (g_max < 3) throw std::invalid_argument("g_max must be >= 3");
  std::vector<char> on_path(g.vertex_count(), 0);
  std::vector<int> path{v};
  on_path[v] = 1;
  long long walks = 0;
  // Each cycle through v is traversed once per direction.
  detail::count_cycles_through(g, v, g_max - 1, on_path, path, walks);
  return walks / 2;
}

/// Oriented view G*_w: every edge within distance 2 of w (distance of an
/// edge = min distance of its endpoints) is oriented toward w, i.e. from
/// its farther endpoint to its nearer one. Equidistant edges stay
/// unoriented. N*(x) keeps a neighbor z unless the edge x-z is oriented
/// with head z.
struct OrientedView {
  const Graph* base = nullptr;
  int root = -1;
  std::vector<std::vector<int>> in_neighbors;   // N*(x)
  std::vector<std::vector<int>> out_targets;    // u -> {x : u in N*(x)}
  int oriented_edge_count = 0;
};

inline OrientedView oriented_view(const Graph& g, int w) {
  OrientedView view;
  view.base = &g;
  view.root = w;
  const int n = g.vertex_count();
  auto dist = bfs_distances(g, w);
  view.in_neighbors.resize(n);
  view.out_targets.resize(n);
  auto far_dist = [&](int d) { return d < 0 ? std::numeric_limits<int>::max() : d; };
  for (int x = 0; x < n; ++x) {
    for (int z : g.neighbors(x)) {
      int dx = far_dist(dist[x]), dz = far_dist(dist[z]);
      int edge_dist = std::min(dx, dz);
      // x-z oriented with head z; drops one directed entry, at the tail.
      bool drop = edge_dist <= 2 && dz < dx;
      if (drop)
        ++view.oriented_edge_count;
      else
        view.in_neighbors[x].push_back(z);
    }
  }
  for (int x = 0; x < n; ++x)
    for (int z : view.in_neighbors[x]) view.out_targets[z].push_back(x);
  for (auto& t : view.out_targets) std::sort(t.begin(), t.end());
  return view;
}

// ---------------------------------------------------------------------------
// Random regular generation.
//
// Stub pairing in the style of Steger-Wormald: repeatedly join two random
// unsaturated stubs whose pairing creates neither a loop nor a multi-edge,
// restarting from scratch when no valid pair remains. Always produces an
// exactly Delta-regular simple graph; the distribution is asymptotically
// uniform. Whole-pairing rejection would need ~exp((Delta-1)/2 +
// (Delta-1)^2/4) attempts and is hopeless beyond Delta ~ 7.
// ---------------------------------------------------------------------------

namespace detail {

// One pairing attempt; empty on dead end.
inline std::optional<std::vector<std::pair<int, int>>> try_pair_regular(
    int n, int deg, Rng& rng) {
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * deg);
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < deg; ++k) stubs.push_back(v);
  std::vector<std::vector<int>> adj(n);
  std::vector<std::pair<int, int>> edges;
  auto linked = [&](int u, int v) {
    return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
  };
  while (!stubs.empty()) {
    bool placed = false;
    for (int attempt = 0; attempt < 200; ++attempt) {
      int i = rng.next_below(static_cast<int>(stubs.size()));
      int j = rng.next_below(static_cast<int>(stubs.size()));
      if (i == j) continue;
      int u = stubs[i], v = stubs[j];
      if (u == v || linked(u, v)) continue;
      adj[u].push_back(v);
      adj[v].push_back(u);
      edges.emplace_back(u, v);
      if (i < j) std::swap(i, j);
      stubs[i] = stubs.back();
      stubs.pop_back();
      stubs[j] = stubs.back();
      stubs.pop_back();
      placed = true;
      break;
    }
    if (!placed) return std::nullopt;
  }
  return edges;
}

inline std::optional<std::vector<std::pair<int, int>>> try_pair_bipartite(
    int n_side, int deg, Rng& rng) {
  // Left vertices 0..n-1, right vertices n..2n-1.
  std::vector<int> left, right;
  for (int v = 0; v < n_side; ++v)
    for (int k = 0; k < deg; ++k) {
      left.push_back(v);
      right.push_back(n_side + v);
    }
  std::vector<std::vector<int>> adj(n_side);
  std::vector<std::pair<int, int>> edges;
  auto linked = [&](int u, int v) {
    return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
  };
  while (!left.empty()) {
    bool placed = false;
    for (int attempt = 0; attempt < 200; ++attempt) {
      int i = rng.next_below(static_cast<int>(left.size()));
      int j = rng.next_below(static_cast<int>(right.size()));
      int u = left[i], v = right[j];
      if (linked(u, v - n_side)) continue;
      adj[u].push_back(v - n_side);
      edges.emplace_back(u, v);
      left[i] = left.back();
      left.pop_back();
      right[j] = right.back();
      right.pop_back();
      placed = true;
      break;
    }
    if (!placed) return std::nullopt;
  }
  return edges;
}

}  // namespace detail

/// Random Delta-regular simple graph on n vertices.
/// Requires n*deg even and deg < n. Deterministic per seed. Throws
/// std::runtime_error once the restart budget is exhausted.
inline Graph random_regular(int n, int deg, std::uint64_t seed,
                            int max_restarts = 2000) {
  if (deg < 0 || deg >= n) throw std::invalid_argument("need 0 <= deg < n");
  if ((static_cast<long long>(n) * deg) % 2 != 0)
    throw std::invalid_argument("n*deg must be even");
  Rng rng(seed);
  for (int restart = 0; restart < max_restarts; ++restart) {
    if (auto edges = detail::try_pair_regular(n, deg, rng))
      return Graph(n, *edges);
  }
  throw std::runtime_error("random_regular: restart budget exhausted");
}

/// Random Delta-regular bipartite simple graph, n_per_side vertices per
/// side. Left side is 0..n-1, right side n..2n-1.
inline Graph random_regular_bipartite(int n_per_side, int deg,
                                      std::uint64_t seed,
                                      int max_restarts = 2000) {
  if (deg < 0 || deg > n_per_side)
    throw std::invalid_argument("need 0 <= deg <= n_per_side");
  Rng rng(seed);
  for (int restart = 0; restart < max_restarts; ++restart) {
    if (auto edges = detail::try_pair_bipartite(n_per_side, deg, rng))
      return Graph(2 * n_per_side, *edges);
  }
  throw std::runtime_error("random_regular_bipartite: restart budget exhausted");
}

// ---------------------------------------------------------------------------
// Edge-list text format: one "u v" pair per line, whitespace separated,
// 0-based. Blank lines and lines starting with '#' are skipped.
// ---------------------------------------------------------------------------

/// Parses an edge list. Vertex count defaults to max index + 1; pass
/// `vertex_count` to keep trailing isolated vertices.
inline Graph load_edge_list(const std::string& text,
                            std::optional<int> vertex_count = std::nullopt) {
  std::vector<std::pair<int, int>> edges;
  int max_index = -1;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u >> v))
      throw std::invalid_argument("edge list parse error at line " +
                                  std::to_string(line_no));
    std::string rest;
    if (ls >> rest)
      throw std::invalid_argument("trailing tokens at line " +
                                  std::to_string(line_no));
    if (u < 0 || v < 0)
      throw std::invalid_argument("negative vertex index at line " +
                                  std::to_string(line_no));
    if (u == v)
      throw std::invalid_argument("self-loop at line " +
                                  std::to_string(line_no));
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_index = std::max(max_index, static_cast<int>(std::max(u, v)));
  }
  int n = vertex_count.value_or(max_index + 1);
  return Graph(n, edges);  // rethrows duplicate-edge as invalid_argument
}

inline std::string save_edge_list(const Graph& g) {
  std::string out;
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Named graphs.
// ---------------------------------------------------------------------------

inline Graph path_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph(n, es);
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph(n, es);
}

inline Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph(n, es);
}

inline Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) es.emplace_back(i, a + j);
  return Graph(a + b, es);
}

/// Star with `leaves` leaves; vertex 0 is the center.
inline Graph star_graph(int leaves) {
  std::vector<std::pair<int, int>> es;
  for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
  return Graph(leaves + 1, es);
}

/// 14-vertex 3-regular graph of girth 6 (LCF [5,-5]^7).
inline Graph heawood_graph() {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < 14; ++i) es.emplace_back(i, (i + 1) % 14);
  for (int i = 0; i < 14; i += 2) es.emplace_back(i, (i + 5) % 14);
  return Graph(14, es);
}

inline Graph petersen_graph() {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < 5; ++i) {
    es.emplace_back(i, (i + 1) % 5);
    es.emplace_back(5 + i, 5 + (i + 2) % 5);
    es.emplace_back(i, 5 + i);
  }
  return Graph(10, es);
}

/// Uniform-attachment random tree: vertex i >= 1 attaches to a uniform
/// earlier vertex.
inline Graph random_tree(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<int, int>> es;
  for (int i = 1; i < n; ++i) es.emplace_back(rng.next_below(i), i);
  return Graph(n, es);
}

inline Graph grid_graph(int rows, int cols) {
  std::vector<std::pair<int, int>> es;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) es.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) es.emplace_back(id(r, c), id(r + 1, c));
    }
  return Graph(rows * cols, es);
}

/// Random tree plus `extra` additional random non-edges; connected.
inline Graph random_connected(int n, int extra, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<int, int>> es;
  for (int i = 1; i < n; ++i) es.emplace_back(rng.next_below(i), i);
  Graph tree(n, es);
  int added = 0, guard = 0;
  while (added < extra && ++guard < 50 * (extra + 1)) {
    int u = rng.next_below(n), v = rng.next_below(n);
    if (u == v) continue;
    bool present = false;
    for (const auto& [a, b] : es)
      present = present || (a == u && b == v) || (a == v && b == u);
    if (present) continue;
    es.emplace_back(u, v);
    ++added;
  }
  return Graph(n, es);
}

/// Two-colorability check; fills side with 0/1 when bipartite.
inline bool is_bipartite(const Graph& g, std::vector<int>* side = nullptr) {
  const int n = g.vertex_count();
  std::vector<int> color(n, -1);
  for (int s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.neighbors(u)) {
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          q.push(v);
        } else if (color[v] == color[u]) {
          return false;
        }
      }
    }
  }
  if (side) *side = std::move(color);
  return true;
}

}  // namespace hardcore
