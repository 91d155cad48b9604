// Copyright 2026 The Zoo Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zoo/graphprops.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>

#include "zoo/canon.hpp"
#include "zoo/error.hpp"

namespace zoo::props {

namespace {

std::int64_t as_int(std::size_t x) { return static_cast<std::int64_t>(x); }

PropertyValue or_infinite(const std::optional<std::size_t>& x) {
  if (x) return as_int(*x);
  return Infinite{};
}

bool is_regular(const Graph& g) {
  for (Vertex v = 1; v < g.order(); ++v) {
    if (g.degree(v) != g.degree(0)) return false;
  }
  return true;
}

std::size_t max_degree(const Graph& g) {
  std::size_t d = 0;
  for (Vertex v = 0; v < g.order(); ++v) d = std::max(d, g.degree(v));
  return d;
}

bool is_connected(const Graph& g) { return connected_components(g) == 1; }

bool is_eulerian(const Graph& g) {
  if (!is_connected(g)) return false;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) % 2 != 0) return false;
  }
  return true;
}

bool is_overfull(const Graph& g) {
  return g.size() > max_degree(g) * (g.order() / 2);
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

bool same_as(const Graph& g, const Graph& model) {
  if (g.order() != model.order() || g.size() != model.size()) return false;
  return canonical_bytes(g) == canonical_bytes(model);
}

bool cubic_connected_even(const Graph& g) {
  const std::size_t n = g.order();
  if (n < 6 || n % 2 != 0) return false;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) != 3) return false;
  }
  return is_connected(g);
}

}  // namespace

std::optional<std::size_t> girth(const Graph& g) {
  const std::size_t n = g.order();
  std::size_t best = SIZE_MAX;
  std::vector<std::uint32_t> dist(n);
  std::vector<Vertex> parent(n);
  for (Vertex r = 0; r < n; ++r) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::queue<Vertex> q;
    dist[r] = 0;
    parent[r] = r;
    q.push(r);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      if (2 * dist[u] + 1 >= best) break;
      for (Vertex w : g.neighbours(u)) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          q.push(w);
        } else if (parent[u] != w) {
          best = std::min<std::size_t>(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == SIZE_MAX) return std::nullopt;
  return best;
}

std::optional<std::size_t> odd_girth(const Graph& g) {
  const std::size_t n = g.order();
  std::size_t best = SIZE_MAX;
  for (Vertex r = 0; r < n; ++r) {
    auto dist = bfs_distances(g, r);
    for (const auto& [u, w] : g.edges()) {
      if (dist[u] != kUnreachable && dist[u] == dist[w]) {
        best = std::min<std::size_t>(best, 2 * dist[u] + 1);
      }
    }
  }
  if (best == SIZE_MAX) return std::nullopt;
  return best;
}

std::optional<std::size_t> diameter(const Graph& g) {
  if (g.order() == 0) return std::nullopt;
  std::size_t d = 0;
  for (Vertex r = 0; r < g.order(); ++r) {
    for (auto x : bfs_distances(g, r)) {
      if (x == kUnreachable) return std::nullopt;
      d = std::max<std::size_t>(d, x);
    }
  }
  return d;
}

std::size_t triangles_count(const Graph& g) {
  std::size_t t = 0;
  for (const auto& [u, v] : g.edges()) {
    const auto& a = g.neighbours(u);
    const auto& b = g.neighbours(v);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) {
        ++i;
      } else if (a[i] > b[j]) {
        ++j;
      } else {
        if (a[i] > v) ++t;
        ++i;
        ++j;
      }
    }
  }
  return t;
}

std::size_t clique_number(const Graph& g) {
  std::size_t best = 0;
  std::function<void(std::size_t, const std::vector<Vertex>&)> expand =
      [&](std::size_t size, const std::vector<Vertex>& candidates) {
        if (candidates.empty()) {
          best = std::max(best, size);
          return;
        }
        for (std::size_t i = 0; i < candidates.size(); ++i) {
          if (size + candidates.size() - i <= best) return;
          std::vector<Vertex> next;
          for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            if (g.adjacent(candidates[i], candidates[j])) next.push_back(candidates[j]);
          }
          expand(size + 1, next);
        }
      };
  std::vector<Vertex> all(g.order());
  std::iota(all.begin(), all.end(), Vertex{0});
  expand(0, all);
  return best;
}

std::size_t chromatic_index(const Graph& g) {
  const std::size_t delta = max_degree(g);
  if (delta == 0) return 0;
  // Vizing: delta or delta + 1. Try a delta-edge-colouring.
  // Colour edges in breadth-first order so constraints propagate early.
  std::vector<std::size_t> rank(g.order(), SIZE_MAX);
  std::size_t next_rank = 0;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (rank[s] != SIZE_MAX) continue;
    std::queue<Vertex> q;
    q.push(s);
    rank[s] = next_rank++;
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex w : g.neighbours(u)) {
        if (rank[w] == SIZE_MAX) {
          rank[w] = next_rank++;
          q.push(w);
        }
      }
    }
  }
  std::vector<Edge> edges = g.edges();
  auto key = [&](const Edge& e) {
    return std::minmax(rank[e.first], rank[e.second]);
  };
  std::sort(edges.begin(), edges.end(),
            [&](const Edge& a, const Edge& b) { return key(a) < key(b); });
  std::vector<std::uint64_t> used(g.order(), 0);
  std::function<bool(std::size_t)> colour = [&](std::size_t i) {
    if (i == edges.size()) return true;
    const auto [u, v] = edges[i];
    const std::uint64_t busy = used[u] | used[v];
    for (std::size_t c = 0; c < delta; ++c) {
      const std::uint64_t bit = std::uint64_t{1} << c;
      if (busy & bit) continue;
      used[u] |= bit;
      used[v] |= bit;
      if (colour(i + 1)) return true;
      used[u] &= ~bit;
      used[v] &= ~bit;
      // Colours not yet used anywhere are interchangeable.
      if (std::none_of(used.begin(), used.end(), [&](std::uint64_t m) { return m & bit; })) {
        break;
      }
    }
    return false;
  };
  if (delta < 64 && colour(0)) return delta;
  return delta + 1;
}

bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.order(), -1);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex w : g.neighbours(u)) {
        if (side[w] < 0) {
          side[w] = 1 - side[u];
          q.push(w);
        } else if (side[w] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_hamiltonian(const Graph& g) {
  const std::size_t n = g.order();
  if (n < 3 || !is_connected(g)) return false;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) < 2) return false;
  }
  std::vector<bool> on_path(n, false);
  on_path[0] = true;
  // Every vertex off the path still needs two usable neighbours.
  auto feasible = [&](Vertex end) {
    for (Vertex x = 0; x < n; ++x) {
      if (on_path[x]) continue;
      int usable = 0;
      for (Vertex y : g.neighbours(x)) {
        if (!on_path[y] || y == end || y == 0) ++usable;
      }
      if (usable < 2) return false;
    }
    return true;
  };
  std::function<bool(Vertex, std::size_t)> extend = [&](Vertex u, std::size_t len) {
    if (len == n) return g.adjacent(u, 0);
    for (Vertex w : g.neighbours(u)) {
      if (on_path[w]) continue;
      on_path[w] = true;
      if (feasible(w) && extend(w, len + 1)) return true;
      on_path[w] = false;
    }
    return false;
  };
  return extend(0, 1);
}

bool is_split(const Graph& g) {
  std::vector<std::size_t> d(g.order());
  for (Vertex v = 0; v < g.order(); ++v) d[v] = g.degree(v);
  std::sort(d.begin(), d.end(), std::greater<>());
  std::size_t m = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] + 1 >= i + 1) m = i + 1;  // d_i >= i - 1 with 1-based i
  }
  std::size_t head = 0, tail = 0;
  for (std::size_t i = 0; i < d.size(); ++i) (i < m ? head : tail) += d[i];
  return head == m * (m - 1) + tail;
}

bool is_strongly_regular(const Graph& g) {
  const std::size_t n = g.order();
  if (n == 0 || !is_regular(g)) return false;
  if (g.size() == 0 || g.size() == n * (n - 1) / 2) return false;
  std::optional<std::size_t> lambda, mu;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      std::size_t common = 0;
      for (Vertex w : g.neighbours(u)) common += g.adjacent(v, w);
      auto& slot = g.adjacent(u, v) ? lambda : mu;
      if (!slot) slot = common;
      if (*slot != common) return false;
    }
  }
  return true;
}

bool is_distance_regular(const Graph& g) {
  const std::size_t n = g.order();
  if (n == 0 || !is_connected(g)) return false;
  const auto dist = all_pairs_distances(g);
  std::vector<std::optional<std::size_t>> b, c;
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u = 0; u < n; ++u) {
      const std::size_t i = dist[v * n + u];
      if (b.size() <= i) {
        b.resize(i + 1);
        c.resize(i + 1);
      }
      std::size_t up = 0, down = 0;
      for (Vertex w : g.neighbours(u)) {
        const auto j = dist[v * n + w];
        if (j == i + 1) ++up;
        if (j + 1 == i) ++down;
      }
      if (!b[i]) b[i] = up;
      if (!c[i]) c[i] = down;
      if (*b[i] != up || *c[i] != down) return false;
    }
  }
  return true;
}

bool is_prism(const Graph& g) {
  return cubic_connected_even(g) && same_as(g, graphs::prism(g.order() / 2));
}

bool is_moebius_ladder(const Graph& g) {
  return cubic_connected_even(g) && same_as(g, graphs::moebius_ladder(g.order() / 2));
}

std::optional<HypercubeEmbedding> partial_cube_embedding(const Graph& g) {
  const std::size_t n = g.order();
  if (!is_connected(g)) throw InvalidGraph("partial cube embedding requires a connected graph");
  if (!is_bipartite(g)) return std::nullopt;
  const auto dist = all_pairs_distances(g);
  auto d = [&](Vertex a, Vertex b) { return dist[a * n + b]; };
  const auto edges = g.edges();
  // Theta(xy, uv) in a bipartite graph: u and v lie on different sides of xy.
  auto theta = [&](const Edge& e, const Edge& f) {
    return (d(e.first, f.first) < d(e.second, f.first)) !=
           (d(e.first, f.second) < d(e.second, f.second));
  };
  std::vector<int> cls(edges.size(), -1);
  std::vector<Edge> reps;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (cls[i] >= 0) continue;
    const int k = static_cast<int>(reps.size());
    reps.push_back(edges[i]);
    for (std::size_t j = i; j < edges.size(); ++j) {
      if (!theta(edges[i], edges[j])) continue;
      if (cls[j] >= 0) return std::nullopt;  // Theta is not transitive
      cls[j] = k;
    }
  }
  HypercubeEmbedding e;
  e.dim = reps.size();
  e.labels.assign(n, std::string(e.dim, '0'));
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const auto [x, y] = reps[k];
    for (Vertex w = 0; w < n; ++w) {
      if (d(w, y) < d(w, x)) e.labels[w][k] = '1';
    }
  }
  if (!is_isometric_embedding(g, e)) return std::nullopt;
  return e;
}

bool is_isometric_embedding(const Graph& g, const HypercubeEmbedding& e) {
  const std::size_t n = g.order();
  if (e.labels.size() != n) return false;
  for (const auto& l : e.labels) {
    if (l.size() != e.dim) return false;
  }
  for (Vertex u = 0; u < n; ++u) {
    const auto dist = bfs_distances(g, u);
    for (Vertex v = 0; v < n; ++v) {
      std::size_t hamming = 0;
      for (std::size_t k = 0; k < e.dim; ++k) hamming += e.labels[u][k] != e.labels[v][k];
      if (dist[v] == kUnreachable || hamming != dist[v]) return false;
    }
  }
  return true;
}

PropertyBag compute_numeric_invariants(const Graph& g, const Limits& limits) {
  PropertyBag bag;
  bag["order"] = as_int(g.order());
  bag["size"] = as_int(g.size());
  bag["girth"] = or_infinite(girth(g));
  bag["odd_girth"] = or_infinite(odd_girth(g));
  bag["diameter"] = or_infinite(diameter(g));
  bag["connected_components_number"] = as_int(connected_components(g));
  bag["triangles_count"] = as_int(triangles_count(g));
  if (g.order() <= limits.clique_max_order) bag["clique_number"] = as_int(clique_number(g));
  if (g.order() <= limits.chromatic_index_max_order) {
    bag["chromatic_index"] = as_int(chromatic_index(g));
  }
  if (g.order() > 0 && is_regular(g)) bag["valency"] = as_int(g.degree(0));
  return bag;
}

PropertyBag compute_boolean_invariants(const Graph& g, const Limits& limits) {
  PropertyBag bag;
  bag["is_bipartite"] = is_bipartite(g);
  bag["is_eulerian"] = is_eulerian(g);
  if (g.order() <= limits.hamiltonian_max_order) bag["is_hamiltonian"] = is_hamiltonian(g);
  bag["is_split"] = is_split(g);
  bag["is_overfull"] = is_overfull(g);
  bag["is_strongly_regular"] = is_strongly_regular(g);
  bag["is_distance_regular"] = is_distance_regular(g);
  bag["is_partial_cube"] = is_connected(g) && partial_cube_embedding(g).has_value();
  bag["is_prism"] = is_prism(g);
  bag["is_moebius_ladder"] = is_moebius_ladder(g);
  return bag;
}

PropertyBag compute_symmetry_invariants(const Graph& g,
                                        std::span<const Permutation> aut_generators) {
  const std::size_t n = g.order();
  for (const auto& gamma : aut_generators) {
    if (!g.is_automorphism(gamma)) {
      throw InvalidGraph("generator is not an automorphism of the graph");
    }
  }
  UnionFind vertex_orbits(n);
  UnionFind pair_orbits(n * n);
  for (const auto& gamma : aut_generators) {
    for (Vertex u = 0; u < n; ++u) {
      vertex_orbits.unite(u, gamma[u]);
      for (Vertex v = 0; v < n; ++v) pair_orbits.unite(u * n + v, gamma[u] * n + gamma[v]);
    }
  }
  auto single_orbit = [](auto&& indices, UnionFind& uf) {
    std::optional<std::size_t> root;
    for (std::size_t i : indices) {
      auto r = uf.find(i);
      if (!root) root = r;
      if (*root != r) return false;
    }
    return true;
  };
  std::vector<std::size_t> vertices(n);
  std::iota(vertices.begin(), vertices.end(), std::size_t{0});
  std::vector<std::size_t> arcs;
  for (const auto& [u, v] : g.edges()) {
    arcs.push_back(u * n + v);
    arcs.push_back(v * n + u);
  }

  PropertyBag bag;
  bag["is_vertex_transitive"] = single_orbit(vertices, vertex_orbits);
  bag["is_arc_transitive"] = single_orbit(arcs, pair_orbits);
  // An edge orbit is the union of an arc orbit and its reverse.
  {
    std::optional<std::size_t> a, b;
    bool ok = true;
    for (const auto& [u, v] : g.edges()) {
      auto x = pair_orbits.find(u * n + v);
      auto y = pair_orbits.find(v * n + u);
      if (!a) {
        a = x;
        b = y;
      }
      const bool fits = (x == *a || x == *b) && (y == *a || y == *b);
      if (!fits) {
        ok = false;
        break;
      }
    }
    bag["is_edge_transitive"] = ok;
  }
  {
    const auto dist = all_pairs_distances(g);
    std::map<std::uint32_t, std::size_t> root_of_distance;
    bool ok = true;
    for (std::size_t i = 0; i < n * n && ok; ++i) {
      auto r = pair_orbits.find(i);
      auto [it, inserted] = root_of_distance.emplace(dist[i], r);
      if (!inserted && it->second != r) ok = false;
    }
    bag["is_distance_transitive"] = ok;
  }
  return bag;
}

PropertyBag compute_all_invariants(const Graph& g, const Limits& limits) {
  PropertyBag bag = compute_numeric_invariants(g, limits);
  bag.merge(compute_boolean_invariants(g, limits));
  const auto canon = canonical_form(g);
  bag.merge(compute_symmetry_invariants(g, canon.aut_generators));
  return bag;
}

}  // namespace zoo::props
