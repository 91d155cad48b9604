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

#include "zoo/graph.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <bit>
#include <queue>
#include <set>
#include <string>

#include "zoo/error.hpp"

namespace zoo {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InvalidGraph("edge endpoint out of range: (" + std::to_string(u) +
                         ", " + std::to_string(v) + ") with n = " +
                         std::to_string(n));
    }
    if (u == v) throw InvalidGraph("self-loop at vertex " + std::to_string(u));
    g.add_edge(u, v);
  }
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= adj_.size() || v >= adj_.size()) {
    throw InvalidGraph("edge endpoint out of range");
  }
  if (u == v) throw InvalidGraph("self-loop at vertex " + std::to_string(u));
  auto& a = adj_[u];
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it != a.end() && *it == v) return;
  a.insert(it, v);
  auto& b = adj_[v];
  b.insert(std::lower_bound(b.begin(), b.end(), u), u);
  ++size_;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(size_);
  for (Vertex u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::relabelled(std::span<const Vertex> perm) const {
  Graph g(order());
  for (Vertex u = 0; u < adj_.size(); ++u) {
    auto& row = g.adj_[perm[u]];
    row.reserve(adj_[u].size());
    for (Vertex v : adj_[u]) row.push_back(perm[v]);
    std::sort(row.begin(), row.end());
  }
  g.size_ = size_;
  return g;
}

bool Graph::is_automorphism(std::span<const Vertex> perm) const {
  if (perm.size() != order()) return false;
  std::vector<bool> seen(order(), false);
  for (Vertex p : perm) {
    if (p >= order() || seen[p]) return false;
    seen[p] = true;
  }
  for (Vertex u = 0; u < adj_.size(); ++u) {
    if (adj_[perm[u]].size() != adj_[u].size()) return false;
    for (Vertex v : adj_[u]) {
      if (!adjacent(perm[u], perm[v])) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source) {
  std::vector<std::uint32_t> dist(g.order(), kUnreachable);
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (Vertex v : g.neighbours(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

std::vector<std::uint32_t> all_pairs_distances(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::uint32_t> d(n * n);
  for (Vertex s = 0; s < n; ++s) {
    auto row = bfs_distances(g, s);
    std::copy(row.begin(), row.end(), d.begin() + s * n);
  }
  return d;
}

std::size_t connected_components(const Graph& g) {
  std::vector<bool> seen(g.order(), false);
  std::size_t count = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    ++count;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : g.neighbours(u)) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  return count;
}

namespace graphs {

namespace {

// Right-regular Cayley graph of the permutation group generated by the given
// involutions: g ~ g*s.
Graph cayley_graph(const std::vector<Permutation>& gens) {
  const std::size_t degree = gens.front().size();
  Permutation id(degree);
  for (Vertex i = 0; i < degree; ++i) id[i] = i;
  std::map<Permutation, Vertex> index{{id, 0}};
  std::vector<Permutation> elements{id};
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& s : gens) {
      Permutation gs(degree);
      for (Vertex x = 0; x < degree; ++x) gs[x] = elements[i][s[x]];
      auto [it, inserted] =
          index.emplace(gs, static_cast<Vertex>(elements.size()));
      if (inserted) elements.push_back(gs);
      edges.emplace_back(static_cast<Vertex>(i), it->second);
    }
  }
  return Graph::from_edges(elements.size(), edges);
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(a.size());
  for (Vertex x = 0; x < a.size(); ++x) r[x] = a[b[x]];
  return r;
}

bool is_identity(const Permutation& p) {
  for (Vertex x = 0; x < p.size(); ++x) {
    if (p[x] != x) return false;
  }
  return true;
}

std::size_t element_order(const Permutation& p) {
  Permutation q = p;
  std::size_t k = 1;
  while (!is_identity(q)) {
    q = compose(q, p);
    ++k;
  }
  return k;
}

std::size_t group_order(const std::vector<Permutation>& gens) {
  std::set<Permutation> seen;
  std::vector<Permutation> todo;
  Permutation id(gens.front().size());
  for (Vertex i = 0; i < id.size(); ++i) id[i] = i;
  seen.insert(id);
  todo.push_back(id);
  while (!todo.empty()) {
    Permutation g = todo.back();
    todo.pop_back();
    for (const auto& s : gens) {
      auto h = compose(g, s);
      if (seen.insert(h).second) todo.push_back(h);
    }
  }
  return seen.size();
}

}  // namespace

Graph cycle(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; n >= 3 && i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (Vertex u = 0; u < a; ++u) {
    for (Vertex v = 0; v < b; ++v) g.add_edge(u, a + v);
  }
  return g;
}

Graph prism(std::size_t n) { return generalized_petersen(n, 1); }

Graph moebius_ladder(std::size_t n) {
  Graph g = cycle(2 * n);
  for (Vertex i = 0; i < n; ++i) g.add_edge(i, i + n);
  return g;
}

Graph hypercube(std::size_t dim) {
  const std::size_t n = std::size_t{1} << dim;
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (std::size_t b = 0; b < dim; ++b) {
      Vertex v = u ^ (Vertex{1} << b);
      if (u < v) g.add_edge(u, v);
    }
  }
  return g;
}

Graph generalized_petersen(std::size_t n, std::size_t k) {
  Graph g(2 * n);
  for (Vertex i = 0; i < n; ++i) {
    g.add_edge(i, (i + 1) % n);
    g.add_edge(i, n + i);
    g.add_edge(n + i, n + (i + k) % n);
  }
  return g;
}

Graph petersen() { return generalized_petersen(5, 2); }

Graph heawood() {
  // Incidence graph of the Fano plane with difference set {0, 1, 3} mod 7.
  Graph g(14);
  for (Vertex line = 0; line < 7; ++line) {
    for (Vertex d : {0u, 1u, 3u}) g.add_edge((line + d) % 7, 7 + line);
  }
  return g;
}

Graph desargues() { return generalized_petersen(10, 3); }

Graph coxeter() {
  // Disjointness graph on the 28 triples of a 7-set that are not lines of a
  // Fano plane.
  std::vector<std::uint32_t> lines;
  for (std::uint32_t i = 0; i < 7; ++i) {
    lines.push_back((1u << i) | (1u << ((i + 1) % 7)) | (1u << ((i + 3) % 7)));
  }
  std::vector<std::uint32_t> triples;
  for (std::uint32_t mask = 0; mask < 128; ++mask) {
    if (std::popcount(mask) != 3) continue;
    if (std::find(lines.begin(), lines.end(), mask) != lines.end()) continue;
    triples.push_back(mask);
  }
  Graph g(triples.size());
  for (Vertex u = 0; u < triples.size(); ++u) {
    for (Vertex v = u + 1; v < triples.size(); ++v) {
      if ((triples[u] & triples[v]) == 0) g.add_edge(u, v);
    }
  }
  return g;
}

Graph truncated_octahedron() {
  // Cayley graph of the Coxeter group A3 = S4 on its simple reflections.
  return cayley_graph({{1, 0, 2, 3}, {0, 2, 1, 3}, {0, 1, 3, 2}});
}

Graph truncated_cuboctahedron() {
  // B3 as signed permutations acting on {+1,+2,+3,-1,-2,-3} = {0..5}.
  return cayley_graph(
      {{1, 0, 2, 4, 3, 5}, {0, 2, 1, 3, 5, 4}, {0, 1, 5, 3, 4, 2}});
}

Graph truncated_icosidodecahedron() {
  // H3 = A5 x Z2. Points 0..4 carry A5, points 5..6 carry the central Z2.
  // Simple reflections are (a, -1) with a a double transposition; search for
  // a triple satisfying the H3 Coxeter relations and generating 120 elements.
  std::vector<Permutation> involutions;
  const std::array<std::array<Vertex, 4>, 15> pairs = {{
      {0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 1, 3}, {0, 2, 1, 4},
      {0, 2, 3, 4}, {0, 3, 1, 2}, {0, 3, 1, 4}, {0, 3, 2, 4}, {0, 4, 1, 2},
      {0, 4, 1, 3}, {0, 4, 2, 3}, {1, 2, 3, 4}, {1, 3, 2, 4}, {1, 4, 2, 3},
  }};
  for (const auto& p : pairs) {
    Permutation s{0, 1, 2, 3, 4, 6, 5};
    std::swap(s[p[0]], s[p[1]]);
    std::swap(s[p[2]], s[p[3]]);
    involutions.push_back(s);
  }
  for (const auto& a : involutions) {
    for (const auto& b : involutions) {
      if (element_order(compose(a, b)) != 5) continue;
      for (const auto& c : involutions) {
        if (element_order(compose(b, c)) != 3) continue;
        if (element_order(compose(a, c)) != 2) continue;
        if (group_order({a, b, c}) != 120) continue;
        return cayley_graph({a, b, c});
      }
    }
  }
  throw InvalidGraph("no H3 Coxeter generators found");
}

}  // namespace graphs

}  // namespace zoo
