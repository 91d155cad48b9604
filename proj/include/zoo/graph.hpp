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

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace zoo {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;
// perm[v] is the image of vertex v.
using Permutation = std::vector<Vertex>;

// Finite simple undirected graph on vertices 0..n-1. Neighbour lists are kept
// sorted, so two graphs with the same labelled edge set compare equal.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  // Throws InvalidGraph on out-of-range endpoints or self-loops. Duplicate
  // edges collapse.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t order() const noexcept { return adj_.size(); }
  std::size_t size() const noexcept { return size_; }

  const std::vector<Vertex>& neighbours(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  bool adjacent(Vertex u, Vertex v) const;

  void add_edge(Vertex u, Vertex v);

  // Edges as (min, max) pairs, sorted lexicographically.
  std::vector<Edge> edges() const;

  // The graph pi(G): vertex v is renamed perm[v].
  Graph relabelled(std::span<const Vertex> perm) const;

  // True iff perm maps the edge set onto itself.
  bool is_automorphism(std::span<const Vertex> perm) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t size_ = 0;
};

// Breadth-first distances from source; unreachable vertices get kUnreachable.
inline constexpr std::uint32_t kUnreachable = UINT32_MAX;
std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source);

// Row-major n*n matrix of distances.
std::vector<std::uint32_t> all_pairs_distances(const Graph& g);

std::size_t connected_components(const Graph& g);

namespace graphs {
Graph cycle(std::size_t n);
Graph path(std::size_t n);
Graph complete(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
// K2 x Cn on 2n vertices.
Graph prism(std::size_t n);
// Mobius ladder on 2n vertices: C_{2n} plus its n long diagonals.
Graph moebius_ladder(std::size_t n);
Graph hypercube(std::size_t dim);
// GP(n, k): outer cycle u_i, spokes u_i v_i, inner edges v_i v_{i+k}.
Graph generalized_petersen(std::size_t n, std::size_t k);
Graph petersen();
Graph heawood();
Graph desargues();
Graph coxeter();
// Cayley-style constructions of the Archimedean truncations.
Graph truncated_octahedron();
Graph truncated_cuboctahedron();
Graph truncated_icosidodecahedron();
}  // namespace graphs

}  // namespace zoo
