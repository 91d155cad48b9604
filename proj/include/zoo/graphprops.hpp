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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zoo/graph.hpp"
#include "zoo/value.hpp"

namespace zoo::props {

// Exact searches above these vertex counts are skipped and the property is
// left absent.
struct Limits {
  std::size_t hamiltonian_max_order = 32;
  std::size_t clique_max_order = 32;
  std::size_t chromatic_index_max_order = 20;
};

// order, size, girth, odd_girth, diameter, connected_components_number,
// triangles_count, clique_number, chromatic_index, and valency when regular.
PropertyBag compute_numeric_invariants(const Graph& g, const Limits& limits = {});

// is_bipartite, is_eulerian, is_hamiltonian, is_split, is_overfull,
// is_strongly_regular, is_distance_regular, is_partial_cube, is_prism,
// is_moebius_ladder.
PropertyBag compute_boolean_invariants(const Graph& g, const Limits& limits = {});

// is_vertex_transitive, is_edge_transitive, is_arc_transitive,
// is_distance_transitive for the group generated by aut_generators. Throws
// InvalidGraph if a generator is not an automorphism of g.
PropertyBag compute_symmetry_invariants(const Graph& g,
                                        std::span<const Permutation> aut_generators);

// Everything above, with generators taken from the canonical labelling.
PropertyBag compute_all_invariants(const Graph& g, const Limits& limits = {});

struct HypercubeEmbedding {
  std::size_t dim = 0;
  std::vector<std::string> labels;  // vertex -> bit string of length dim
};

// Isometric hypercube embedding built from the Djokovic-Winkler classes, or
// nullopt if g is not a partial cube. Throws InvalidGraph if g is disconnected.
std::optional<HypercubeEmbedding> partial_cube_embedding(const Graph& g);

bool is_isometric_embedding(const Graph& g, const HypercubeEmbedding& e);

// Individual predicates, exposed for reuse and testing.
std::optional<std::size_t> girth(const Graph& g);
std::optional<std::size_t> odd_girth(const Graph& g);
std::optional<std::size_t> diameter(const Graph& g);
std::size_t triangles_count(const Graph& g);
std::size_t clique_number(const Graph& g);
std::size_t chromatic_index(const Graph& g);
bool is_bipartite(const Graph& g);
bool is_hamiltonian(const Graph& g);
bool is_split(const Graph& g);
bool is_strongly_regular(const Graph& g);
bool is_distance_regular(const Graph& g);
bool is_prism(const Graph& g);
bool is_moebius_ladder(const Graph& g);

}  // namespace zoo::props
