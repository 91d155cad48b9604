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

// Slow, independent reference implementations used to check the library.
// Nothing here calls into the code under test except the Graph container.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zoo/graph.hpp"
#include "zoo/record.hpp"

namespace zoo::testing {

using Rng = std::mt19937_64;

// Erdos-Renyi G(n, p).
Graph random_graph(Rng& rng, std::size_t n, double p);
// Random simple cubic graph by rejection sampling of perfect matchings.
Graph random_cubic_graph(Rng& rng, std::size_t n);
Permutation random_permutation(Rng& rng, std::size_t n);

// Dense 0/1 adjacency, row-major.
std::vector<std::uint8_t> adjacency_matrix(const Graph& g);

// Backtracking isomorphism search with degree and adjacency consistency.
std::optional<Permutation> find_isomorphism(const Graph& g, const Graph& h);
bool isomorphic(const Graph& g, const Graph& h);

// Minimum of the upper-triangle adjacency bit string over all n! labellings.
// Intended for n <= 6.
std::string brute_force_canonical_key(const Graph& g);

// All labelled graphs on n vertices, edge subsets in binary order.
std::vector<Graph> all_labelled_graphs(std::size_t n);

// Exhaustive invariants. nullopt stands for "no cycle" / "disconnected".
std::optional<std::size_t> oracle_girth(const Graph& g);
std::optional<std::size_t> oracle_odd_girth(const Graph& g);
std::optional<std::size_t> oracle_diameter(const Graph& g);  // Floyd-Warshall
std::size_t oracle_triangles(const Graph& g);
std::size_t oracle_clique_number(const Graph& g);  // subset enumeration
bool oracle_hamiltonian(const Graph& g);           // permutation enumeration

// Order of the permutation group on n points generated by gens, by
// Schreier-Sims: product of basic orbit lengths.
std::uint64_t schreier_sims_order(std::size_t n, const std::vector<Permutation>& gens);
// Same, by closing the generator set under composition (small groups only).
std::uint64_t closure_order(std::size_t n, const std::vector<Permutation>& gens);
// |Aut(g)| by trying every permutation (n <= 10).
std::uint64_t brute_force_automorphism_count(const Graph& g);

// Random query expression text over the given property names.
struct ExprVocabulary {
  std::vector<std::string> booleans;
  std::vector<std::string> numerics;
};
std::string random_query(Rng& rng, const ExprVocabulary& vocab, int depth);
std::string random_arith(Rng& rng, const ExprVocabulary& vocab, int depth);

// Deletes itself on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

// Every regular file and symlink below root, relative path -> content (links
// are rendered as "-> target").
std::vector<std::pair<std::string, std::string>> tree_snapshot(const std::filesystem::path& root);

// Location of the committed fixture corpus (specs/ and repo/).
std::filesystem::path source_data_dir();

}  // namespace zoo::testing
