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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zoo/graph.hpp"
#include "zoo/graphprops.hpp"
#include "zoo/record.hpp"
#include "zoo/schema.hpp"

// The bundled desk-scale corpus: class specifications, named graphs built
// from their definitions, and the datasets grouping them.
namespace zoo::fixtures {

// Published identifiers of the Petersen graph, carried as imported data.
inline constexpr std::string_view kPetersenGuid =
    "c74c6028a25a65a6189db885bdaa11aa1c1f2a861f4c0d0e8efd6a4ec786e0a5";
inline constexpr std::string_view kPetersenCid = "Zc74c-6028-a25a+8";
inline constexpr std::string_view kPetersenSparse6 = ":IeIKqPD?hgAH?G~";

inline constexpr std::string_view kAllDataset = "graphs-sample";
inline constexpr std::string_view kCvtDataset = "cvt-sample";

// Class specification files keyed by class name.
std::map<std::string, nlohmann::json> class_specs();
schema::ClassRegistry registry();

// Computes every in-scope invariant, derives the engine GUID and canonical
// sparse6 data, and files each property under every class of the registry
// that descends from ZooGraph and whose conditions the graph meets.
ObjectRecord record_for_graph(const Graph& g, const schema::ClassRegistry& registry,
                              const props::Limits& limits = {});

struct NamedGraph {
  std::vector<std::string> aliases;
  Graph graph;
  std::optional<IndexTuple> cvt_index;
};

std::vector<NamedGraph> named_graphs();

struct Corpus {
  std::vector<ObjectRecord> records;  // sorted by primary GUID
  std::vector<Dataset> datasets;
};

Corpus build_corpus(const schema::ClassRegistry& registry);

// Differences between the corpus and the pinned published values; empty
// when everything agrees.
std::vector<std::string> golden_mismatches(const Corpus& corpus,
                                           const schema::ClassRegistry& registry);

// Writes <output>/specs and <output>/repo. Throws Error if any golden value
// disagrees. Regenerating into the same place rewrites nothing.
Corpus generate_fixtures(const std::filesystem::path& output);

}  // namespace zoo::fixtures
