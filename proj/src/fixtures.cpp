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

#include "zoo/fixtures.hpp"

#include <algorithm>

#include "zoo/canon.hpp"
#include "zoo/cid.hpp"
#include "zoo/codec.hpp"
#include "zoo/error.hpp"
#include "zoo/repo.hpp"

namespace zoo::fixtures {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json spec(json fields, json condition = json::object(), json defaults = json::object()) {
  return {{"fields", std::move(fields)},
          {"primary_key", "zooid"},
          {"condition", std::move(condition)},
          {"default", std::move(defaults)}};
}

std::string describe(const std::optional<PropertyValue>& v) {
  return v ? to_display(*v) : std::string("absent");
}

}  // namespace

std::map<std::string, json> class_specs() {
  std::map<std::string, json> out;
  out["ZooEntity"] = spec({{"zooid", "Integer"}});
  out["ZooObject"] = spec({{"alias", "ZooSet"}, {"unique_id", "ZooDict"}, {"zooid", "ZooEntity"}});
  out["ZooGraph"] = spec({
      {"zooid", "ZooObject"},
      {"order", "Integer"},
      {"size", "Integer"},
      {"girth", "Integer"},
      {"odd_girth", "Integer"},
      {"diameter", "Integer"},
      {"connected_components_number", "Integer"},
      {"triangles_count", "Integer"},
      {"clique_number", "Integer"},
      {"chromatic_index", "Integer"},
      {"valency", "Integer"},
      {"is_arc_transitive", "bool"},
      {"is_bipartite", "bool"},
      {"is_cayley", "bool"},
      {"is_distance_regular", "bool"},
      {"is_distance_transitive", "bool"},
      {"is_edge_transitive", "bool"},
      {"is_eulerian", "bool"},
      {"is_hamiltonian", "bool"},
      {"is_overfull", "bool"},
      {"is_partial_cube", "bool"},
      {"is_split", "bool"},
      {"is_strongly_regular", "bool"},
      {"is_vertex_transitive", "bool"},
  });
  out["VTGraph"] = spec({{"zooid", "ZooGraph"}, {"vt_index", "Index"}},
                        {{"is_vertex_transitive", true}}, {{"is_vertex_transitive", true}});
  out["CVTGraph"] = spec(
      {
          {"zooid", "ZooGraph"},
          {"cvt_index", "Index"},
          {"foster_index", "Index"},
          {"is_moebius_ladder", "bool"},
          {"is_prism", "bool"},
          {"is_spx", "bool"},
      },
      {{"valency", 3}, {"is_vertex_transitive", true}},
      {{"valency", 3}, {"is_vertex_transitive", true}});
  // Admitted by the hierarchy; no maniplex content is bundled.
  out["ZooManiplex"] = spec({{"zooid", "ZooObject"}, {"rank", "Integer"}});
  return out;
}

schema::ClassRegistry registry() { return schema::ClassRegistry::from_specs(class_specs()); }

ObjectRecord record_for_graph(const Graph& g, const schema::ClassRegistry& reg,
                              const props::Limits& limits) {
  const auto forms = canonical_form(g);
  PropertyBag computed = props::compute_numeric_invariants(g, limits);
  computed.merge(props::compute_boolean_invariants(g, limits));
  computed.merge(props::compute_symmetry_invariants(g, forms.aut_generators));

  ObjectRecord rec;
  const auto bytes = codec::encode_sparse6(forms.relabelled).payload;
  rec.guids[std::string(kEngineGuidAlgorithm)] = sha256_hex(bytes);
  rec.data = bytes;

  const auto* graph_class = reg.find("ZooGraph");
  if (!graph_class) throw SchemaError("registry has no ZooGraph class");
  for (const auto& [name, cls] : reg.specs()) {
    if (!reg.is_a(name, graph_class->name)) continue;
    bool holds = true;
    for (const auto* s : reg.chain(name)) {
      for (const auto& [prop, required] : s->condition) {
        auto it = computed.find(prop);
        if (it == computed.end() || it->second != required) holds = false;
      }
    }
    if (!holds) continue;
    auto& bag = rec.classes[cls.type_name];
    for (const auto& [prop, value] : computed) {
      auto f = cls.fields.find(prop);
      if (f != cls.fields.end() && prop != cls.primary_key) bag[prop] = value;
    }
  }
  return rec;
}

std::vector<NamedGraph> named_graphs() {
  using graphs::generalized_petersen;
  std::vector<NamedGraph> out;
  out.push_back({{"Petersen graph"}, graphs::petersen(), IndexTuple{10, 3}});
  out.push_back({{"3-Cube", "4-Prism"}, graphs::hypercube(3), IndexTuple{8, 2}});
  out.push_back({{"3-Prism"}, graphs::prism(3), std::nullopt});
  out.push_back({{"5-Prism"}, graphs::prism(5), std::nullopt});
  out.push_back({{"6-Prism"}, graphs::prism(6), IndexTuple{12, 3}});
  out.push_back({{"Moebius ladder M3", "Utility graph"}, graphs::moebius_ladder(3), std::nullopt});
  out.push_back({{"Moebius ladder M4", "Wagner graph"}, graphs::moebius_ladder(4), std::nullopt});
  out.push_back({{"Heawood graph"}, graphs::heawood(), IndexTuple{14, 1}});
  out.push_back({{"Desargues graph"}, graphs::desargues(), IndexTuple{20, 7}});
  out.push_back({{"Truncated Octahedron"}, graphs::truncated_octahedron(), IndexTuple{24, 11}});
  out.push_back({{"Generalised Petersen graph (13, 5)"}, generalized_petersen(13, 5),
                 IndexTuple{26, 5}});
  out.push_back({{"Coxeter graph"}, graphs::coxeter(), IndexTuple{28, 6}});
  out.push_back({{"Truncated Cuboctahedron"}, graphs::truncated_cuboctahedron(),
                 IndexTuple{48, 29}});
  out.push_back({{"Truncated Icosidodecahedron"}, graphs::truncated_icosidodecahedron(),
                 IndexTuple{120, 60}});
  return out;
}

Corpus build_corpus(const schema::ClassRegistry& reg) {
  Corpus corpus;
  for (const auto& named : named_graphs()) {
    ObjectRecord rec = record_for_graph(named.graph, reg);
    rec.aliases.insert(named.aliases.begin(), named.aliases.end());
    if (named.cvt_index) {
      rec.classes["cvt_graph"]["cvt_index"] = *named.cvt_index;
      rec.collection_indexes["cvt"] = *named.cvt_index;
    }
    if (named.aliases.front() == "Petersen graph") {
      // Imported rows of the published record that are not computed here.
      rec.guids[std::string(kImportedGuidAlgorithm)] = std::string(kPetersenGuid);
      rec.data = std::string(kPetersenSparse6);
      rec.classes["graph"]["is_cayley"] = false;
      rec.classes["vt_graph"]["vt_index"] = IndexTuple{10, 5};
      rec.classes["cvt_graph"]["foster_index"] = IndexTuple{10, 1};
      rec.classes["cvt_graph"]["is_spx"] = false;
      rec.collection_indexes["vt"] = IndexTuple{10, 5};
      rec.collection_indexes["foster"] = IndexTuple{10, 1};
    }
    corpus.records.push_back(std::move(rec));
  }
  std::sort(corpus.records.begin(), corpus.records.end(),
            [](const ObjectRecord& a, const ObjectRecord& b) {
              return a.primary_guid() < b.primary_guid();
            });

  Dataset all;
  all.id = std::string(kAllDataset);
  all.metadata = {{"title", "Named cubic vertex-transitive graphs"}};
  all.classes = {"cvt_graph"};
  all.children = {std::string(kCvtDataset)};
  Dataset cvt;
  cvt.id = std::string(kCvtDataset);
  cvt.metadata = {{"title", "Named graphs with a known CVT census index"}};
  cvt.classes = {"cvt_graph"};
  for (const auto& rec : corpus.records) {
    const auto hex = rec.primary_guid().hex();
    all.members.push_back(hex);
    if (rec.collection_indexes.count("cvt")) cvt.members.push_back(hex);
  }
  corpus.datasets = {all, cvt};
  return corpus;
}

std::vector<std::string> golden_mismatches(const Corpus& corpus,
                                           const schema::ClassRegistry& reg) {
  std::vector<std::string> out;
  auto find = [&](std::string_view alias) -> const ObjectRecord* {
    for (const auto& rec : corpus.records) {
      if (rec.aliases.count(std::string(alias))) return &rec;
    }
    out.push_back("missing fixture " + std::string(alias));
    return nullptr;
  };
  auto expect = [&](const ObjectRecord& rec, std::string_view cls, std::string_view prop,
                    const PropertyValue& want) {
    auto got = schema::lookup(reg, rec, cls, prop);
    if (!got || *got != want) {
      out.push_back(*rec.aliases.begin() + ": " + std::string(prop) + " = " + describe(got) +
                    ", expected " + to_display(want));
    }
  };

  if (const auto* p = find("Petersen graph")) {
    const std::vector<std::pair<std::string, PropertyValue>> table = {
        {"is_arc_transitive", true},      {"is_bipartite", false},
        {"is_cayley", false},            {"is_distance_regular", true},
        {"is_distance_transitive", true}, {"is_edge_transitive", true},
        {"is_eulerian", false},          {"is_hamiltonian", false},
        {"is_overfull", false},          {"is_partial_cube", false},
        {"is_split", false},             {"is_strongly_regular", true},
        {"clique_number", std::int64_t{2}}, {"connected_components_number", std::int64_t{1}},
        {"diameter", std::int64_t{2}},   {"girth", std::int64_t{5}},
        {"odd_girth", std::int64_t{5}},  {"order", std::int64_t{10}},
        {"size", std::int64_t{15}},      {"triangles_count", std::int64_t{0}},
        {"foster_index", IndexTuple{10, 1}},
        {"cvt_index", IndexTuple{10, 3}}, {"is_moebius_ladder", false},
        {"is_prism", false},             {"is_spx", false},
    };
    for (const auto& [prop, want] : table) expect(*p, "CVTGraph", prop, want);
    expect(*p, "VTGraph", "vt_index", IndexTuple{10, 5});
    for (const char* cls : {"graph", "vt_graph", "cvt_graph"}) {
      if (!p->classes.count(cls)) out.push_back(std::string("Petersen graph: not in class ") + cls);
    }
    if (p->data != kPetersenSparse6) out.push_back("Petersen graph: data " + p->data);
    const auto primary = p->primary_guid();
    if (primary.hex() != kPetersenGuid) out.push_back("Petersen graph: primary GUID " + primary.hex());
    if (cid::cid_from_guid(primary.hex()).render() != kPetersenCid) {
      out.push_back("Petersen graph: CID " + cid::cid_from_guid(primary.hex()).render());
    }
    // The imported data string must describe the same graph as the engine GUID.
    const auto decoded = codec::decode(p->data);
    const auto engine = p->guids.find(std::string(kEngineGuidAlgorithm));
    if (engine == p->guids.end() || guid(decoded).hex() != engine->second) {
      out.push_back("Petersen graph: data does not match its engine GUID");
    }
  }
  if (const auto* h = find("Heawood graph")) {
    expect(*h, "CVTGraph", "order", std::int64_t{14});
    expect(*h, "CVTGraph", "valency", std::int64_t{3});
  }
  if (const auto* gp = find("Generalised Petersen graph (13, 5)")) {
    expect(*gp, "CVTGraph", "order", std::int64_t{26});
    expect(*gp, "CVTGraph", "girth", std::int64_t{7});
    expect(*gp, "CVTGraph", "diameter", std::int64_t{4});
  }
  if (const auto* c = find("Coxeter graph")) {
    expect(*c, "CVTGraph", "order", std::int64_t{28});
    expect(*c, "CVTGraph", "girth", std::int64_t{7});
    expect(*c, "CVTGraph", "diameter", std::int64_t{4});
  }
  if (const auto* cube = find("3-Cube")) {
    expect(*cube, "CVTGraph", "is_partial_cube", true);
    expect(*cube, "CVTGraph", "is_prism", true);
  }
  if (const auto* y6 = find("6-Prism")) {
    expect(*y6, "CVTGraph", "order", std::int64_t{12});
    expect(*y6, "CVTGraph", "is_partial_cube", true);
    expect(*y6, "CVTGraph", "is_prism", true);
  }
  for (const char* name : {"Desargues graph", "Truncated Octahedron", "Truncated Cuboctahedron",
                           "Truncated Icosidodecahedron"}) {
    if (const auto* r = find(name)) {
      expect(*r, "CVTGraph", "is_partial_cube", true);
      expect(*r, "CVTGraph", "is_prism", false);
    }
  }
  for (const auto& rec : corpus.records) {
    for (const auto& issue : schema::validate_record(reg, rec)) {
      out.push_back(*rec.aliases.begin() + ": " + issue.message);
    }
  }
  return out;
}

Corpus generate_fixtures(const fs::path& output) {
  const auto specs = class_specs();
  fs::create_directories(output / "specs");
  for (const auto& [name, j] : specs) {
    repo::write_file_atomic(output / "specs" / (name + ".json"), stable_dump(j));
  }
  const auto reg = schema::ClassRegistry::load(output / "specs");
  Corpus corpus = build_corpus(reg);
  const auto mismatches = golden_mismatches(corpus, reg);
  if (!mismatches.empty()) {
    std::string msg = "fixture values disagree with pinned golden values:";
    for (const auto& m : mismatches) msg += "\n  " + m;
    throw Error(msg);
  }
  const auto root = output / "repo";
  fs::create_directories(root);
  repo::WriteLock lock(root);
  for (const auto& rec : corpus.records) repo::write_object(root, rec, &reg);
  for (const auto& ds : corpus.datasets) repo::write_dataset(root, ds);
  return corpus;
}

}  // namespace zoo::fixtures
