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

#include "zoo/record.hpp"

#include "zoo/error.hpp"

namespace zoo {

namespace {

void require_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                  const char* what) {
  if (!j.is_object()) throw Error(std::string(what) + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok |= k == a;
    if (!ok) throw Error(std::string("unexpected key '") + k + "' in " + what);
  }
}

}  // namespace

Guid ObjectRecord::primary_guid() const {
  if (guids.empty()) throw Error("record has no GUID");
  const auto& [alg, hex] = *guids.begin();
  return Guid(alg, hex);
}

nlohmann::json to_json(const ObjectRecord& r) {
  nlohmann::json j = nlohmann::json::object();
  j["guids"] = r.guids;
  j["aliases"] = r.aliases;
  j["data"] = r.data;
  nlohmann::json classes = nlohmann::json::object();
  for (const auto& [name, bag] : r.classes) classes[name] = to_json(bag);
  j["classes"] = classes;
  nlohmann::json indexes = nlohmann::json::object();
  for (const auto& [name, t] : r.collection_indexes) indexes[name] = t;
  j["collection_indexes"] = indexes;
  return j;
}

ObjectRecord record_from_json(const nlohmann::json& j) {
  require_keys(j, {"guids", "aliases", "data", "classes", "collection_indexes"},
               "object record");
  ObjectRecord r;
  try {
    r.guids = j.at("guids").get<std::map<std::string, std::string>>();
    if (j.contains("aliases")) r.aliases = j["aliases"].get<std::set<std::string>>();
    if (j.contains("data")) r.data = j["data"].get<std::string>();
    if (j.contains("classes")) {
      for (const auto& [name, bag] : j["classes"].items()) {
        r.classes.emplace(name, bag_from_json(bag));
      }
    }
    if (j.contains("collection_indexes")) {
      r.collection_indexes =
          j["collection_indexes"].get<std::map<std::string, IndexTuple>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed object record: ") + e.what());
  }
  if (r.guids.empty()) throw Error("object record has no GUID");
  for (const auto& [alg, hex] : r.guids) Guid(alg, hex);
  return r;
}

nlohmann::json to_json(const Dataset& d) {
  return {{"id", d.id},
          {"metadata", d.metadata},
          {"classes", d.classes},
          {"members", d.members},
          {"children", d.children}};
}

Dataset dataset_from_json(const nlohmann::json& j) {
  require_keys(j, {"id", "metadata", "classes", "members", "children"}, "dataset");
  Dataset d;
  try {
    d.id = j.at("id").get<std::string>();
    if (j.contains("metadata")) {
      d.metadata = j["metadata"].get<std::map<std::string, std::string>>();
    }
    if (j.contains("classes")) d.classes = j["classes"].get<std::vector<std::string>>();
    if (j.contains("members")) d.members = j["members"].get<std::vector<std::string>>();
    if (j.contains("children")) d.children = j["children"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed dataset: ") + e.what());
  }
  return d;
}

std::string stable_dump(const nlohmann::json& j) {
  // nlohmann::json objects are std::map-backed, so keys come out sorted.
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::strict) + "\n";
}

}  // namespace zoo
