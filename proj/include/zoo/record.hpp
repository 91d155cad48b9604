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

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "zoo/canon.hpp"
#include "zoo/value.hpp"

namespace zoo {

// One database row: an object, its identifiers, and its per-class properties.
struct ObjectRecord {
  std::map<std::string, std::string> guids;  // algorithm tag -> 64-hex
  std::set<std::string> aliases;
  std::string data;                           // shareable encoding (sparse6)
  std::map<std::string, PropertyBag> classes;  // class type name -> bag
  std::map<std::string, IndexTuple> collection_indexes;

  // The GUID whose algorithm tag sorts first. Throws if there is none.
  Guid primary_guid() const;

  friend bool operator==(const ObjectRecord&, const ObjectRecord&) = default;
};

nlohmann::json to_json(const ObjectRecord& r);
ObjectRecord record_from_json(const nlohmann::json& j);

struct Dataset {
  std::string id;
  std::map<std::string, std::string> metadata;
  std::vector<std::string> classes;
  std::vector<std::string> members;   // GUID hex strings
  std::vector<std::string> children;  // dataset ids

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

nlohmann::json to_json(const Dataset& d);
Dataset dataset_from_json(const nlohmann::json& j);

// Sorted keys, two-space indent, trailing newline.
std::string stable_dump(const nlohmann::json& j);

}  // namespace zoo
