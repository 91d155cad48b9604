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

#include "zoo/record.hpp"
#include "zoo/value.hpp"

namespace zoo::schema {

enum class FieldKind {
  kInteger,
  kRational,
  kReal,
  kBoolean,
  kString,
  kIndex,  // census index tuple such as (10, 3)
  kClassRef,
  kSet,
  kDict,
};

struct FieldType {
  FieldKind kind = FieldKind::kInteger;
  std::string target;  // referenced class for kClassRef

  bool numeric() const {
    return kind == FieldKind::kInteger || kind == FieldKind::kRational ||
           kind == FieldKind::kReal;
  }
  std::string spelling() const;
  friend bool operator==(const FieldType&, const FieldType&) = default;
};

using FieldMap = std::map<std::string, FieldType>;

struct ClassSpec {
  std::string name;       // spec file stem, e.g. CVTGraph
  std::string type_name;  // snake-case name used by records and queries
  FieldMap fields;        // own fields only
  std::string primary_key;
  PropertyBag condition;
  PropertyBag defaults;
  std::optional<std::string> parent;

  friend bool operator==(const ClassSpec&, const ClassSpec&) = default;
};

// CamelCase spec name to snake-case type name; a leading "Zoo" is dropped.
std::string type_name_for(std::string_view class_name);

bool value_matches(const PropertyValue& v, const FieldType& t);

class ClassRegistry {
 public:
  // One <ClassName>.json per class. Throws SchemaError.
  static ClassRegistry load(const std::filesystem::path& directory);
  // Same validation over already-parsed spec objects keyed by class name.
  static ClassRegistry from_specs(const std::map<std::string, nlohmann::json>& specs);

  // Looks up by spec name or type name.
  const ClassSpec* find(std::string_view name) const;
  const ClassSpec& get(std::string_view name) const;

  const std::map<std::string, ClassSpec>& specs() const noexcept { return specs_; }
  const std::string& root() const noexcept { return root_; }

  // The class itself followed by its ancestors up to the root.
  std::vector<const ClassSpec*> chain(std::string_view name) const;
  bool is_a(std::string_view cls, std::string_view ancestor) const;
  FieldMap effective_fields(std::string_view name) const;

  friend bool operator==(const ClassRegistry&, const ClassRegistry&) = default;

 private:
  std::map<std::string, ClassSpec> specs_;
  std::map<std::string, std::string> by_type_name_;
  std::string root_;
};

// Value of prop for rec seen as an instance of cls: stored values along the
// class chain first, then the chain's defaults; nullopt when absent.
std::optional<PropertyValue> lookup(const ClassRegistry& registry,
                                    const ObjectRecord& rec, std::string_view cls,
                                    std::string_view prop);

// True if rec claims cls or a descendant of it.
bool record_is_a(const ClassRegistry& registry, const ObjectRecord& rec,
                 std::string_view cls);

struct Issue {
  enum class Kind {
    kNoGuid,
    kUnknownClass,
    kUnknownField,
    kTypeMismatch,
    kConditionViolation,
  };
  Kind kind;
  std::string class_name;
  std::string property;
  std::string message;
};

std::vector<Issue> validate_record(const ClassRegistry& registry, const ObjectRecord& rec);

}  // namespace zoo::schema
