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

#include "zoo/schema.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "zoo/error.hpp"

namespace zoo::schema {

namespace {

const std::map<std::string, FieldKind>& builtin_types() {
  static const std::map<std::string, FieldKind> kTypes = {
      {"Integer", FieldKind::kInteger}, {"Rational", FieldKind::kRational},
      {"RealNumber", FieldKind::kReal}, {"bool", FieldKind::kBoolean},
      {"str", FieldKind::kString},      {"Index", FieldKind::kIndex},
      {"ZooSet", FieldKind::kSet},      {"ZooDict", FieldKind::kDict},
  };
  return kTypes;
}

std::string describe(const PropertyValue& v) { return to_display(v); }

}  // namespace

std::string FieldType::spelling() const {
  for (const auto& [name, kind] : builtin_types()) {
    if (kind == this->kind && kind != FieldKind::kClassRef) return name;
  }
  return target;
}

std::string type_name_for(std::string_view class_name) {
  std::string_view s = class_name;
  if (s.size() > 3 && s.starts_with("Zoo") && std::isupper(static_cast<unsigned char>(s[3]))) {
    s.remove_prefix(3);
  }
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (std::isupper(c)) {
      const bool prev_lower = i > 0 && !std::isupper(static_cast<unsigned char>(s[i - 1]));
      const bool next_lower =
          i + 1 < s.size() && std::islower(static_cast<unsigned char>(s[i + 1]));
      if (i > 0 && (prev_lower || next_lower) && out.back() != '_') out.push_back('_');
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

bool value_matches(const PropertyValue& v, const FieldType& t) {
  switch (t.kind) {
    case FieldKind::kInteger:
      return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<Infinite>(v);
    case FieldKind::kRational:
      return std::holds_alternative<Rational>(v) || std::holds_alternative<Infinite>(v);
    case FieldKind::kReal:
      return std::holds_alternative<double>(v) || std::holds_alternative<Infinite>(v);
    case FieldKind::kBoolean:
      return std::holds_alternative<bool>(v);
    case FieldKind::kString:
      return std::holds_alternative<std::string>(v);
    case FieldKind::kIndex:
      return std::holds_alternative<IndexTuple>(v);
    case FieldKind::kClassRef:
      return std::holds_alternative<std::int64_t>(v);
    case FieldKind::kSet:
    case FieldKind::kDict:
      return false;
  }
  return false;
}

ClassRegistry ClassRegistry::load(const std::filesystem::path& directory) {
  std::error_code ec;
  if (!std::filesystem::is_directory(directory, ec)) {
    throw SchemaError("class specification directory not found: " + directory.string());
  }
  std::map<std::string, nlohmann::json> specs;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    try {
      specs.emplace(entry.path().stem().string(), nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("cannot parse " + entry.path().string() + ": " + e.what());
    }
  }
  return from_specs(specs);
}

ClassRegistry ClassRegistry::from_specs(const std::map<std::string, nlohmann::json>& specs) {
  ClassRegistry reg;
  // Pass 1: shape of each file.
  for (const auto& [name, j] : specs) {
    if (!j.is_object()) throw SchemaError("class " + name + ": spec must be a JSON object");
    for (const auto& [k, v] : j.items()) {
      if (k != "fields" && k != "primary_key" && k != "condition" && k != "default") {
        throw SchemaError("class " + name + ": unexpected key '" + k + "'");
      }
    }
    if (!j.contains("fields") || !j["fields"].is_object()) {
      throw SchemaError("class " + name + ": missing 'fields' object");
    }
    if (!j.contains("primary_key") || !j["primary_key"].is_string()) {
      throw SchemaError("class " + name + ": missing 'primary_key'");
    }
    ClassSpec spec;
    spec.name = name;
    spec.type_name = type_name_for(name);
    spec.primary_key = j["primary_key"].get<std::string>();
    if (!j["fields"].contains(spec.primary_key)) {
      throw SchemaError("class " + name + ": primary key '" + spec.primary_key +
                        "' is not a field");
    }
    reg.specs_.emplace(name, std::move(spec));
  }
  // Pass 2: field types and parents.
  std::vector<std::string> roots;
  for (auto& [name, spec] : reg.specs_) {
    const auto& j = specs.at(name);
    for (const auto& [field, type] : j["fields"].items()) {
      if (!type.is_string()) {
        throw SchemaError("class " + name + ": type of field '" + field + "' must be a string");
      }
      const auto spelled = type.get<std::string>();
      FieldType ft;
      if (auto it = builtin_types().find(spelled); it != builtin_types().end()) {
        ft.kind = it->second;
      } else if (reg.specs_.contains(spelled)) {
        ft.kind = FieldKind::kClassRef;
        ft.target = spelled;
      } else if (field == spec.primary_key) {
        throw SchemaError("class " + name + ": missing parent class '" + spelled + "'");
      } else {
        throw SchemaError("class " + name + ": unknown field type '" + spelled +
                          "' for field '" + field + "'");
      }
      spec.fields.emplace(field, ft);
    }
    const auto& pk = spec.fields.at(spec.primary_key);
    if (pk.kind == FieldKind::kClassRef) {
      spec.parent = pk.target;
    } else if (pk.kind == FieldKind::kInteger) {
      roots.push_back(name);
    } else {
      throw SchemaError("class " + name + ": primary key must be Integer or a class reference");
    }
  }
  if (roots.size() != 1) {
    throw SchemaError("class hierarchy must have exactly one root, found " +
                      std::to_string(roots.size()));
  }
  reg.root_ = roots.front();
  // Pass 3: the parent relation is a tree.
  for (const auto& [name, spec] : reg.specs_) {
    std::set<std::string> seen{name};
    const ClassSpec* cur = &spec;
    while (cur->parent) {
      if (!seen.insert(*cur->parent).second) {
        throw SchemaError("cyclic class hierarchy through " + name);
      }
      cur = &reg.specs_.at(*cur->parent);
    }
  }
  for (const auto& [name, spec] : reg.specs_) {
    auto [it, inserted] = reg.by_type_name_.emplace(spec.type_name, name);
    if (!inserted) {
      throw SchemaError("classes " + it->second + " and " + name +
                        " map to the same type name '" + spec.type_name + "'");
    }
  }
  // Pass 4: no field redefined along a chain (the parent-referencing primary
  // key is exempt), then conditions and defaults.
  for (auto& [name, spec] : reg.specs_) {
    const auto ancestors = reg.chain(name);
    for (std::size_t i = 1; i < ancestors.size(); ++i) {
      for (const auto& [field, t] : spec.fields) {
        if (field == spec.primary_key) continue;
        if (ancestors[i]->fields.contains(field)) {
          throw SchemaError("class " + name + ": field '" + field +
                            "' duplicates a field of ancestor " + ancestors[i]->name);
        }
      }
    }
    const auto effective = reg.effective_fields(name);
    const auto& j = specs.at(name);
    auto read_bag = [&](const char* key) {
      PropertyBag bag;
      if (!j.contains(key)) return bag;
      if (!j[key].is_object()) {
        throw SchemaError("class " + name + ": '" + key + "' must be an object");
      }
      for (const auto& [prop, raw] : j[key].items()) {
        auto field = effective.find(prop);
        if (field == effective.end()) {
          throw SchemaError("class " + name + ": " + key + " refers to unknown field '" +
                            prop + "'");
        }
        PropertyValue v;
        try {
          v = value_from_json(raw);
        } catch (const Error& e) {
          throw SchemaError("class " + name + ": " + key + " value for '" + prop +
                            "': " + e.what());
        }
        if (!value_matches(v, field->second)) {
          throw SchemaError("class " + name + ": " + key + " value for '" + prop +
                            "' does not have type " + field->second.spelling());
        }
        bag.emplace(prop, std::move(v));
      }
      return bag;
    };
    spec.condition = read_bag("condition");
    spec.defaults = read_bag("default");
  }
  return reg;
}

const ClassSpec* ClassRegistry::find(std::string_view name) const {
  if (auto it = specs_.find(std::string(name)); it != specs_.end()) return &it->second;
  if (auto it = by_type_name_.find(std::string(name)); it != by_type_name_.end()) {
    return &specs_.at(it->second);
  }
  return nullptr;
}

const ClassSpec& ClassRegistry::get(std::string_view name) const {
  const auto* s = find(name);
  if (!s) throw SchemaError("unknown class '" + std::string(name) + "'");
  return *s;
}

std::vector<const ClassSpec*> ClassRegistry::chain(std::string_view name) const {
  std::vector<const ClassSpec*> out{&get(name)};
  while (out.back()->parent) out.push_back(&specs_.at(*out.back()->parent));
  return out;
}

bool ClassRegistry::is_a(std::string_view cls, std::string_view ancestor) const {
  const auto* target = find(ancestor);
  const auto* start = find(cls);
  if (!target || !start) return false;
  for (const auto* s : chain(start->name)) {
    if (s == target) return true;
  }
  return false;
}

FieldMap ClassRegistry::effective_fields(std::string_view name) const {
  FieldMap out;
  // Nearest definition wins; only primary keys can repeat along a chain.
  for (const auto* s : chain(name)) {
    for (const auto& [field, t] : s->fields) out.emplace(field, t);
  }
  return out;
}

std::optional<PropertyValue> lookup(const ClassRegistry& registry, const ObjectRecord& rec,
                                    std::string_view cls, std::string_view prop) {
  const auto chain = registry.chain(cls);
  const std::string key(prop);
  for (const auto* s : chain) {
    auto bag = rec.classes.find(s->type_name);
    if (bag == rec.classes.end()) continue;
    if (auto it = bag->second.find(key); it != bag->second.end()) return it->second;
  }
  for (const auto* s : chain) {
    if (auto it = s->defaults.find(key); it != s->defaults.end()) return it->second;
  }
  return std::nullopt;
}

bool record_is_a(const ClassRegistry& registry, const ObjectRecord& rec,
                 std::string_view cls) {
  for (const auto& [claimed, bag] : rec.classes) {
    if (registry.is_a(claimed, cls)) return true;
  }
  return false;
}

std::vector<Issue> validate_record(const ClassRegistry& registry, const ObjectRecord& rec) {
  std::vector<Issue> issues;
  if (rec.guids.empty()) {
    issues.push_back({Issue::Kind::kNoGuid, "", "", "record has no GUID"});
  }
  for (const auto& [alg, hex] : rec.guids) {
    if (!is_algorithm_tag(alg) || !is_guid_hex(hex)) {
      issues.push_back({Issue::Kind::kNoGuid, "", "", "malformed GUID " + alg + ":" + hex});
    }
  }
  for (const auto& [cls, bag] : rec.classes) {
    const auto* spec = registry.find(cls);
    if (!spec) {
      issues.push_back({Issue::Kind::kUnknownClass, cls, "", "unknown class '" + cls + "'"});
      continue;
    }
    for (const auto& [prop, value] : bag) {
      auto field = spec->fields.find(prop);
      if (field == spec->fields.end() || prop == spec->primary_key ||
          field->second.kind == FieldKind::kSet || field->second.kind == FieldKind::kDict) {
        issues.push_back({Issue::Kind::kUnknownField, cls, prop,
                          "property '" + prop + "' is not a field of class " + spec->name});
        continue;
      }
      if (!value_matches(value, field->second)) {
        issues.push_back({Issue::Kind::kTypeMismatch, cls, prop,
                          "property '" + prop + "' = " + describe(value) +
                              " does not have type " + field->second.spelling()});
      }
    }
    for (const auto* s : registry.chain(cls)) {
      for (const auto& [prop, required] : s->condition) {
        auto actual = lookup(registry, rec, cls, prop);
        if (!actual || *actual != required) {
          issues.push_back({Issue::Kind::kConditionViolation, cls, prop,
                            "class " + s->name + " requires " + prop + " = " +
                                describe(required) + ", found " +
                                (actual ? describe(*actual) : std::string("absent"))});
        }
      }
    }
  }
  return issues;
}

}  // namespace zoo::schema
