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

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "zoo/query.hpp"
#include "zoo/record.hpp"
#include "zoo/schema.hpp"

// In-memory queryable index over a repository, plus the change journal that
// turns local edits into contribution files.
namespace zoo::store {

struct ChangeEntry {
  enum class Kind { kAddObject, kAddProperty, kUpdateValue, kAddCollection };

  std::string timestamp;  // ISO 8601, UTC
  std::string actor;
  Kind kind = Kind::kAddObject;
  std::string target_guid;  // "algorithm:hex" of the record's primary GUID
  std::string class_name;   // empty for add-object and add-collection
  std::string property;     // collection id for add-collection
  std::optional<nlohmann::json> old_value;  // update-value only
  nlohmann::json new_value;

  friend bool operator==(const ChangeEntry&, const ChangeEntry&) = default;
};

std::string_view kind_name(ChangeEntry::Kind k);
nlohmann::json to_json(const ChangeEntry& e);
ChangeEntry change_from_json(const nlohmann::json& j);

struct AddObject {
  ObjectRecord record;
};
struct SetProperty {
  std::string id;  // any GUID form accepted by Store::resolve
  std::string class_name;
  std::string property;
  PropertyValue value;
};
// Adds an object to a dataset (created if missing) and its ancestors,
// optionally recording its index in that collection.
struct AddCollection {
  std::string id;
  std::string collection;
  std::optional<IndexTuple> index;
};
using Mutation = std::variant<AddObject, SetProperty, AddCollection>;

struct Query {
  std::string type;  // class spec name
  query::Expr expr;
  std::vector<query::Expr> orderby;
  std::optional<std::size_t> limit;
  std::size_t offset = 0;
  std::vector<std::string> collections;  // union of members; empty = all
};

struct GroupCount {
  std::vector<query::Number> key;
  std::size_t count = 0;
};

struct CountResult {
  std::size_t total = 0;
  std::vector<GroupCount> groups;  // sorted by key; empty without groupby
  std::size_t missing = 0;         // matches lacking some group key
};

class Store {
 public:
  explicit Store(schema::ClassRegistry registry);
  Store(const Store& other);
  Store(Store&& other) noexcept;
  Store& operator=(const Store& other);
  Store& operator=(Store&& other) noexcept;

  // Loads every object, dataset and the pending journal under root. Any
  // repository problem or validation issue aborts with StoreError kBuild.
  static Store build(const std::filesystem::path& root, schema::ClassRegistry registry);

  const schema::ClassRegistry& registry() const noexcept { return registry_; }
  std::size_t size() const;
  std::vector<ObjectRecord> records() const;
  std::map<std::string, Dataset> datasets() const;
  std::vector<ChangeEntry> journal() const;

  // Accepts "algorithm:hex", a bare hex GUID under any algorithm, or a CID.
  // Throws CidError on a malformed CID or checksum mismatch.
  std::optional<ObjectRecord> resolve(std::string_view id) const;

  // Renders the record's primary GUID as a CID, extending the prefix as far
  // as needed to stay unique among every GUID in the store.
  std::string citable_id(const ObjectRecord& rec) const;

  // Parses and typechecks; throws StoreError (unknown class/collection) or
  // QueryError.
  Query prepare(std::string_view type, std::string_view q,
                const std::vector<std::string>& orderby = {},
                std::optional<std::size_t> limit = std::nullopt, std::size_t offset = 0,
                const std::vector<std::string>& collections = {}) const;
  std::vector<query::Expr> prepare_keys(std::string_view type,
                                        const std::vector<std::string>& keys) const;

  std::vector<ObjectRecord> find_all(const Query& q) const;
  std::optional<ObjectRecord> find_one(const Query& q) const;
  // Ignores the query's orderby, limit and offset.
  CountResult count(const Query& q, const std::vector<query::Expr>& groupby = {}) const;

  // Applies the mutation and appends one journal entry. Returns false for a
  // no-op (nothing changed, nothing journaled). Invalid mutations throw
  // StoreError kInvalid or kNotFound and leave the store untouched.
  bool apply(const Mutation& m, std::string_view actor, std::string timestamp = {});

  // Contribution file: {journal, objects: {path: record}, datasets: {id: dataset}}
  // covering every object and dataset the journal touches.
  nlohmann::json export_changes() const;
  // Replays the contribution's journal. Entries that are already reflected
  // are skipped, so applying the same file twice is harmless. Returns the
  // number of entries applied.
  std::size_t apply_contribution(const nlohmann::json& contribution);
  void clear_journal();

  // Writes back every record and dataset the journal touches, and the
  // journal itself, under the repository write lock.
  void save(const std::filesystem::path& root) const;

 private:
  std::optional<std::size_t> row_of(std::string_view id) const;
  bool apply_locked(const Mutation& m, std::string_view actor, std::string timestamp);
  void index_row(std::size_t row);
  bool matches(const ObjectRecord& rec, const Query& q) const;

  schema::ClassRegistry registry_;
  mutable std::shared_mutex mutex_;
  std::vector<ObjectRecord> records_;
  std::map<std::string, std::size_t> by_guid_;  // "algorithm:hex" -> row
  std::map<std::string, std::size_t> by_hex_;   // hex -> row
  std::map<std::string, Dataset> datasets_;
  std::vector<ChangeEntry> journal_;
};

std::string now_timestamp();

}  // namespace zoo::store
