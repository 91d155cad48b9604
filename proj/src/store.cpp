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

#include "zoo/store.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <mutex>
#include <set>

#include "zoo/cid.hpp"
#include "zoo/error.hpp"
#include "zoo/repo.hpp"

namespace zoo::store {

namespace fs = std::filesystem;
using Kind = ChangeEntry::Kind;

namespace {

constexpr std::string_view kJournalFile = "journal.json";

std::string guid_key(const std::string& alg, const std::string& hex) { return alg + ":" + hex; }

std::string problems_text(const std::vector<std::string>& problems) {
  std::string out;
  for (const auto& p : problems) out += "\n  " + p;
  return out;
}

// Present keys before absent ones; numbers by value.
int compare_keys(const std::vector<std::optional<query::Number>>& a,
                 const std::vector<std::optional<query::Number>>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].has_value() != b[i].has_value()) return a[i].has_value() ? -1 : 1;
    if (!a[i]) continue;
    const auto c = *a[i] <=> *b[i];
    if (c < 0) return -1;
    if (c > 0) return 1;
  }
  return 0;
}

std::string lowercase(std::string s) {
  for (auto& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

// The dataset and every dataset that lists it as a child, transitively.
std::set<std::string> with_ancestors(const std::map<std::string, Dataset>& datasets,
                                     const std::string& id) {
  std::set<std::string> out{id};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& [name, ds] : datasets) {
      if (out.count(name)) continue;
      for (const auto& child : ds.children) {
        if (out.count(child)) {
          out.insert(name);
          grew = true;
          break;
        }
      }
    }
  }
  return out;
}

bool key_less(const std::vector<query::Number>& a, const std::vector<query::Number>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const query::Number& x, const query::Number& y) {
                                        return (x <=> y) < 0;
                                      });
}

}  // namespace

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::kAddObject: return "add-object";
    case Kind::kAddProperty: return "add-property";
    case Kind::kUpdateValue: return "update-value";
    case Kind::kAddCollection: return "add-collection";
  }
  return "add-object";
}

nlohmann::json to_json(const ChangeEntry& e) {
  nlohmann::json j = {
      {"timestamp", e.timestamp},     {"actor", e.actor},       {"kind", kind_name(e.kind)},
      {"target_guid", e.target_guid}, {"class", e.class_name},  {"property", e.property},
      {"new_value", e.new_value},
  };
  if (e.old_value) j["old_value"] = *e.old_value;
  return j;
}

ChangeEntry change_from_json(const nlohmann::json& j) {
  try {
    ChangeEntry e;
    e.timestamp = j.at("timestamp").get<std::string>();
    e.actor = j.at("actor").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "add-object") e.kind = Kind::kAddObject;
    else if (kind == "add-property") e.kind = Kind::kAddProperty;
    else if (kind == "update-value") e.kind = Kind::kUpdateValue;
    else if (kind == "add-collection") e.kind = Kind::kAddCollection;
    else throw StoreError(StoreError::Kind::kInvalid, "unknown change kind '" + kind + "'");
    e.target_guid = j.at("target_guid").get<std::string>();
    e.class_name = j.value("class", "");
    e.property = j.value("property", "");
    if (j.contains("old_value")) e.old_value = j.at("old_value");
    e.new_value = j.at("new_value");
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw StoreError(StoreError::Kind::kInvalid, std::string("malformed journal entry: ") + ex.what());
  }
}

std::string now_timestamp() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Store::Store(schema::ClassRegistry registry) : registry_(std::move(registry)) {}

Store::Store(const Store& other) {
  std::shared_lock lock(other.mutex_);
  registry_ = other.registry_;
  records_ = other.records_;
  by_guid_ = other.by_guid_;
  by_hex_ = other.by_hex_;
  datasets_ = other.datasets_;
  journal_ = other.journal_;
}

Store::Store(Store&& other) noexcept
    : registry_(std::move(other.registry_)),
      records_(std::move(other.records_)),
      by_guid_(std::move(other.by_guid_)),
      by_hex_(std::move(other.by_hex_)),
      datasets_(std::move(other.datasets_)),
      journal_(std::move(other.journal_)) {}

Store& Store::operator=(const Store& other) {
  if (this != &other) {
    Store copy(other);
    *this = std::move(copy);
  }
  return *this;
}

Store& Store::operator=(Store&& other) noexcept {
  if (this != &other) {
    std::unique_lock lock(mutex_);
    registry_ = std::move(other.registry_);
    records_ = std::move(other.records_);
    by_guid_ = std::move(other.by_guid_);
    by_hex_ = std::move(other.by_hex_);
    datasets_ = std::move(other.datasets_);
    journal_ = std::move(other.journal_);
  }
  return *this;
}

Store Store::build(const fs::path& root, schema::ClassRegistry registry) {
  Store s(std::move(registry));
  if (!fs::exists(root)) {
    throw StoreError(StoreError::Kind::kBuild, "repository " + root.string() + " does not exist");
  }
  auto scanned = repo::scan(root);
  std::vector<std::string> problems = std::move(scanned.problems);
  for (auto& obj : scanned.objects) {
    for (const auto& issue : schema::validate_record(s.registry_, obj.record)) {
      problems.push_back(obj.path.string() + ": " + issue.message);
    }
    for (const auto& [alg, hex] : obj.record.guids) {
      if (s.by_guid_.count(guid_key(alg, hex))) {
        problems.push_back(obj.path.string() + ": duplicate GUID " + guid_key(alg, hex));
      }
    }
    s.records_.push_back(std::move(obj.record));
    s.index_row(s.records_.size() - 1);
  }
  try {
    for (const auto& id : repo::list_datasets(root)) s.datasets_[id] = repo::load_dataset(root, id);
  } catch (const Error& e) {
    problems.push_back(e.what());
  }
  const auto journal_path = root / repo::kStateDir / kJournalFile;
  if (fs::exists(journal_path)) {
    try {
      for (const auto& e : nlohmann::json::parse(repo::read_file(journal_path))) {
        s.journal_.push_back(change_from_json(e));
      }
    } catch (const std::exception& e) {
      problems.push_back(journal_path.string() + ": " + e.what());
    }
  }
  if (!problems.empty()) {
    throw StoreError(StoreError::Kind::kBuild,
                     "repository " + root.string() + " failed validation:" + problems_text(problems));
  }
  return s;
}

void Store::index_row(std::size_t row) {
  for (const auto& [alg, hex] : records_[row].guids) {
    by_guid_.emplace(guid_key(alg, hex), row);
    by_hex_.emplace(hex, row);
  }
}

std::size_t Store::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

std::vector<ObjectRecord> Store::records() const {
  std::shared_lock lock(mutex_);
  return records_;
}

std::map<std::string, Dataset> Store::datasets() const {
  std::shared_lock lock(mutex_);
  return datasets_;
}

std::vector<ChangeEntry> Store::journal() const {
  std::shared_lock lock(mutex_);
  return journal_;
}

std::optional<std::size_t> Store::row_of(std::string_view id) const {
  const std::string text(id);
  if (auto colon = text.find(':'); colon != std::string::npos) {
    auto it = by_guid_.find(text.substr(0, colon) + ":" + lowercase(text.substr(colon + 1)));
    if (it == by_guid_.end()) return std::nullopt;
    return it->second;
  }
  if (is_guid_hex(text)) {
    auto it = by_hex_.find(lowercase(text));
    if (it == by_hex_.end()) return std::nullopt;
    return it->second;
  }
  if (!cid::looks_like_cid(text)) return std::nullopt;
  const auto c = cid::parse_cid(text);
  std::optional<std::size_t> found;
  for (auto it = by_hex_.lower_bound(c.prefix); it != by_hex_.end(); ++it) {
    if (it->first.compare(0, c.prefix.size(), c.prefix) != 0) break;
    if (found && *found != it->second) {
      throw StoreError(StoreError::Kind::kNotFound, "citable identifier " + text + " is ambiguous");
    }
    found = it->second;
  }
  return found;
}

std::optional<ObjectRecord> Store::resolve(std::string_view id) const {
  std::shared_lock lock(mutex_);
  auto row = row_of(id);
  if (!row) return std::nullopt;
  return records_[*row];
}

std::string Store::citable_id(const ObjectRecord& rec) const {
  const std::string hex = rec.primary_guid().hex();
  std::shared_lock lock(mutex_);
  // Sorted order puts the closest competitors right next to hex.
  std::vector<std::string> universe{hex};
  auto it = by_hex_.lower_bound(hex);
  auto after = it;
  if (after != by_hex_.end() && after->first == hex) ++after;
  if (after != by_hex_.end()) universe.push_back(after->first);
  if (it != by_hex_.begin()) universe.push_back(std::prev(it)->first);
  return cid::cid_from_guid(hex, cid::resolve_prefix_length(hex, universe)).render();
}

Query Store::prepare(std::string_view type, std::string_view q,
                     const std::vector<std::string>& orderby, std::optional<std::size_t> limit,
                     std::size_t offset, const std::vector<std::string>& collections) const {
  const auto* spec = registry_.find(type);
  if (!spec) {
    throw StoreError(StoreError::Kind::kUnknownClass, "unknown type '" + std::string(type) + "'");
  }
  Query out;
  out.type = spec->name;
  out.expr = query::parse_query(q);
  query::typecheck(out.expr, registry_, out.type);
  out.orderby = prepare_keys(type, orderby);
  out.limit = limit;
  out.offset = offset;
  std::shared_lock lock(mutex_);
  for (const auto& c : collections) {
    if (!datasets_.count(c)) {
      throw StoreError(StoreError::Kind::kUnknownCollection, "unknown collection '" + c + "'");
    }
    out.collections.push_back(c);
  }
  return out;
}

std::vector<query::Expr> Store::prepare_keys(std::string_view type,
                                             const std::vector<std::string>& keys) const {
  const auto* spec = registry_.find(type);
  if (!spec) {
    throw StoreError(StoreError::Kind::kUnknownClass, "unknown type '" + std::string(type) + "'");
  }
  std::vector<query::Expr> out;
  for (const auto& k : keys) {
    out.push_back(query::parse_key(k, registry_, spec->name));
  }
  return out;
}

bool Store::matches(const ObjectRecord& rec, const Query& q) const {
  if (!schema::record_is_a(registry_, rec, q.type)) return false;
  if (!q.collections.empty()) {
    bool member = false;
    for (const auto& c : q.collections) {
      const auto& m = datasets_.at(c).members;
      for (const auto& [alg, hex] : rec.guids) {
        if (std::find(m.begin(), m.end(), hex) != m.end()) member = true;
      }
    }
    if (!member) return false;
  }
  return query::eval_expr(q.expr, rec, registry_, q.type) == query::TriValue::kTrue;
}

std::vector<ObjectRecord> Store::find_all(const Query& q) const {
  std::shared_lock lock(mutex_);
  struct Hit {
    std::vector<std::optional<query::Number>> keys;
    std::string guid;
    std::size_t row;
  };
  std::vector<Hit> hits;
  for (std::size_t row = 0; row < records_.size(); ++row) {
    const auto& rec = records_[row];
    if (!matches(rec, q)) continue;
    Hit h{{}, rec.primary_guid().to_string(), row};
    for (const auto& k : q.orderby) h.keys.push_back(query::eval_key(k, rec, registry_, q.type));
    hits.push_back(std::move(h));
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    const int c = compare_keys(a.keys, b.keys);
    return c != 0 ? c < 0 : a.guid < b.guid;
  });
  std::vector<ObjectRecord> out;
  const std::size_t end =
      q.limit ? std::min(hits.size(), q.offset + std::min(*q.limit, hits.size())) : hits.size();
  for (std::size_t i = q.offset; i < end; ++i) out.push_back(records_[hits[i].row]);
  return out;
}

std::optional<ObjectRecord> Store::find_one(const Query& q) const {
  Query one = q;
  one.limit = 1;
  auto r = find_all(one);
  if (r.empty()) return std::nullopt;
  return r.front();
}

CountResult Store::count(const Query& q, const std::vector<query::Expr>& groupby) const {
  std::shared_lock lock(mutex_);
  CountResult out;
  std::vector<GroupCount> groups;
  for (const auto& rec : records_) {
    if (!matches(rec, q)) continue;
    ++out.total;
    if (groupby.empty()) continue;
    std::vector<query::Number> key;
    bool missing = false;
    for (const auto& g : groupby) {
      auto v = query::eval_key(g, rec, registry_, q.type);
      if (!v) {
        missing = true;
        break;
      }
      key.push_back(*v);
    }
    if (missing) {
      ++out.missing;
      continue;
    }
    auto it = std::lower_bound(groups.begin(), groups.end(), key,
                               [](const GroupCount& a, const std::vector<query::Number>& k) {
                                 return key_less(a.key, k);
                               });
    if (it != groups.end() && !key_less(key, it->key)) {
      ++it->count;
    } else {
      groups.insert(it, GroupCount{std::move(key), 1});
    }
  }
  out.groups = std::move(groups);
  return out;
}

bool Store::apply(const Mutation& m, std::string_view actor, std::string timestamp) {
  std::unique_lock lock(mutex_);
  return apply_locked(m, actor, timestamp.empty() ? now_timestamp() : std::move(timestamp));
}

bool Store::apply_locked(const Mutation& m, std::string_view actor, std::string timestamp) {
  ChangeEntry entry;
  entry.timestamp = std::move(timestamp);
  entry.actor = std::string(actor);

  auto invalid = [](const std::vector<schema::Issue>& issues) {
    std::string msg = "mutation rejected:";
    for (const auto& i : issues) msg += "\n  " + i.message;
    return StoreError(StoreError::Kind::kInvalid, msg);
  };
  auto require_row = [&](const std::string& id) {
    auto row = row_of(id);
    if (!row) throw StoreError(StoreError::Kind::kNotFound, "no object " + id);
    return *row;
  };

  if (const auto* add = std::get_if<AddObject>(&m)) {
    auto issues = schema::validate_record(registry_, add->record);
    if (!issues.empty()) throw invalid(issues);
    std::optional<std::size_t> existing;
    for (const auto& [alg, hex] : add->record.guids) {
      if (auto it = by_guid_.find(guid_key(alg, hex)); it != by_guid_.end()) existing = it->second;
    }
    if (existing) {
      if (records_[*existing] == add->record) return false;
      throw StoreError(StoreError::Kind::kInvalid,
                       "object " + add->record.primary_guid().to_string() +
                           " already exists with different content");
    }
    records_.push_back(add->record);
    index_row(records_.size() - 1);
    entry.kind = Kind::kAddObject;
    entry.target_guid = add->record.primary_guid().to_string();
    entry.new_value = zoo::to_json(add->record);
  } else if (const auto* set = std::get_if<SetProperty>(&m)) {
    const auto row = require_row(set->id);
    const auto* spec = registry_.find(set->class_name);
    if (!spec) {
      throw StoreError(StoreError::Kind::kUnknownClass, "unknown class '" + set->class_name + "'");
    }
    ObjectRecord updated = records_[row];
    auto& bag = updated.classes[spec->type_name];
    auto old = bag.find(set->property);
    if (old != bag.end() && old->second == set->value) return false;
    entry.kind = old == bag.end() ? Kind::kAddProperty : Kind::kUpdateValue;
    if (old != bag.end()) entry.old_value = zoo::to_json(old->second);
    bag[set->property] = set->value;
    auto issues = schema::validate_record(registry_, updated);
    if (!issues.empty()) throw invalid(issues);
    entry.target_guid = updated.primary_guid().to_string();
    entry.class_name = spec->type_name;
    entry.property = set->property;
    entry.new_value = zoo::to_json(set->value);
    records_[row] = std::move(updated);
  } else {
    const auto& add = std::get<AddCollection>(m);
    const auto row = require_row(add.id);
    if (add.collection.empty() || add.collection.find('/') != std::string::npos) {
      throw StoreError(StoreError::Kind::kInvalid, "invalid collection id '" + add.collection + "'");
    }
    auto& rec = records_[row];
    const std::string hex = rec.primary_guid().hex();
    const auto targets = with_ancestors(datasets_, add.collection);
    bool changed = false;
    for (const auto& id : targets) {
      auto& ds = datasets_[id];
      ds.id = id;
      if (std::find(ds.members.begin(), ds.members.end(), hex) == ds.members.end()) {
        ds.members.push_back(hex);
        changed = true;
      }
    }
    if (add.index) {
      auto it = rec.collection_indexes.find(add.collection);
      if (it == rec.collection_indexes.end() || it->second != *add.index) {
        rec.collection_indexes[add.collection] = *add.index;
        changed = true;
      }
    }
    if (!changed) return false;
    entry.kind = Kind::kAddCollection;
    entry.target_guid = rec.primary_guid().to_string();
    entry.property = add.collection;
    entry.new_value = add.index ? zoo::to_json(PropertyValue(*add.index)) : nlohmann::json();
  }
  journal_.push_back(std::move(entry));
  return true;
}

nlohmann::json Store::export_changes() const {
  std::shared_lock lock(mutex_);
  nlohmann::json out = {{"journal", nlohmann::json::array()},
                        {"objects", nlohmann::json::object()},
                        {"datasets", nlohmann::json::object()}};
  for (const auto& e : journal_) {
    out["journal"].push_back(to_json(e));
    if (auto row = row_of(e.target_guid)) {
      const auto& rec = records_[*row];
      const auto g = rec.primary_guid();
      out["objects"][repo::object_path(g.algorithm(), g.hex())] = zoo::to_json(rec);
    }
    if (e.kind == Kind::kAddCollection) {
      for (const auto& id : with_ancestors(datasets_, e.property)) {
        if (auto it = datasets_.find(id); it != datasets_.end()) {
          out["datasets"][id] = zoo::to_json(it->second);
        }
      }
    }
  }
  return out;
}

std::size_t Store::apply_contribution(const nlohmann::json& contribution) {
  if (!contribution.is_object() || !contribution.contains("journal") ||
      !contribution["journal"].is_array()) {
    throw StoreError(StoreError::Kind::kInvalid, "contribution has no journal array");
  }
  std::vector<ChangeEntry> entries;
  for (const auto& j : contribution["journal"]) entries.push_back(change_from_json(j));

  std::unique_lock lock(mutex_);
  // All-or-nothing: replay on a scratch copy first.
  auto records = records_;
  auto by_guid = by_guid_;
  auto by_hex = by_hex_;
  auto datasets = datasets_;
  auto journal = journal_;
  std::size_t applied = 0;
  try {
    for (const auto& e : entries) {
      Mutation m;
      try {
        switch (e.kind) {
          case Kind::kAddObject: {
            auto rec = record_from_json(e.new_value);
            // Later entries may already have extended an object added here.
            if (auto row = row_of(rec.primary_guid().to_string());
                row && records_[*row].data == rec.data && records_[*row].guids == rec.guids) {
              continue;
            }
            m = AddObject{std::move(rec)};
            break;
          }
          case Kind::kAddProperty:
          case Kind::kUpdateValue:
            m = SetProperty{e.target_guid, e.class_name, e.property, value_from_json(e.new_value)};
            break;
          case Kind::kAddCollection: {
            std::optional<IndexTuple> index;
            if (!e.new_value.is_null()) index = std::get<IndexTuple>(value_from_json(e.new_value));
            m = AddCollection{e.target_guid, e.property, index};
            break;
          }
        }
      } catch (const std::bad_variant_access&) {
        throw StoreError(StoreError::Kind::kInvalid, "malformed collection index in journal");
      }
      if (apply_locked(m, e.actor, e.timestamp)) ++applied;
    }
  } catch (...) {
    records_ = std::move(records);
    by_guid_ = std::move(by_guid);
    by_hex_ = std::move(by_hex);
    datasets_ = std::move(datasets);
    journal_ = std::move(journal);
    throw;
  }
  return applied;
}

void Store::clear_journal() {
  std::unique_lock lock(mutex_);
  journal_.clear();
}

void Store::save(const fs::path& root) const {
  std::shared_lock lock(mutex_);
  repo::WriteLock write_lock(root);
  std::set<std::size_t> rows;
  std::set<std::string> touched_sets;
  for (const auto& e : journal_) {
    if (auto row = row_of(e.target_guid)) rows.insert(*row);
    if (e.kind == Kind::kAddCollection) touched_sets.merge(with_ancestors(datasets_, e.property));
  }
  for (auto row : rows) repo::write_object(root, records_[row], &registry_);
  for (const auto& id : touched_sets) {
    if (auto it = datasets_.find(id); it != datasets_.end()) repo::write_dataset(root, it->second);
  }
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : journal_) j.push_back(to_json(e));
  fs::create_directories(root / repo::kStateDir);
  repo::write_file_atomic(root / repo::kStateDir / kJournalFile, stable_dump(j));
}

}  // namespace zoo::store
