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

#include "zoo/service.hpp"

#include <charconv>
#include <stdexcept>

#include <httplib.h>

#include "zoo/error.hpp"

namespace zoo::service {

namespace {

using nlohmann::json;

Response json_response(int status, const json& body) {
  return {status, "application/json", body.dump() + "\n"};
}

Response error_response(int status, const std::string& message) {
  return json_response(status, {{"error", message}});
}

class BadRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<std::string> param(const Request& req, const std::string& name) {
  auto it = req.params.find(name);
  if (it == req.params.end()) return std::nullopt;
  return it->second;
}

// Repeated parameters and comma-separated values both contribute.
std::vector<std::string> list_param(const Request& req, const std::string& name) {
  std::vector<std::string> out;
  auto [lo, hi] = req.params.equal_range(name);
  for (auto it = lo; it != hi; ++it) {
    std::string_view v = it->second;
    while (!v.empty()) {
      const auto comma = v.find(',');
      auto part = v.substr(0, comma);
      while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
      while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
      if (!part.empty()) out.emplace_back(part);
      if (comma == std::string_view::npos) break;
      v.remove_prefix(comma + 1);
    }
  }
  return out;
}

std::optional<std::size_t> size_param(const Request& req, const std::string& name) {
  auto v = param(req, name);
  if (!v) return std::nullopt;
  std::size_t out = 0;
  auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || p != v->data() + v->size()) {
    throw BadRequest(name + " must be a nonnegative integer");
  }
  return out;
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> out;
  while (!path.empty()) {
    if (path.front() == '/') {
      path.remove_prefix(1);
      continue;
    }
    const auto slash = path.find('/');
    out.push_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Fields a results table can show: scalar properties and census indexes.
std::vector<std::pair<std::string, schema::FieldType>> table_fields(
    const schema::ClassRegistry& reg, std::string_view type) {
  std::vector<std::pair<std::string, schema::FieldType>> out;
  for (const auto& [name, t] : reg.effective_fields(type)) {
    if (t.kind == schema::FieldKind::kClassRef || t.kind == schema::FieldKind::kSet ||
        t.kind == schema::FieldKind::kDict) {
      continue;
    }
    out.emplace_back(name, t);
  }
  return out;
}

std::string field_kind(const schema::FieldType& t) {
  if (t.kind == schema::FieldKind::kBoolean) return "boolean";
  if (t.numeric()) return "numeric";
  if (t.kind == schema::FieldKind::kIndex) return "index";
  return "other";
}

store::Query query_from(const store::Store& s, const Request& req, bool paged) {
  auto type = param(req, "type");
  if (!type || type->empty()) throw BadRequest("missing type parameter");
  auto limit = size_param(req, "limit");
  if (limit && *limit > kMaxLimit) {
    throw BadRequest("limit exceeds the maximum of " + std::to_string(kMaxLimit));
  }
  if (!limit && paged) limit = kDefaultPageSize;
  return s.prepare(*type, param(req, "q").value_or(""), list_param(req, "orderby"), limit,
                   size_param(req, "offset").value_or(0), list_param(req, "collections"));
}

Response handle_types(const store::Store& s) {
  json out = json::array();
  for (const auto& [name, spec] : s.registry().specs()) {
    json t = {{"name", spec.name}, {"type", spec.type_name}};
    t["parent"] = spec.parent ? json(s.registry().get(*spec.parent).type_name) : json();
    out.push_back(std::move(t));
  }
  return json_response(200, out);
}

Response handle_properties(const store::Store& s, std::string_view type) {
  const auto* spec = s.registry().find(type);
  if (!spec) return error_response(404, "unknown type '" + std::string(type) + "'");
  json props = json::array();
  for (const auto& [name, t] : table_fields(s.registry(), type)) {
    std::string owner;
    for (const auto* c : s.registry().chain(type)) {
      if (c->fields.count(name)) owner = c->type_name;
    }
    // The primary key names the parent class, not a stored property.
    if (name == spec->primary_key) continue;
    props.push_back({{"name", name}, {"type", t.spelling()}, {"kind", field_kind(t)},
                     {"class", owner}});
  }
  return json_response(200, {{"type", spec->type_name}, {"properties", props}});
}

Response handle_collections(const store::Store& s) {
  json out = json::array();
  for (const auto& [id, ds] : s.datasets()) {
    out.push_back({{"id", id},
                   {"metadata", ds.metadata},
                   {"classes", ds.classes},
                   {"children", ds.children},
                   {"size", ds.members.size()}});
  }
  return json_response(200, out);
}

Response handle_search(const store::Store& s, const Request& req) {
  const auto q = query_from(s, req, true);
  const auto total = s.count(q).total;
  json items = json::array();
  for (const auto& rec : s.find_all(q)) items.push_back(item_json(s, rec));
  return json_response(200, {{"total", total},
                             {"offset", q.offset},
                             {"limit", q.limit.value_or(kMaxLimit)},
                             {"items", items}});
}

Response handle_count(const store::Store& s, const Request& req) {
  const auto q = query_from(s, req, false);
  const auto groupby = s.prepare_keys(q.type, list_param(req, "groupby"));
  return json_response(200, count_json(s.count(q, groupby), !groupby.empty()));
}

Response handle_download(const store::Store& s, const Request& req) {
  Format format;
  try {
    format = parse_format(param(req, "format").value_or("sparse6-lines"));
  } catch (const std::invalid_argument& e) {
    throw BadRequest(e.what());
  }
  const auto q = query_from(s, req, false);
  const auto items = s.find_all(q);
  switch (format) {
    case Format::kSparse6Lines:
      return {200, "text/plain; charset=utf-8", render_sparse6_lines(items)};
    case Format::kCsv:
      return {200, "text/csv; charset=utf-8", render_csv(s, q.type, items)};
    case Format::kJson: {
      json out = json::array();
      for (const auto& rec : items) out.push_back(item_json(s, rec));
      return json_response(200, out);
    }
  }
  return error_response(500, "unreachable");
}

Response handle_object(const store::Store& s, std::string_view id) {
  auto rec = s.resolve(id);
  if (!rec) return error_response(404, "no object " + std::string(id));
  return json_response(200, object_detail_json(s, *rec));
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "json") return Format::kJson;
  if (name == "sparse6-lines") return Format::kSparse6Lines;
  if (name == "csv") return Format::kCsv;
  throw std::invalid_argument("unknown format '" + std::string(name) +
                              "' (expected json, sparse6-lines or csv)");
}

nlohmann::json item_json(const store::Store& s, const ObjectRecord& rec) {
  json classes = json::object();
  for (const auto& [cls, bag] : rec.classes) classes[cls] = to_json(bag);
  return {{"cid", s.citable_id(rec)},
          {"guid", rec.primary_guid().to_string()},
          {"aliases", rec.aliases},
          {"data", rec.data},
          {"properties", classes}};
}

nlohmann::json object_detail_json(const store::Store& s, const ObjectRecord& rec) {
  json out = item_json(s, rec);
  out["guids"] = rec.guids;
  json indexes = json::object();
  for (const auto& [id, idx] : rec.collection_indexes) indexes[id] = idx;
  out["collection_indexes"] = indexes;
  return out;
}

std::string group_key_text(const std::vector<query::Number>& key) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += ",";
    out += key[i].to_string();
  }
  return out;
}

nlohmann::json count_json(const store::CountResult& c, bool grouped) {
  json out = {{"count", c.total}};
  if (grouped) {
    json groups = json::object();
    for (const auto& g : c.groups) groups[group_key_text(g.key)] = g.count;
    out["groups"] = groups;
    out["missing"] = c.missing;
  }
  return out;
}

std::string render_sparse6_lines(const std::vector<ObjectRecord>& items) {
  std::string out;
  for (const auto& rec : items) out += rec.data + "\n";
  return out;
}

std::string render_csv(const store::Store& s, std::string_view type,
                       const std::vector<ObjectRecord>& items) {
  const auto fields = table_fields(s.registry(), type);
  const auto& spec = s.registry().get(type);
  std::string out = "cid,guid,aliases,data";
  for (const auto& [name, t] : fields) {
    if (name != spec.primary_key) out += "," + name;
  }
  out += "\n";
  for (const auto& rec : items) {
    std::string aliases;
    for (const auto& a : rec.aliases) aliases += (aliases.empty() ? "" : ";") + a;
    out += csv_field(s.citable_id(rec)) + "," + csv_field(rec.primary_guid().to_string()) + "," +
           csv_field(aliases) + "," + csv_field(rec.data);
    for (const auto& [name, t] : fields) {
      if (name == spec.primary_key) continue;
      auto v = schema::lookup(s.registry(), rec, type, name);
      out += "," + (v ? csv_field(to_display(*v)) : std::string());
    }
    out += "\n";
  }
  return out;
}

Service::Service(std::shared_ptr<const store::Store> snapshot) : snapshot_(std::move(snapshot)) {}

void Service::swap(std::shared_ptr<const store::Store> snapshot) {
  std::lock_guard lock(mutex_);
  snapshot_ = std::move(snapshot);
}

std::shared_ptr<const store::Store> Service::snapshot() const {
  std::lock_guard lock(mutex_);
  return snapshot_;
}

Response Service::handle(const Request& req) const {
  const auto s = snapshot();
  const auto parts = split_path(req.path);
  try {
    if (parts.empty() || parts[0] != "api") return error_response(404, "not found");
    if (parts.size() == 2 && parts[1] == "types") return handle_types(*s);
    if (parts.size() == 4 && parts[1] == "types" && parts[3] == "properties") {
      return handle_properties(*s, parts[2]);
    }
    if (parts.size() == 2 && parts[1] == "collections") return handle_collections(*s);
    if (parts.size() == 2 && parts[1] == "objects") return handle_search(*s, req);
    if (parts.size() == 3 && parts[1] == "objects") return handle_object(*s, parts[2]);
    if (parts.size() == 2 && parts[1] == "count") return handle_count(*s, req);
    if (parts.size() == 2 && parts[1] == "download") return handle_download(*s, req);
    return error_response(404, "not found");
  } catch (const BadRequest& e) {
    return error_response(400, e.what());
  } catch (const QueryError& e) {
    return json_response(400, {{"error", e.message()}, {"offset", e.offset()}});
  } catch (const CidError& e) {
    if (e.kind() == CidError::Kind::kChecksumMismatch) {
      return json_response(400, {{"error", "checksum mismatch"}, {"detail", e.what()}});
    }
    return error_response(400, e.what());
  } catch (const StoreError& e) {
    switch (e.kind()) {
      case StoreError::Kind::kUnknownClass:
      case StoreError::Kind::kUnknownCollection:
      case StoreError::Kind::kNotFound:
        return error_response(404, e.what());
      default:
        return error_response(400, e.what());
    }
  } catch (const Error& e) {
    return error_response(400, e.what());
  }
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>()) {
  auto handler = [&service](const httplib::Request& hreq, httplib::Response& hres) {
    Request req;
    req.path = hreq.path;
    for (const auto& [k, v] : hreq.params) req.params.emplace(k, v);
    const auto res = service.handle(req);
    hres.status = res.status;
    hres.set_content(res.body, res.content_type);
  };
  impl_->server.Get(R"(/api/.*)", handler);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error("cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void serve(Service& service, const std::string& host, int port) {
  HttpServer server(service);
  server.bind(host, port);
  server.run();
}

}  // namespace zoo::service
