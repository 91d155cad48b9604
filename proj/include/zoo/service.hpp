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
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "zoo/store.hpp"

// Read-only HTTP API over a store snapshot. Request handling is a pure
// function of (snapshot, request) so it is testable without a socket.
namespace zoo::service {

inline constexpr std::size_t kMaxLimit = 10000;
inline constexpr std::size_t kDefaultPageSize = 100;

struct Request {
  std::string path;
  std::multimap<std::string, std::string> params;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

enum class Format { kJson, kSparse6Lines, kCsv };
// Throws std::invalid_argument on an unknown name.
Format parse_format(std::string_view name);

// Shared by the CLI and the HTTP API so both emit identical bytes.
nlohmann::json item_json(const store::Store& s, const ObjectRecord& rec);
nlohmann::json object_detail_json(const store::Store& s, const ObjectRecord& rec);
nlohmann::json count_json(const store::CountResult& c, bool grouped);
std::string render_sparse6_lines(const std::vector<ObjectRecord>& items);
std::string render_csv(const store::Store& s, std::string_view type,
                       const std::vector<ObjectRecord>& items);
std::string group_key_text(const std::vector<query::Number>& key);

class Service {
 public:
  explicit Service(std::shared_ptr<const store::Store> snapshot);

  Response handle(const Request& req) const;

  // Later requests see the new snapshot; requests in flight keep the old one.
  void swap(std::shared_ptr<const store::Store> snapshot);
  std::shared_ptr<const store::Store> snapshot() const;

 private:
  mutable std::mutex mutex_;
  std::shared_ptr<const store::Store> snapshot_;
};

// HTTP front end over a Service. bind() with port 0 picks a free port.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Returns the bound port; throws Error if the address is unavailable.
  int bind(const std::string& host, int port);
  // Serves until stop() is called from another thread.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Blocks serving the API until the process is stopped.
void serve(Service& service, const std::string& host, int port);

}  // namespace zoo::service
