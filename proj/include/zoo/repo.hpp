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
#include <string>
#include <string_view>
#include <vector>

#include "zoo/record.hpp"
#include "zoo/schema.hpp"

// On-disk object-addressable repository:
//   <root>/<algorithm>/<first two hex digits>/<remaining 62 digits>
// holds one JSON object per record; every further GUID of the record is a
// link to that file. Datasets live in <root>/datasets/<id>.json.
namespace zoo::repo {

namespace fs = std::filesystem;

inline constexpr std::string_view kDatasetDir = "datasets";
inline constexpr std::string_view kStateDir = ".zoo";

std::string object_path(std::string_view algorithm, std::string_view guid_hex);

struct WriteResult {
  fs::path file;                // relative to the repository root
  std::vector<fs::path> links;  // relative to the repository root
  bool changed = false;         // false when every byte was already in place
};

// Validates against the registry when one is given (throws RepoError with
// kInvalid). Writes are temp-file-then-rename.
WriteResult write_object(const fs::path& root, const ObjectRecord& record,
                         const schema::ClassRegistry* registry = nullptr);

ObjectRecord read_object(const fs::path& root, std::string_view algorithm,
                         std::string_view guid_hex);

void write_dataset(const fs::path& root, const Dataset& dataset);
// Loads the dataset and checks every child's members are among its own.
Dataset load_dataset(const fs::path& root, std::string_view id);
std::vector<std::string> list_datasets(const fs::path& root);

struct ScannedObject {
  fs::path path;  // relative path of the regular file
  ObjectRecord record;
};

struct ScanResult {
  std::vector<ScannedObject> objects;
  std::vector<fs::path> links;
  std::vector<std::string> problems;  // dangling links, malformed files, ...
};

// Walks the whole repository. Problems are collected, not thrown.
ScanResult scan(const fs::path& root);

// Writes raw bytes to path atomically; returns false if the file already
// held exactly these bytes.
bool write_file_atomic(const fs::path& path, std::string_view bytes);
std::string read_file(const fs::path& path);

// Advisory single-writer lock on <root>/.zoo/lock, held for the object's
// lifetime.
class WriteLock {
 public:
  explicit WriteLock(const fs::path& root);
  ~WriteLock();
  WriteLock(const WriteLock&) = delete;
  WriteLock& operator=(const WriteLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace zoo::repo
