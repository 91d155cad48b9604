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

#include "zoo/repo.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "zoo/error.hpp"

namespace zoo::repo {

namespace {

using Kind = RepoError::Kind;

bool is_reserved(std::string_view name) {
  return name == kDatasetDir || name == kStateDir || name == "specs";
}

struct Resolved {
  fs::path file;
  bool via_link = false;
};

std::string link_text_target(const std::string& content) {
  std::string line = content.substr(0, content.find('\n'));
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
  return line;
}

bool looks_like_json(const std::string& content) {
  auto pos = content.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && content[pos] == '{';
}

// Follows at most one level of symlink or text link.
Resolved resolve(const fs::path& path) {
  std::error_code ec;
  const auto status = fs::symlink_status(path, ec);
  if (ec || !fs::exists(status)) {
    throw RepoError(Kind::kNotFound, "object not found: " + path.string());
  }
  if (fs::is_symlink(status)) {
    const fs::path target = path.parent_path() / fs::read_symlink(path);
    const auto tstatus = fs::symlink_status(target, ec);
    if (ec || !fs::exists(tstatus)) {
      throw RepoError(Kind::kDanglingLink, "dangling link: " + path.string());
    }
    if (!fs::is_regular_file(tstatus)) {
      throw RepoError(Kind::kMalformed, "link does not point at a regular file: " +
                                            path.string());
    }
    return {target, true};
  }
  const auto content = read_file(path);
  if (looks_like_json(content)) return {path, false};
  const fs::path target = path.parent_path() / link_text_target(content);
  const auto tstatus = fs::symlink_status(target, ec);
  if (ec || !fs::exists(tstatus)) {
    throw RepoError(Kind::kDanglingLink, "dangling link: " + path.string());
  }
  return {target, true};
}

ObjectRecord parse_object_file(const fs::path& file) {
  const auto content = read_file(file);
  if (!looks_like_json(content)) {
    throw RepoError(Kind::kMalformed, "link points at another link: " + file.string());
  }
  try {
    return record_from_json(nlohmann::json::parse(content));
  } catch (const nlohmann::json::exception& e) {
    throw RepoError(Kind::kMalformed, "malformed object file " + file.string() + ": " + e.what());
  } catch (const Error& e) {
    throw RepoError(Kind::kMalformed, "malformed object file " + file.string() + ": " + e.what());
  }
}

fs::path dataset_file(const fs::path& root, std::string_view id) {
  return root / kDatasetDir / (std::string(id) + ".json");
}

// Returns true if anything on disk changed.
bool ensure_link(const fs::path& link, const fs::path& target_relative) {
  std::error_code ec;
  const auto status = fs::symlink_status(link, ec);
  if (!ec && fs::is_symlink(status) && fs::read_symlink(link) == target_relative) return false;
  if (!ec && fs::is_regular_file(status) &&
      read_file(link) == target_relative.generic_string() + "\n") {
    return false;
  }
  fs::create_directories(link.parent_path());
  if (!ec && fs::exists(status)) fs::remove(link);
  fs::create_symlink(target_relative, link, ec);
  if (ec) write_file_atomic(link, target_relative.generic_string() + "\n");
  return true;
}

}  // namespace

std::string object_path(std::string_view algorithm, std::string_view guid_hex) {
  if (!is_algorithm_tag(algorithm) || is_reserved(algorithm)) {
    throw RepoError(Kind::kInvalid, "invalid algorithm tag '" + std::string(algorithm) + "'");
  }
  if (!is_guid_hex(guid_hex)) {
    throw RepoError(Kind::kInvalid, "invalid GUID '" + std::string(guid_hex) + "'");
  }
  std::string out(algorithm);
  out += '/';
  out.append(guid_hex.substr(0, 2));
  out += '/';
  out.append(guid_hex.substr(2));
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RepoError(Kind::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file_atomic(const fs::path& path, std::string_view bytes) {
  std::error_code ec;
  if (fs::is_regular_file(fs::symlink_status(path, ec))) {
    if (read_file(path) == bytes) return false;
  }
  fs::create_directories(path.parent_path());
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  const fs::path tmp = path.parent_path() /
                       ("." + path.filename().string() + ".tmp" + std::to_string(rng()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw RepoError(Kind::kIo, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw RepoError(Kind::kIo, "short write to " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw RepoError(Kind::kIo, "cannot rename into " + path.string() + ": " + ec.message());
  }
  return true;
}

WriteResult write_object(const fs::path& root, const ObjectRecord& record,
                         const schema::ClassRegistry* registry) {
  if (record.guids.empty()) throw RepoError(Kind::kInvalid, "record has no GUID");
  if (registry) {
    auto issues = schema::validate_record(*registry, record);
    if (!issues.empty()) {
      throw RepoError(Kind::kInvalid, "invalid record: " + issues.front().message);
    }
  }
  const auto primary = record.primary_guid();
  WriteResult result;
  result.file = object_path(primary.algorithm(), primary.hex());
  const fs::path file = root / result.file;
  {
    // A previous write may have left a link where the primary file goes.
    std::error_code ec;
    if (fs::is_symlink(fs::symlink_status(file, ec))) fs::remove(file);
  }
  result.changed = write_file_atomic(file, stable_dump(to_json(record)));
  for (const auto& [alg, hex] : record.guids) {
    if (alg == primary.algorithm()) continue;
    const fs::path rel = object_path(alg, hex);
    // Shard directories are two levels below the root.
    const fs::path target = fs::path("..") / ".." / result.file;
    if (ensure_link(root / rel, target)) result.changed = true;
    result.links.push_back(rel);
  }
  return result;
}

ObjectRecord read_object(const fs::path& root, std::string_view algorithm,
                         std::string_view guid_hex) {
  const fs::path path = root / object_path(algorithm, guid_hex);
  return parse_object_file(resolve(path).file);
}

void write_dataset(const fs::path& root, const Dataset& dataset) {
  if (dataset.id.empty() || dataset.id.find('/') != std::string::npos) {
    throw RepoError(Kind::kInvalid, "invalid dataset id '" + dataset.id + "'");
  }
  write_file_atomic(dataset_file(root, dataset.id), stable_dump(to_json(dataset)));
}

Dataset load_dataset(const fs::path& root, std::string_view id) {
  const auto path = dataset_file(root, id);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw RepoError(Kind::kNotFound, "dataset not found: " + std::string(id));
  }
  Dataset d;
  try {
    d = dataset_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw RepoError(Kind::kMalformed, "malformed dataset " + path.string() + ": " + e.what());
  } catch (const RepoError&) {
    throw;
  } catch (const Error& e) {
    throw RepoError(Kind::kMalformed, "malformed dataset " + path.string() + ": " + e.what());
  }
  if (d.id != id) {
    throw RepoError(Kind::kMalformed, "dataset file " + path.string() + " declares id '" +
                                          d.id + "'");
  }
  const std::set<std::string> members(d.members.begin(), d.members.end());
  for (const auto& child_id : d.children) {
    if (child_id == d.id) throw RepoError(Kind::kInvalid, "dataset " + d.id + " contains itself");
    Dataset child;
    try {
      child = load_dataset(root, child_id);
    } catch (const RepoError& e) {
      if (e.kind() == Kind::kNotFound) {
        throw RepoError(Kind::kInvalid, "dataset " + d.id + ": missing child " + child_id);
      }
      throw;
    }
    for (const auto& m : child.members) {
      if (!members.contains(m)) {
        throw RepoError(Kind::kInvalid, "dataset " + d.id + " does not contain member " + m +
                                            " of child " + child_id);
      }
    }
  }
  return d;
}

std::vector<std::string> list_datasets(const fs::path& root) {
  std::vector<std::string> ids;
  std::error_code ec;
  const auto dir = root / kDatasetDir;
  if (!fs::is_directory(dir, ec)) return ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json" && entry.path().filename().string()[0] != '.') {
      ids.push_back(entry.path().stem().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

ScanResult scan(const fs::path& root) {
  ScanResult out;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    out.problems.push_back("repository root not found: " + root.string());
    return out;
  }
  std::vector<fs::path> algorithm_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    const auto name = entry.path().filename().string();
    if (entry.is_directory() && is_algorithm_tag(name) && !is_reserved(name)) {
      algorithm_dirs.push_back(entry.path());
    }
  }
  std::sort(algorithm_dirs.begin(), algorithm_dirs.end());
  for (const auto& alg_dir : algorithm_dirs) {
    std::vector<fs::path> files;
    for (const auto& shard : fs::directory_iterator(alg_dir)) {
      if (!shard.is_directory()) continue;
      for (const auto& f : fs::directory_iterator(shard.path())) {
        const auto name = f.path().filename().string();
        if (name.starts_with(".")) continue;
        files.push_back(f.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const fs::path rel = fs::relative(f, root);
      const auto alg = alg_dir.filename().string();
      const auto hex = f.parent_path().filename().string() + f.filename().string();
      if (!is_guid_hex(hex)) {
        out.problems.push_back("unexpected file " + rel.string());
        continue;
      }
      try {
        const auto resolved = resolve(f);
        if (resolved.via_link) {
          parse_object_file(resolved.file);
          out.links.push_back(rel);
        } else {
          auto record = parse_object_file(f);
          auto it = record.guids.find(alg);
          if (it == record.guids.end() || it->second != hex) {
            out.problems.push_back("object file " + rel.string() +
                                   " does not carry its own GUID");
          }
          out.objects.push_back({rel, std::move(record)});
        }
      } catch (const RepoError& e) {
        out.problems.push_back(e.what());
      }
    }
  }
  return out;
}

WriteLock::WriteLock(const fs::path& root) {
  fs::create_directories(root / kStateDir);
  const auto path = (root / kStateDir / "lock").string();
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
  if (fd_ < 0) throw RepoError(Kind::kIo, "cannot open lock file " + path);
  if (::flock(fd_, LOCK_EX) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw RepoError(Kind::kIo, "cannot lock " + path);
  }
}

WriteLock::~WriteLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

}  // namespace zoo::repo
