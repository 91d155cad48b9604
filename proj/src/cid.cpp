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

#include "zoo/cid.hpp"

#include <algorithm>

#include "zoo/canon.hpp"
#include "zoo/error.hpp"

namespace zoo::cid {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void check_length(std::size_t len) {
  if (len < kMinPrefix || len > 64 || len % 4 != 0) {
    throw CidError(CidError::Kind::kBadLength,
                   "CID prefix length must be a multiple of 4 in [12, 64], got " +
                       std::to_string(len));
  }
}

}  // namespace

char checksum_of(std::string_view hex_digits) {
  int x = 0;
  for (char c : hex_digits) x ^= hex_value(c);
  return "0123456789abcdef"[x];
}

std::string Cid::render() const {
  std::string out = "Z";
  for (std::size_t i = 0; i < prefix.size(); i += 4) {
    if (i > 0) out.push_back('-');
    out.append(prefix, i, 4);
  }
  out.push_back('+');
  out.push_back(checksum);
  return out;
}

Cid cid_from_guid(std::string_view guid_hex, std::size_t prefix_len) {
  std::string hex(guid_hex);
  std::transform(hex.begin(), hex.end(), hex.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (!is_guid_hex(hex)) {
    throw CidError(CidError::Kind::kMalformed, "not a 64-digit hex GUID");
  }
  check_length(prefix_len);
  Cid c;
  c.prefix = hex.substr(0, prefix_len);
  c.checksum = checksum_of(c.prefix);
  return c;
}

Cid parse_cid(std::string_view text) {
  if (text.empty() || (text.front() != 'Z' && text.front() != 'z')) {
    throw CidError(CidError::Kind::kMalformed, "CID must start with 'Z'");
  }
  const auto plus = text.find('+');
  if (plus == std::string_view::npos || plus + 2 != text.size()) {
    throw CidError(CidError::Kind::kMalformed,
                   "CID must end with '+' and one checksum digit");
  }
  std::string prefix;
  auto body = text.substr(1, plus - 1);
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '-') {
      if (i == 0 || i + 1 == body.size() || body[i + 1] == '-') {
        throw CidError(CidError::Kind::kMalformed, "misplaced hyphen in CID");
      }
      continue;
    }
    if (hex_value(c) < 0) {
      throw CidError(CidError::Kind::kMalformed,
                     std::string("invalid character '") + c + "' in CID");
    }
    prefix.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  check_length(prefix.size());
  const char given = static_cast<char>(
      std::tolower(static_cast<unsigned char>(text.back())));
  if (hex_value(given) < 0) {
    throw CidError(CidError::Kind::kMalformed, "checksum must be a hex digit");
  }
  const char expected = checksum_of(prefix);
  if (given != expected) {
    throw CidError(CidError::Kind::kChecksumMismatch,
                   std::string("checksum mismatch: expected '") + expected +
                       "', got '" + given + "'");
  }
  return Cid{prefix, given};
}

std::size_t resolve_prefix_length(std::string_view guid_hex,
                                  std::span<const std::string> universe) {
  const std::string self(guid_hex);
  const auto copies = std::count(universe.begin(), universe.end(), self);
  if (copies == 0) throw Error("GUID is not in the universe");
  if (copies > 1) throw Error("duplicate GUID in universe");
  std::size_t longest_shared = 0;
  for (const auto& other : universe) {
    if (other == self) continue;
    auto [a, b] = std::mismatch(self.begin(), self.end(), other.begin(), other.end());
    longest_shared = std::max<std::size_t>(longest_shared, a - self.begin());
  }
  std::size_t len = kMinPrefix;
  while (len <= longest_shared) len += 4;
  if (len > 64) throw Error("no unique CID prefix exists");
  return len;
}

bool looks_like_cid(std::string_view text) {
  return !text.empty() && (text.front() == 'Z' || text.front() == 'z') &&
         text.find('+') != std::string_view::npos;
}

}  // namespace zoo::cid
