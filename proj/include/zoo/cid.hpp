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

#include <span>
#include <string>
#include <string_view>

// Citable identifiers: "Z" + hex prefix of a GUID in groups of four + "+" +
// XOR checksum digit, e.g. Zc74c-6028-a25a+8.
namespace zoo::cid {

inline constexpr std::size_t kMinPrefix = 12;

struct Cid {
  std::string prefix;  // lowercase hex, length >= 12, multiple of 4
  char checksum = '0';

  std::string render() const;
  friend bool operator==(const Cid&, const Cid&) = default;
};

char checksum_of(std::string_view hex_digits);

Cid cid_from_guid(std::string_view guid_hex, std::size_t prefix_len = kMinPrefix);

// Accepts any case, with or without hyphens; throws CidError.
Cid parse_cid(std::string_view text);

// Smallest admissible prefix length that no other GUID in the universe shares.
std::size_t resolve_prefix_length(std::string_view guid_hex,
                                  std::span<const std::string> universe);

bool looks_like_cid(std::string_view text);

}  // namespace zoo::cid
