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

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "zoo/codec.hpp"
#include "zoo/graph.hpp"

namespace zoo {

struct CanonicalForm {
  Graph relabelled;
  // Maps each original vertex to its canonical position.
  Permutation permutation;
  // Automorphisms of the original graph found during the search; together
  // they generate the full automorphism group.
  std::vector<Permutation> aut_generators;
};

// Individualization-refinement canonical labelling.
CanonicalForm canonical_form(const Graph& g);

// Tag of GUIDs produced by this engine.
inline constexpr std::string_view kEngineGuidAlgorithm = "zoo_ir_sparse6";
// Tag under which upstream sparse6-based GUIDs are imported.
inline constexpr std::string_view kImportedGuidAlgorithm = "sha256_sparse6";

// sparse6 of the canonical form: no header, no newline.
std::string canonical_bytes(const Graph& g,
                            codec::Format format = codec::Format::kSparse6);

class Guid {
 public:
  // Throws Error unless hex is 64 hex digits (normalized to lowercase) and
  // algorithm is a non-empty [a-z0-9_] tag.
  Guid(std::string algorithm, std::string hex);

  const std::string& algorithm() const noexcept { return algorithm_; }
  const std::string& hex() const noexcept { return hex_; }
  std::string to_string() const { return algorithm_ + ":" + hex_; }

  friend auto operator<=>(const Guid&, const Guid&) = default;
  friend bool operator==(const Guid&, const Guid&) = default;

 private:
  std::string algorithm_;
  std::string hex_;
};

bool is_guid_hex(std::string_view hex);
bool is_algorithm_tag(std::string_view tag);

std::string sha256_hex(std::string_view bytes);

Guid guid(const Graph& g);

// Byte conventions an upstream producer may have hashed.
enum class HashConvention { kRaw, kTrailingNewline, kWithHeader };

std::string apply_convention(std::string_view payload, HashConvention c,
                             codec::Format format = codec::Format::kSparse6);

struct CalibrationResult {
  HashConvention adopted = HashConvention::kRaw;
  bool reproduced = false;
  std::vector<std::pair<HashConvention, std::string>> tried;
};

// Hashes payload under each convention and reports the first whose digest
// equals expected_hex; falls back to kRaw.
CalibrationResult calibrate_hash_convention(std::string_view payload,
                                            std::string_view expected_hex);

std::string_view convention_name(HashConvention c);

}  // namespace zoo
