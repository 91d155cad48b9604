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

#include <string>
#include <string_view>

#include "zoo/graph.hpp"

// graph6 / sparse6 line formats. Encoders never emit a header or newline;
// the decoder accepts an optional ">>graph6<<" / ">>sparse6<<" header and a
// trailing "\n" or "\r\n".
namespace zoo::codec {

enum class Format { kGraph6, kSparse6 };

struct GraphText {
  Format format;
  std::string payload;
};

// Detects the format from the first payload byte (':' means sparse6).
Graph decode(std::string_view line);
Graph decode(const GraphText& text);

GraphText encode_graph6(const Graph& g);
GraphText encode_sparse6(const Graph& g);
GraphText encode(const Graph& g, Format format);

// Number of bytes used by the vertex-count field: 1, 4 or 8.
std::size_t size_field_length(std::size_t n);
std::size_t graph6_length(std::size_t n);

}  // namespace zoo::codec
