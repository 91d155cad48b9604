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

#include "zoo/codec.hpp"

#include <algorithm>

#include "zoo/error.hpp"

namespace zoo::codec {

namespace {

constexpr std::string_view kGraph6Header = ">>graph6<<";
constexpr std::string_view kSparse6Header = ">>sparse6<<";
constexpr std::size_t kMaxVertices = (std::size_t{1} << 36) - 1;

void append_size(std::string& out, std::size_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
  }
}

// Packs a bit sequence 6 bits per byte, most significant first.
class BitWriter {
 public:
  explicit BitWriter(std::string& out) : out_(out) {}
  void put(bool bit) {
    acc_ = static_cast<unsigned>((acc_ << 1) | (bit ? 1 : 0));
    if (++fill_ == 6) flush_byte();
  }
  void put_bits(std::size_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) put((value >> i) & 1);
  }
  std::size_t pending() const noexcept { return fill_; }
  std::size_t written() const noexcept { return written_; }
  // Pads the final partial byte with the given bit.
  void finish(bool pad) {
    while (fill_ != 0) put(pad);
  }

 private:
  void flush_byte() {
    out_.push_back(static_cast<char>(acc_ + 63));
    acc_ = 0;
    fill_ = 0;
    ++written_;
  }
  std::string& out_;
  unsigned acc_ = 0;
  unsigned fill_ = 0;
  std::size_t written_ = 0;
};

class BitReader {
 public:
  BitReader(std::string_view bytes, std::size_t base_offset)
      : bytes_(bytes), base_(base_offset) {}
  std::size_t remaining() const noexcept { return bytes_.size() * 6 - pos_; }
  bool get() {
    if (remaining() == 0) throw DecodeError("truncated bit stream", base_ + bytes_.size());
    auto byte = static_cast<unsigned>(bytes_[pos_ / 6]) - 63;
    bool bit = (byte >> (5 - pos_ % 6)) & 1;
    ++pos_;
    return bit;
  }
  std::size_t get_bits(unsigned width) {
    std::size_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | (get() ? 1 : 0);
    return v;
  }

 private:
  std::string_view bytes_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

// Parses N(n) starting at bytes[pos]; advances pos.
std::size_t read_size(std::string_view bytes, std::size_t& pos,
                      std::size_t base) {
  auto need = [&](std::size_t k) {
    if (pos + k > bytes.size()) {
      throw DecodeError("malformed vertex-count field", base + bytes.size());
    }
  };
  need(1);
  if (bytes[pos] != 126) return static_cast<std::size_t>(bytes[pos++] - 63);
  need(2);
  std::size_t width = 3;
  std::size_t start = pos + 1;
  if (bytes[pos + 1] == 126) {
    width = 6;
    start = pos + 2;
  }
  pos = start;
  need(width);
  std::size_t n = 0;
  for (std::size_t i = 0; i < width; ++i) {
    n = (n << 6) | static_cast<std::size_t>(bytes[pos++] - 63);
  }
  if (width == 3 && n <= 62) {
    throw DecodeError("malformed vertex-count field", base + start);
  }
  if (width == 6 && n <= 258047) {
    throw DecodeError("malformed vertex-count field", base + start);
  }
  return n;
}

unsigned sparse6_width(std::size_t n) {
  unsigned k = 1;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

Graph decode_graph6(std::string_view body, std::size_t base) {
  std::size_t pos = 0;
  std::size_t n = read_size(body, pos, base);
  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t need = (bits + 5) / 6;
  if (body.size() - pos < need) {
    throw DecodeError("truncated bit stream", base + body.size());
  }
  if (body.size() - pos > need) {
    throw DecodeError("trailing bytes after adjacency data", base + pos + need);
  }
  BitReader reader(body.substr(pos), base + pos);
  Graph g(n);
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      if (reader.get()) g.add_edge(i, j);
    }
  }
  return g;
}

Graph decode_sparse6(std::string_view body, std::size_t base) {
  std::size_t pos = 1;  // past ':'
  std::size_t n = read_size(body, pos, base);
  Graph g(n);
  if (n == 0) return g;
  const unsigned k = sparse6_width(n);
  BitReader reader(body.substr(pos), base + pos);
  std::size_t v = 0;
  while (reader.remaining() >= k + 1) {
    bool b = reader.get();
    std::size_t x = reader.get_bits(k);
    if (b) ++v;
    if (x >= n || v >= n) break;
    if (x > v) {
      v = x;
    } else {
      if (x == v) throw DecodeError("self-loop in sparse6 data", base + pos);
      g.add_edge(static_cast<Vertex>(x), static_cast<Vertex>(v));
    }
  }
  return g;
}

}  // namespace

std::size_t size_field_length(std::size_t n) {
  if (n <= 62) return 1;
  if (n <= 258047) return 4;
  return 8;
}

std::size_t graph6_length(std::size_t n) {
  const std::size_t bits = n < 2 ? 0 : n * (n - 1) / 2;
  return size_field_length(n) + (bits + 5) / 6;
}

Graph decode(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) {
    line.remove_suffix(1);
  }
  std::size_t base = 0;
  bool header_sparse = false;
  bool header_graph = false;
  if (line.starts_with(kSparse6Header)) {
    line.remove_prefix(kSparse6Header.size());
    base = kSparse6Header.size();
    header_sparse = true;
  } else if (line.starts_with(kGraph6Header)) {
    line.remove_prefix(kGraph6Header.size());
    base = kGraph6Header.size();
    header_graph = true;
  }
  if (line.empty()) throw DecodeError("empty graph text", base);
  const bool sparse = line.front() == ':';
  if ((header_sparse && !sparse) || (header_graph && sparse)) {
    throw DecodeError("payload does not match format header", base);
  }
  if (!sparse && line.front() == '&') {
    throw DecodeError("digraph6 is not supported", base);
  }
  const std::size_t first = sparse ? 1 : 0;
  for (std::size_t i = first; i < line.size(); ++i) {
    auto c = static_cast<unsigned char>(line[i]);
    if (c < 63 || c > 126) throw DecodeError("byte out of range 63..126", base + i);
  }
  return sparse ? decode_sparse6(line, base) : decode_graph6(line, base);
}

Graph decode(const GraphText& text) { return decode(std::string_view(text.payload)); }

GraphText encode_graph6(const Graph& g) {
  const std::size_t n = g.order();
  if (n > kMaxVertices) throw InvalidGraph("graph too large for graph6");
  GraphText out{Format::kGraph6, {}};
  out.payload.reserve(graph6_length(n));
  append_size(out.payload, n);
  BitWriter w(out.payload);
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) w.put(g.adjacent(i, j));
  }
  w.finish(false);
  return out;
}

GraphText encode_sparse6(const Graph& g) {
  const std::size_t n = g.order();
  if (n > kMaxVertices) throw InvalidGraph("graph too large for sparse6");
  GraphText out{Format::kSparse6, ":"};
  append_size(out.payload, n);
  if (n == 0) return out;
  const unsigned k = sparse6_width(n);

  // Edges ordered by (larger endpoint, smaller endpoint).
  std::vector<Edge> edges;
  edges.reserve(g.size());
  for (const auto& [u, v] : g.edges()) edges.emplace_back(v, u);
  std::sort(edges.begin(), edges.end());

  BitWriter w(out.payload);
  std::size_t total_bits = 0;
  auto put = [&](bool b, std::size_t x) {
    w.put(b);
    w.put_bits(x, k);
    total_bits += k + 1;
  };
  std::size_t current = 0;
  for (const auto& [v, u] : edges) {
    if (v == current) {
      put(false, u);
    } else if (v == current + 1) {
      current = v;
      put(true, u);
    } else {
      current = v;
      put(true, v);
      put(false, u);
    }
  }
  const std::size_t pad = (6 - total_bits % 6) % 6;
  // Padding with ones would read as an edge to n-1 in this corner case.
  if (k < 6 && n == (std::size_t{1} << k) && pad >= k && current < n - 1) {
    w.put(false);
  }
  w.finish(true);
  return out;
}

GraphText encode(const Graph& g, Format format) {
  return format == Format::kGraph6 ? encode_graph6(g) : encode_sparse6(g);
}

}  // namespace zoo::codec
