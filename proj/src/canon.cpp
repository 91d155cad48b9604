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

#include "zoo/canon.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>

#include "zoo/error.hpp"

namespace zoo {

namespace {

// Ordered partition of the vertex set. Cells are contiguous ranges of
// `elems`; a cell is named by the position of its first element.
struct Partition {
  std::vector<Vertex> elems;
  std::vector<std::uint32_t> pos;         // vertex -> index in elems
  std::vector<std::uint32_t> cell_start;  // vertex -> start of its cell
  std::vector<std::uint32_t> cell_end;    // start -> one past the end
  std::size_t cells = 0;

  explicit Partition(std::size_t n)
      : elems(n), pos(n), cell_start(n, 0), cell_end(n, 0) {
    std::iota(elems.begin(), elems.end(), Vertex{0});
    std::iota(pos.begin(), pos.end(), std::uint32_t{0});
    if (n > 0) {
      cell_end[0] = static_cast<std::uint32_t>(n);
      cells = 1;
    }
  }

  bool discrete() const noexcept { return cells == elems.size(); }
  std::uint32_t size_of(std::uint32_t start) const {
    return cell_end[start] - start;
  }
};

using Trace = std::vector<std::uint32_t>;

class Refiner {
 public:
  explicit Refiner(const Graph& g) : g_(g), count_(g.order(), 0) {}

  // Refines p until equitable with respect to the queued splitter cells,
  // appending an isomorphism-invariant record of every split to trace.
  void refine(Partition& p, std::deque<std::uint32_t> queue, Trace& trace) {
    const std::size_t n = g_.order();
    std::vector<bool> queued(n, false);
    for (auto s : queue) queued[s] = true;
    std::vector<Vertex> touched;
    std::vector<std::uint32_t> touched_cells;
    while (!queue.empty() && !p.discrete()) {
      const std::uint32_t s = queue.front();
      queue.pop_front();
      queued[s] = false;
      touched.clear();
      for (std::uint32_t i = s; i < p.cell_end[s]; ++i) {
        for (Vertex y : g_.neighbours(p.elems[i])) {
          if (count_[y]++ == 0) touched.push_back(y);
        }
      }
      touched_cells.clear();
      for (Vertex y : touched) touched_cells.push_back(p.cell_start[y]);
      std::sort(touched_cells.begin(), touched_cells.end());
      touched_cells.erase(
          std::unique(touched_cells.begin(), touched_cells.end()),
          touched_cells.end());
      trace.push_back(0xFFFFFFFFu);
      trace.push_back(s);
      for (std::uint32_t c : touched_cells) split_cell(p, c, queued, queue, trace);
      for (Vertex y : touched) count_[y] = 0;
    }
  }

 private:
  void split_cell(Partition& p, std::uint32_t c, std::vector<bool>& queued,
                  std::deque<std::uint32_t>& queue, Trace& trace) {
    const std::uint32_t end = p.cell_end[c];
    if (end - c == 1) return;
    auto first = p.elems.begin() + c;
    auto last = p.elems.begin() + end;
    std::sort(first, last, [&](Vertex a, Vertex b) {
      return count_[a] != count_[b] ? count_[a] < count_[b] : a < b;
    });
    for (std::uint32_t t = c; t < end; ++t) p.pos[p.elems[t]] = t;
    trace.push_back(c);
    if (count_[*first] == count_[*(last - 1)]) {
      trace.push_back(count_[*first]);
      return;
    }
    std::vector<std::uint32_t> starts;
    std::uint32_t i = c;
    while (i < end) {
      std::uint32_t j = i;
      const auto k = count_[p.elems[i]];
      while (j < end && count_[p.elems[j]] == k) ++j;
      starts.push_back(i);
      trace.push_back(k);
      trace.push_back(j - i);
      for (std::uint32_t t = i; t < j; ++t) p.cell_start[p.elems[t]] = i;
      p.cell_end[i] = j;
      i = j;
    }
    p.cells += starts.size() - 1;
    if (queued[c]) {
      for (std::size_t f = 1; f < starts.size(); ++f) {
        queued[starts[f]] = true;
        queue.push_back(starts[f]);
      }
    } else {
      std::size_t largest = 0;
      for (std::size_t f = 1; f < starts.size(); ++f) {
        if (p.size_of(starts[f]) > p.size_of(starts[largest])) largest = f;
      }
      for (std::size_t f = 0; f < starts.size(); ++f) {
        if (f == largest) continue;
        queued[starts[f]] = true;
        queue.push_back(starts[f]);
      }
    }
  }

  const Graph& g_;
  std::vector<std::uint32_t> count_;
};

// Adjacency of the graph relabelled by a discrete partition, in graph6 bit
// order (column-major upper triangle).
using AdjacencyBits = std::vector<std::uint64_t>;

AdjacencyBits leaf_bits(const Graph& g, const Partition& p) {
  const std::size_t n = g.order();
  const std::size_t total = n < 2 ? 0 : n * (n - 1) / 2;
  AdjacencyBits bits((total + 63) / 64, 0);
  for (const auto& [u, v] : g.edges()) {
    std::size_t i = p.pos[u];
    std::size_t j = p.pos[v];
    if (i > j) std::swap(i, j);
    const std::size_t index = j * (j - 1) / 2 + i;
    // Most significant bit first so that word comparison is lexicographic.
    bits[index / 64] |= std::uint64_t{1} << (63 - index % 64);
  }
  return bits;
}

struct Leaf {
  std::vector<Vertex> lab;  // position -> vertex
  AdjacencyBits bits;
  std::vector<Vertex> path;
  std::vector<Trace> traces;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
  }
  Vertex find(Vertex x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<Vertex> parent_;
};

class Search {
 public:
  explicit Search(const Graph& g) : g_(g), refiner_(g) {}

  CanonicalForm run() {
    const std::size_t n = g_.order();
    Partition root(n);
    Trace trace;
    if (n > 0) refiner_.refine(root, {0}, trace);
    traces_.push_back(trace);
    state_.push_back(Cmp::kEqual);
    explore(root, 0);

    CanonicalForm out;
    out.permutation.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      out.permutation[best_->lab[i]] = static_cast<Vertex>(i);
    }
    out.relabelled = g_.relabelled(out.permutation);
    out.aut_generators = std::move(generators_);
    return out;
  }

 private:
  enum class Cmp { kLess, kEqual, kGreater };

  static Cmp compare(const Trace& a, const Trace& b) {
    if (a == b) return Cmp::kEqual;
    return a < b ? Cmp::kLess : Cmp::kGreater;
  }

  static std::size_t common_prefix(const std::vector<Vertex>& a,
                                   const std::vector<Vertex>& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
  }

  void add_automorphism(const std::vector<Vertex>& from,
                        const std::vector<Vertex>& to) {
    Permutation gamma(g_.order());
    bool identity = true;
    for (std::size_t i = 0; i < from.size(); ++i) {
      gamma[from[i]] = to[i];
      identity &= from[i] == to[i];
    }
    if (identity) return;
    if (std::find(generators_.begin(), generators_.end(), gamma) ==
        generators_.end()) {
      generators_.push_back(std::move(gamma));
    }
  }

  // Returns the depth the search should resume at; a value below `depth`
  // abandons this node.
  std::size_t leaf(const Partition& p, std::size_t depth) {
    Leaf current{p.elems, leaf_bits(g_, p), path_, traces_};
    if (!first_) {
      first_ = current;
      best_ = std::move(current);
      return depth;
    }
    if (eq_first_.back() && current.bits == first_->bits) {
      add_automorphism(first_->lab, current.lab);
      return common_prefix(path_, first_->path);
    }
    const Cmp state = state_.back();
    if (state == Cmp::kEqual) {
      if (current.bits == best_->bits) {
        add_automorphism(best_->lab, current.lab);
        return common_prefix(path_, best_->path);
      }
      if (current.bits < best_->bits) set_best(std::move(current), depth);
    } else if (state == Cmp::kLess) {
      set_best(std::move(current), depth);
    }
    return depth;
  }

  void set_best(Leaf leaf, std::size_t depth) {
    best_ = std::move(leaf);
    for (std::size_t d = 0; d <= depth; ++d) state_[d] = Cmp::kEqual;
  }

  std::size_t explore(const Partition& p, std::size_t depth) {
    if (p.discrete()) return leaf(p, depth);

    std::uint32_t target = 0;
    std::uint32_t target_size = UINT32_MAX;
    for (std::uint32_t s = 0; s < p.elems.size(); s = p.cell_end[s]) {
      const auto size = p.size_of(s);
      if (size > 1 && size < target_size) {
        target = s;
        target_size = size;
      }
    }
    std::vector<Vertex> candidates(p.elems.begin() + target,
                                   p.elems.begin() + p.cell_end[target]);
    std::sort(candidates.begin(), candidates.end());

    std::vector<Vertex> explored;
    for (Vertex v : candidates) {
      if (in_explored_orbit(v, explored)) continue;

      Partition child = p;
      const std::uint32_t vpos = child.pos[v];
      const Vertex other = child.elems[target];
      std::swap(child.elems[target], child.elems[vpos]);
      child.pos[other] = vpos;
      child.pos[v] = target;
      for (std::uint32_t i = target + 1; i < p.cell_end[target]; ++i) {
        child.cell_start[child.elems[i]] = target + 1;
      }
      child.cell_end[target + 1] = p.cell_end[target];
      child.cell_end[target] = target + 1;
      child.cells += 1;

      Trace trace{target};
      refiner_.refine(child, {target}, trace);

      const bool eq_first =
          eq_first_.back() &&
          (!first_ || (depth + 1 < first_->traces.size() &&
                       trace == first_->traces[depth + 1]));
      Cmp state = state_.back();
      if (first_ && state == Cmp::kEqual) {
        state = depth + 1 < best_->traces.size()
                    ? compare(trace, best_->traces[depth + 1])
                    : Cmp::kGreater;
      }
      explored.push_back(v);
      if (first_ && !eq_first && state == Cmp::kGreater) continue;

      path_.push_back(v);
      traces_.push_back(std::move(trace));
      eq_first_.push_back(eq_first);
      state_.push_back(state);
      const std::size_t resume = explore(child, depth + 1);
      path_.pop_back();
      traces_.pop_back();
      eq_first_.pop_back();
      state_.pop_back();
      if (resume < depth) return resume;
    }
    return depth;
  }

  // True if v shares an orbit with an explored sibling under the subgroup
  // generated by known automorphisms fixing the current path pointwise.
  bool in_explored_orbit(Vertex v, const std::vector<Vertex>& explored) {
    if (explored.empty() || generators_.empty()) return false;
    UnionFind orbits(g_.order());
    bool any = false;
    for (const auto& gamma : generators_) {
      bool fixes = std::all_of(path_.begin(), path_.end(),
                               [&](Vertex x) { return gamma[x] == x; });
      if (!fixes) continue;
      any = true;
      for (Vertex x = 0; x < gamma.size(); ++x) orbits.unite(x, gamma[x]);
    }
    if (!any) return false;
    const Vertex root = orbits.find(v);
    return std::any_of(explored.begin(), explored.end(),
                       [&](Vertex u) { return orbits.find(u) == root; });
  }

  const Graph& g_;
  Refiner refiner_;
  std::vector<Vertex> path_;
  std::vector<Trace> traces_;
  std::vector<bool> eq_first_{true};
  std::vector<Cmp> state_;
  std::optional<Leaf> first_;
  std::optional<Leaf> best_;
  std::vector<Permutation> generators_;
};

}  // namespace

CanonicalForm canonical_form(const Graph& g) { return Search(g).run(); }

std::string canonical_bytes(const Graph& g, codec::Format format) {
  return codec::encode(canonical_form(g).relabelled, format).payload;
}

bool is_guid_hex(std::string_view hex) {
  return hex.size() == 64 &&
         std::all_of(hex.begin(), hex.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

bool is_algorithm_tag(std::string_view tag) {
  return !tag.empty() && std::all_of(tag.begin(), tag.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Guid::Guid(std::string algorithm, std::string hex)
    : algorithm_(std::move(algorithm)), hex_(std::move(hex)) {
  std::transform(hex_.begin(), hex_.end(), hex_.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (!is_algorithm_tag(algorithm_)) {
    throw Error("invalid GUID algorithm tag '" + algorithm_ + "'");
  }
  if (!is_guid_hex(hex_)) throw Error("invalid GUID hex '" + hex_ + "'");
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

Guid guid(const Graph& g) {
  return Guid(std::string(kEngineGuidAlgorithm), sha256_hex(canonical_bytes(g)));
}

std::string apply_convention(std::string_view payload, HashConvention c,
                             codec::Format format) {
  switch (c) {
    case HashConvention::kRaw:
      return std::string(payload);
    case HashConvention::kTrailingNewline:
      return std::string(payload) + "\n";
    case HashConvention::kWithHeader:
      return (format == codec::Format::kSparse6 ? ">>sparse6<<" : ">>graph6<<") +
             std::string(payload);
  }
  return std::string(payload);
}

std::string_view convention_name(HashConvention c) {
  switch (c) {
    case HashConvention::kRaw:
      return "raw";
    case HashConvention::kTrailingNewline:
      return "trailing-newline";
    case HashConvention::kWithHeader:
      return "with-header";
  }
  return "raw";
}

CalibrationResult calibrate_hash_convention(std::string_view payload,
                                            std::string_view expected_hex) {
  CalibrationResult result;
  for (auto c : {HashConvention::kRaw, HashConvention::kTrailingNewline,
                 HashConvention::kWithHeader}) {
    auto digest = sha256_hex(apply_convention(payload, c));
    if (!result.reproduced && digest == expected_hex) {
      result.adopted = c;
      result.reproduced = true;
    }
    result.tried.emplace_back(c, std::move(digest));
  }
  return result;
}

}  // namespace zoo
