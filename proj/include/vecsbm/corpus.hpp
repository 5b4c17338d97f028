// Copyright 2026 The vecsbm Authors.
//
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

#ifndef VECSBM_CORPUS_HPP_
#define VECSBM_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "vecsbm/graph.hpp"
#include "vecsbm/random.hpp"

namespace vecsbm {

// Random-walk "sentences". Walks are stored back to back; walk number
// t * n + s is the t-th round's walk for the s-th node of that round's
// shuffled start order.
class WalkCorpus {
 public:
  WalkCorpus() = default;
  WalkCorpus(NodeId num_nodes, int walks_per_node, int walk_length)
      : num_nodes_(num_nodes), r_(walks_per_node), length_(walk_length) {}

  NodeId num_nodes() const { return num_nodes_; }
  int walks_per_node() const { return r_; }
  int walk_length() const { return length_; }

  std::size_t num_walks() const { return offsets_.size() - 1; }
  std::span<const NodeId> walk(std::size_t i) const {
    return {nodes_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::size_t total_tokens() const { return nodes_.size(); }

  void add_walk(std::span<const NodeId> walk);

 private:
  NodeId num_nodes_ = 0;
  int r_ = 0;
  int length_ = 0;
  std::vector<NodeId> nodes_;
  std::vector<std::size_t> offsets_{0};
};

// r walks of `length` nodes from every node. The next node is drawn among the
// current node's neighbors with probability proportional to edge weight. A
// walk stops early only at an isolated node. Each walk has its own RNG stream,
// so the result does not depend on `threads`.
WalkCorpus generate_walks(const Graph& g, int walks_per_node, int length,
                          std::uint64_t seed, int threads = 1);

struct PairCount {
  NodeId first;
  NodeId second;
  std::uint64_t count;

  friend bool operator==(const PairCount&, const PairCount&) = default;
};

// Sparse skip-bigram counts n+_ij and n-_ij, sorted by (first, second).
struct PairCounts {
  NodeId num_nodes = 0;
  std::vector<PairCount> positive;
  std::vector<PairCount> negative;
  std::vector<std::uint64_t> unigram;

  std::uint64_t total_positive() const;
  std::uint64_t total_negative() const;
};

// Ordered pairs (i, j) for every occurrence of i and every j within +-w
// positions of it in the same walk.
PairCounts positive_pairs(const WalkCorpus& corpus, int window, int threads = 1);

// For each positive occurrence (i, j), m pairs (i, j_k) with j_k drawn i.i.d.
// from unigram^exponent. Replaces any existing negatives.
void sample_negatives(PairCounts& pc, int m, std::uint64_t seed,
                      double exponent = 1.0);

// Normalized unigram^exponent sampling table. Throws if every count is zero.
AliasTable negative_table(std::span<const std::uint64_t> unigram,
                          double exponent);

void write_walks(const std::filesystem::path& path, const WalkCorpus& corpus);
WalkCorpus read_walks(const std::filesystem::path& path, NodeId num_nodes = 0);
void write_pair_counts(const std::filesystem::path& path,
                       std::span<const PairCount> counts);
std::vector<PairCount> read_pair_counts(const std::filesystem::path& path);

}  // namespace vecsbm

#endif  // VECSBM_CORPUS_HPP_
