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

#ifndef VECSBM_GRAPH_HPP_
#define VECSBM_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vecsbm {

using NodeId = std::uint32_t;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Edge {
  NodeId u;
  NodeId v;
  double weight = 1.0;
};

// Undirected graph in compressed sparse row form. Every edge {u,v} is stored
// in both adjacency rows with the same weight; there are no self-loops and no
// parallel edges. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  // Builds from an edge list. Self-loops are dropped; parallel edges (in
  // either orientation) collapse to one edge carrying the maximum weight.
  // Throws std::invalid_argument on out-of-range ids or non-positive weights.
  static Graph from_edges(NodeId num_nodes, std::span<const Edge> edges);

  NodeId num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return targets_.size() / 2; }
  bool weighted() const { return weighted_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::span<const double> weights(NodeId v) const {
    return {weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  double weighted_degree(NodeId v) const;

  // Each undirected edge once, with u < v, ordered by (u, v).
  std::vector<Edge> edges() const;

  bool is_symmetric() const;
  std::size_t num_isolated() const;

 private:
  NodeId num_nodes_ = 0;
  bool weighted_ = false;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<double> weights_;
};

// Community assignment with labels in {1..K}.
class LabelVector {
 public:
  LabelVector() = default;
  // Throws std::invalid_argument if any label is outside {1..K}.
  LabelVector(std::vector<int> labels, int num_communities);
  // K inferred as the maximum label.
  explicit LabelVector(std::vector<int> labels);

  std::size_t size() const { return labels_.size(); }
  int num_communities() const { return k_; }
  int operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<int>& values() const { return labels_; }

  std::vector<std::size_t> community_sizes() const;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

// Dense 0..n-1 remapping of the node tokens found in an input file.
struct NodeIdMap {
  std::vector<std::string> tokens;  // dense id -> original token

  std::size_t size() const { return tokens.size(); }
};

struct LoadedGraph {
  Graph graph;
  NodeIdMap ids;
};

// Reads whitespace-separated "src dst [weight]" lines ('#' and '%' start
// comments). If every token is a nonnegative integer the dense ids follow
// integer order, otherwise first appearance. With symmetrize off, a directed
// pair must appear in both orientations to form an edge.
LoadedGraph load_edge_list(const std::filesystem::path& path,
                           bool symmetrize = true);
LoadedGraph parse_edge_list(const std::string& text, bool symmetrize = true);

void write_edge_list(const std::filesystem::path& path, const Graph& g);
void write_id_map(const std::filesystem::path& path, const NodeIdMap& ids);

// One integer per line, line index = node id. Raw values are remapped to
// {1..K} in increasing order (so 0/1 files become 1/2).
LabelVector parse_labels(const std::string& text);
LabelVector load_labels(const std::filesystem::path& path);
// Two-column "token label" file keyed by the tokens of an edge list.
LabelVector load_labels(const std::filesystem::path& path,
                        const NodeIdMap& ids);
void write_labels(const std::filesystem::path& path, const LabelVector& labels);

// Unweighted degree -> number of nodes with that degree.
std::map<std::size_t, std::size_t> degree_distribution(const Graph& g);

// Induced subgraph on the largest connected component (ties: the component
// containing the smallest node id). `kept` receives the original ids.
Graph largest_component(const Graph& g, std::vector<NodeId>* kept = nullptr);

// Connected component index per node, components numbered from 0 in order of
// their smallest node.
std::vector<NodeId> connected_components(const Graph& g,
                                         NodeId* num_components = nullptr);

}  // namespace vecsbm

#endif  // VECSBM_GRAPH_HPP_
