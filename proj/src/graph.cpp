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

#include "vecsbm/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace vecsbm {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Splits into lines, tolerating CRLF.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_comment(std::string_view line) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '#' || c == '%';
  }
  return true;  // blank
}

bool parse_uint(std::string_view s, std::uint64_t& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

std::uint64_t pair_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

Graph Graph::from_edges(NodeId num_nodes, std::span<const Edge> edges) {
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= num_nodes || e.v >= num_nodes)
      throw std::invalid_argument("edge endpoint out of range");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw std::invalid_argument("edge weights must be positive and finite");
    if (e.u == e.v) continue;
    canon.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
  }
  std::sort(canon.begin(), canon.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  // Collapse duplicates keeping the maximum weight.
  std::vector<Edge> unique;
  unique.reserve(canon.size());
  for (const Edge& e : canon) {
    if (!unique.empty() && unique.back().u == e.u && unique.back().v == e.v) {
      unique.back().weight = std::max(unique.back().weight, e.weight);
    } else {
      unique.push_back(e);
    }
  }

  Graph g;
  g.num_nodes_ = num_nodes;
  g.offsets_.assign(static_cast<std::size_t>(num_nodes) + 1, 0);
  for (const Edge& e : unique) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
    if (e.weight != 1.0) g.weighted_ = true;
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.targets_.resize(2 * unique.size());
  g.weights_.resize(2 * unique.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Sorted (u, v) input leaves every adjacency row sorted by neighbor id.
  for (const Edge& e : unique) {
    g.targets_[cursor[e.u]] = e.v;
    g.weights_[cursor[e.u]++] = e.weight;
    g.targets_[cursor[e.v]] = e.u;
    g.weights_[cursor[e.v]++] = e.weight;
  }
  return g;
}

double Graph::weighted_degree(NodeId v) const {
  double s = 0.0;
  for (double w : weights(v)) s += w;
  return s;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes_; ++u) {
    auto nb = neighbors(u);
    auto wt = weights(u);
    for (std::size_t k = 0; k < nb.size(); ++k)
      if (u < nb[k]) out.push_back({u, nb[k], wt[k]});
  }
  return out;
}

bool Graph::is_symmetric() const {
  std::unordered_map<std::uint64_t, double> seen;
  seen.reserve(targets_.size());
  for (NodeId u = 0; u < num_nodes_; ++u) {
    auto nb = neighbors(u);
    auto wt = weights(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] == u) return false;
      seen[pair_key(u, nb[k])] = wt[k];
    }
  }
  for (const auto& [key, w] : seen) {
    auto u = static_cast<NodeId>(key >> 32);
    auto v = static_cast<NodeId>(key & 0xffffffffu);
    auto it = seen.find(pair_key(v, u));
    if (it == seen.end() || it->second != w) return false;
  }
  return true;
}

std::size_t Graph::num_isolated() const {
  std::size_t count = 0;
  for (NodeId v = 0; v < num_nodes_; ++v) count += degree(v) == 0;
  return count;
}

LabelVector::LabelVector(std::vector<int> labels, int num_communities)
    : labels_(std::move(labels)), k_(num_communities) {
  if (k_ < 1) throw std::invalid_argument("number of communities must be >= 1");
  for (int l : labels_)
    if (l < 1 || l > k_)
      throw std::invalid_argument("label " + std::to_string(l) +
                                  " outside {1.." + std::to_string(k_) + "}");
}

LabelVector::LabelVector(std::vector<int> labels)
    : LabelVector(labels,
                  labels.empty() ? 1
                                 : *std::max_element(labels.begin(),
                                                     labels.end())) {}

std::vector<std::size_t> LabelVector::community_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k_), 0);
  for (int l : labels_) ++sizes[static_cast<std::size_t>(l - 1)];
  return sizes;
}

LoadedGraph parse_edge_list(const std::string& text, bool symmetrize) {
  struct RawEdge {
    std::string_view a, b;
    double w;
  };
  std::vector<RawEdge> raw;
  bool all_integer = true;
  // "# nodes N" declares ids 0..N-1, so isolated nodes survive a round trip.
  std::uint64_t declared = 0;
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (is_comment(lines[ln])) {
      auto tok = split_ws(lines[ln]);
      if (tok.size() == 3 && tok[0] == "#" && tok[1] == "nodes" &&
          !parse_uint(tok[2], declared))
        throw ParseError("invalid node count", ln + 1);
      continue;
    }
    auto tok = split_ws(lines[ln]);
    if (tok.size() < 2 || tok.size() > 3)
      throw ParseError("expected \"src dst [weight]\"", ln + 1);
    double w = 1.0;
    if (tok.size() == 3 && (!parse_double(tok[2], w) || !(w > 0.0) ||
                            !std::isfinite(w)))
      throw ParseError("invalid weight '" + std::string(tok[2]) + "'", ln + 1);
    std::uint64_t dummy;
    all_integer = all_integer && parse_uint(tok[0], dummy) &&
                  parse_uint(tok[1], dummy);
    raw.push_back({tok[0], tok[1], w});
  }
  if (raw.empty() && declared == 0)
    throw std::runtime_error("edge list contains no edges");

  LoadedGraph out;
  std::unordered_map<std::string_view, NodeId> index;
  if (all_integer) {
    std::set<std::uint64_t> ids;
    for (std::uint64_t x = 0; x < declared; ++x) ids.insert(x);
    for (const auto& e : raw) {
      std::uint64_t x;
      parse_uint(e.a, x);
      ids.insert(x);
      parse_uint(e.b, x);
      ids.insert(x);
    }
    std::unordered_map<std::uint64_t, NodeId> dense;
    for (std::uint64_t x : ids) {
      dense.emplace(x, static_cast<NodeId>(out.ids.tokens.size()));
      out.ids.tokens.push_back(std::to_string(x));
    }
    for (const auto& e : raw) {
      std::uint64_t x;
      parse_uint(e.a, x);
      index.emplace(e.a, dense.at(x));
      parse_uint(e.b, x);
      index.emplace(e.b, dense.at(x));
    }
  } else {
    for (const auto& e : raw) {
      for (auto t : {e.a, e.b}) {
        if (index.emplace(t, static_cast<NodeId>(out.ids.tokens.size())).second)
          out.ids.tokens.emplace_back(t);
      }
    }
  }

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  if (symmetrize) {
    for (const auto& e : raw) edges.push_back({index[e.a], index[e.b], e.w});
  } else {
    // Keep only reciprocated pairs.
    std::unordered_map<std::uint64_t, double> directed;
    for (const auto& e : raw) {
      auto& w = directed[pair_key(index[e.a], index[e.b])];
      w = std::max(w, e.w);
    }
    for (const auto& [key, w] : directed) {
      auto u = static_cast<NodeId>(key >> 32);
      auto v = static_cast<NodeId>(key & 0xffffffffu);
      auto it = directed.find(pair_key(v, u));
      if (u < v && it != directed.end())
        edges.push_back({u, v, std::max(w, it->second)});
    }
  }
  out.graph = Graph::from_edges(static_cast<NodeId>(out.ids.size()), edges);
  return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path, bool symmetrize) {
  return parse_edge_list(read_file(path), symmetrize);
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  char buf[64];
  out << "# nodes " << g.num_nodes() << '\n';
  for (const Edge& e : g.edges()) {
    if (g.weighted()) {
      auto [p, ec] = std::to_chars(buf, buf + sizeof buf, e.weight);
      out << e.u << ' ' << e.v << ' ' << std::string_view(buf, p - buf) << '\n';
    } else {
      out << e.u << ' ' << e.v << '\n';
    }
  }
}

void write_id_map(const std::filesystem::path& path, const NodeIdMap& ids) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t i = 0; i < ids.size(); ++i)
    out << i << ' ' << ids.tokens[i] << '\n';
}

namespace {

LabelVector densify_labels(const std::vector<long long>& raw) {
  std::set<long long> distinct(raw.begin(), raw.end());
  std::unordered_map<long long, int> rank;
  int next = 1;
  for (long long x : distinct) rank[x] = next++;
  std::vector<int> labels;
  labels.reserve(raw.size());
  for (long long x : raw) labels.push_back(rank[x]);
  return LabelVector(std::move(labels),
                     std::max(1, static_cast<int>(distinct.size())));
}

bool parse_ll(std::string_view s, long long& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

LabelVector parse_labels(const std::string& text) {
  std::vector<long long> raw;
  auto lines = split_lines(text);
  // Trailing newline produces one empty final line.
  while (!lines.empty() && split_ws(lines.back()).empty()) lines.pop_back();
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto tok = split_ws(lines[ln]);
    long long x;
    if (tok.size() != 1 || !parse_ll(tok[0], x))
      throw ParseError("expected one integer label", ln + 1);
    raw.push_back(x);
  }
  if (raw.empty()) throw std::runtime_error("label file is empty");
  return densify_labels(raw);
}

LabelVector load_labels(const std::filesystem::path& path) {
  return parse_labels(read_file(path));
}

LabelVector load_labels(const std::filesystem::path& path,
                        const NodeIdMap& ids) {
  std::unordered_map<std::string, NodeId> index;
  for (std::size_t i = 0; i < ids.size(); ++i)
    index.emplace(ids.tokens[i], static_cast<NodeId>(i));
  std::vector<long long> raw(ids.size(), 0);
  std::vector<bool> seen(ids.size(), false);
  const std::string text = read_file(path);
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (is_comment(lines[ln])) continue;
    auto tok = split_ws(lines[ln]);
    long long x;
    if (tok.size() != 2 || !parse_ll(tok[1], x))
      throw ParseError("expected \"node label\"", ln + 1);
    auto it = index.find(std::string(tok[0]));
    if (it == index.end()) continue;  // node absent from the graph
    raw[it->second] = x;
    seen[it->second] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw std::runtime_error("no label for node '" + ids.tokens[i] + "'");
  return densify_labels(raw);
}

void write_labels(const std::filesystem::path& path, const LabelVector& labels) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (int l : labels.values()) out << l << '\n';
}

std::map<std::size_t, std::size_t> degree_distribution(const Graph& g) {
  std::map<std::size_t, std::size_t> hist;
  for (NodeId v = 0; v < g.num_nodes(); ++v) ++hist[g.degree(v)];
  return hist;
}

std::vector<NodeId> connected_components(const Graph& g,
                                         NodeId* num_components) {
  constexpr NodeId kUnset = ~NodeId{0};
  std::vector<NodeId> comp(g.num_nodes(), kUnset);
  std::vector<NodeId> stack;
  NodeId next = 0;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (comp[v] == kUnset) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  if (num_components) *num_components = next;
  return comp;
}

Graph largest_component(const Graph& g, std::vector<NodeId>* kept) {
  NodeId count = 0;
  const auto comp = connected_components(g, &count);
  std::vector<std::size_t> sizes(count, 0);
  for (NodeId c : comp) ++sizes[c];
  const auto best = static_cast<NodeId>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<NodeId> remap(g.num_nodes(), ~NodeId{0});
  std::vector<NodeId> original;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (comp[v] == best) {
      remap[v] = static_cast<NodeId>(original.size());
      original.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (comp[e.u] == best) edges.push_back({remap[e.u], remap[e.v], e.weight});
  if (kept) *kept = original;
  return Graph::from_edges(static_cast<NodeId>(original.size()), edges);
}

}  // namespace vecsbm
