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

#include "vecsbm/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "vecsbm/parallel.hpp"

namespace vecsbm {
namespace {

using CountMap = std::unordered_map<std::uint64_t, std::uint64_t>;

std::uint64_t key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::vector<PairCount> to_sorted(const CountMap& map) {
  std::vector<PairCount> out;
  out.reserve(map.size());
  for (const auto& [k, c] : map)
    out.push_back({static_cast<NodeId>(k >> 32),
                   static_cast<NodeId>(k & 0xffffffffu), c});
  std::sort(out.begin(), out.end(), [](const PairCount& a, const PairCount& b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  });
  return out;
}

// Per-node prefix sums of edge weights for weighted transitions.
class TransitionSampler {
 public:
  explicit TransitionSampler(const Graph& g) : g_(g) {
    if (!g.weighted()) return;
    cumulative_.reserve(2 * g.num_edges());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      double run = 0.0;
      for (double w : g.weights(v)) cumulative_.push_back(run += w);
    }
    offsets_.resize(g.num_nodes() + 1, 0);
    for (NodeId v = 0; v < g.num_nodes(); ++v)
      offsets_[v + 1] = offsets_[v] + g.degree(v);
  }

  NodeId next(NodeId v, Rng& rng) const {
    const auto nb = g_.neighbors(v);
    if (!g_.weighted()) {
      const auto k = static_cast<std::size_t>(
          (static_cast<unsigned __int128>(rng() >> 11) * nb.size()) >> 53);
      return nb[k];
    }
    const double* first = cumulative_.data() + offsets_[v];
    const double* last = first + nb.size();
    const double target = uniform01(rng) * last[-1];
    auto it = std::upper_bound(first, last, target);
    if (it == last) --it;
    return nb[static_cast<std::size_t>(it - first)];
  }

 private:
  const Graph& g_;
  std::vector<double> cumulative_;
  std::vector<std::size_t> offsets_;
};

}  // namespace

void WalkCorpus::add_walk(std::span<const NodeId> walk) {
  nodes_.insert(nodes_.end(), walk.begin(), walk.end());
  offsets_.push_back(nodes_.size());
}

WalkCorpus generate_walks(const Graph& g, int walks_per_node, int length,
                          std::uint64_t seed, int threads) {
  if (walks_per_node < 1 || length < 1)
    throw std::invalid_argument("walks per node and walk length must be >= 1");
  const NodeId n = g.num_nodes();
  const TransitionSampler sampler(g);

  // Start order: one shuffled permutation of the nodes per round.
  std::vector<NodeId> starts;
  starts.reserve(static_cast<std::size_t>(n) * walks_per_node);
  Rng order_rng = make_rng(seed, 0);
  std::vector<NodeId> perm(n);
  for (int t = 0; t < walks_per_node; ++t) {
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), order_rng);
    starts.insert(starts.end(), perm.begin(), perm.end());
  }

  const std::size_t total = starts.size();
  std::vector<NodeId> buffer(total * static_cast<std::size_t>(length));
  std::vector<int> lengths(total);
  parallel_chunks(total, threads, [&](std::size_t begin, std::size_t end,
                                      std::size_t) {
    for (std::size_t w = begin; w < end; ++w) {
      Rng rng = make_rng(seed, w + 1);
      NodeId* out = buffer.data() + w * static_cast<std::size_t>(length);
      NodeId cur = starts[w];
      out[0] = cur;
      int len = 1;
      while (len < length && g.degree(cur) > 0) {
        cur = sampler.next(cur, rng);
        out[len++] = cur;
      }
      lengths[w] = len;
    }
  });

  WalkCorpus corpus(n, walks_per_node, length);
  for (std::size_t w = 0; w < total; ++w)
    corpus.add_walk({buffer.data() + w * static_cast<std::size_t>(length),
                     static_cast<std::size_t>(lengths[w])});
  return corpus;
}

std::uint64_t PairCounts::total_positive() const {
  std::uint64_t s = 0;
  for (const auto& p : positive) s += p.count;
  return s;
}

std::uint64_t PairCounts::total_negative() const {
  std::uint64_t s = 0;
  for (const auto& p : negative) s += p.count;
  return s;
}

PairCounts positive_pairs(const WalkCorpus& corpus, int window, int threads) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  const std::size_t chunks =
      static_cast<std::size_t>(std::max(1, threads));
  std::vector<CountMap> maps(chunks);
  std::vector<std::vector<std::uint64_t>> unigrams(
      chunks, std::vector<std::uint64_t>(corpus.num_nodes(), 0));
  parallel_chunks(corpus.num_walks(), threads,
                  [&](std::size_t begin, std::size_t end, std::size_t c) {
                    auto& map = maps[c];
                    auto& uni = unigrams[c];
                    for (std::size_t w = begin; w < end; ++w) {
                      const auto walk = corpus.walk(w);
                      const auto len = static_cast<std::ptrdiff_t>(walk.size());
                      for (std::ptrdiff_t a = 0; a < len; ++a) {
                        ++uni[walk[a]];
                        const auto lo = std::max<std::ptrdiff_t>(0, a - window);
                        const auto hi = std::min<std::ptrdiff_t>(len - 1, a + window);
                        for (auto b = lo; b <= hi; ++b)
                          if (b != a) ++map[key(walk[a], walk[b])];
                      }
                    }
                  });
  for (std::size_t c = 1; c < chunks; ++c) {
    for (const auto& [k, v] : maps[c]) maps[0][k] += v;
    for (std::size_t i = 0; i < unigrams[c].size(); ++i)
      unigrams[0][i] += unigrams[c][i];
  }
  PairCounts pc;
  pc.num_nodes = corpus.num_nodes();
  pc.positive = to_sorted(maps[0]);
  pc.unigram = std::move(unigrams[0]);
  return pc;
}

AliasTable negative_table(std::span<const std::uint64_t> unigram,
                          double exponent) {
  std::vector<double> weights(unigram.size());
  for (std::size_t i = 0; i < unigram.size(); ++i)
    weights[i] = unigram[i] == 0
                     ? 0.0
                     : std::pow(static_cast<double>(unigram[i]), exponent);
  if (std::all_of(weights.begin(), weights.end(),
                  [](double w) { return w == 0.0; }))
    throw std::invalid_argument("empty corpus: no unigram counts");
  return AliasTable(weights);
}

void sample_negatives(PairCounts& pc, int m, std::uint64_t seed,
                      double exponent) {
  if (m < 0) throw std::invalid_argument("negatives per positive must be >= 0");
  pc.negative.clear();
  const AliasTable table = negative_table(pc.unigram, exponent);
  if (m == 0) return;
  Rng rng = make_rng(seed, 0x6e6567);
  CountMap map;
  for (const auto& p : pc.positive)
    for (std::uint64_t c = 0; c < p.count; ++c)
      for (int k = 0; k < m; ++k) ++map[key(p.first, table.sample(rng))];
  pc.negative = to_sorted(map);
}

void write_walks(const std::filesystem::path& path, const WalkCorpus& corpus) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t w = 0; w < corpus.num_walks(); ++w) {
    const auto walk = corpus.walk(w);
    for (std::size_t i = 0; i < walk.size(); ++i)
      out << (i ? " " : "") << walk[i];
    out << '\n';
  }
}

WalkCorpus read_walks(const std::filesystem::path& path, NodeId num_nodes) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::vector<NodeId>> walks;
  std::string line;
  std::size_t max_len = 0;
  NodeId max_id = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::vector<NodeId> walk;
    long long x;
    while (ss >> x) {
      if (x < 0) throw ParseError("negative node id", walks.size() + 1);
      walk.push_back(static_cast<NodeId>(x));
      max_id = std::max(max_id, walk.back());
    }
    if (!ss.eof()) throw ParseError("invalid node id", walks.size() + 1);
    if (walk.empty()) continue;
    max_len = std::max(max_len, walk.size());
    walks.push_back(std::move(walk));
  }
  if (num_nodes == 0) num_nodes = walks.empty() ? 0 : max_id + 1;
  if (!walks.empty() && max_id >= num_nodes)
    throw std::invalid_argument("walk references node beyond num_nodes");
  WalkCorpus corpus(num_nodes,
                    num_nodes ? static_cast<int>(walks.size() / num_nodes) : 0,
                    static_cast<int>(max_len));
  for (const auto& w : walks) corpus.add_walk(w);
  return corpus;
}

void write_pair_counts(const std::filesystem::path& path,
                       std::span<const PairCount> counts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& p : counts)
    out << p.first << ' ' << p.second << ' ' << p.count << '\n';
}

std::vector<PairCount> read_pair_counts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<PairCount> out;
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    std::istringstream ss(line);
    long long a, b, c;
    if (!(ss >> a >> b >> c) || a < 0 || b < 0 || c < 0) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError("expected \"i j count\"", ln);
    }
    out.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b),
                   static_cast<std::uint64_t>(c)});
  }
  return out;
}

}  // namespace vecsbm
