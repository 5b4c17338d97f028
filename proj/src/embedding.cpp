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

#include "vecsbm/embedding.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <Eigen/SVD>
#include <json.hpp>

#include "vecsbm/parallel.hpp"

namespace vecsbm {

std::string to_string(VectorMode m) {
  return m == VectorMode::kTied ? "tied" : "dual";
}

VectorMode parse_vector_mode(const std::string& s) {
  if (s == "tied") return VectorMode::kTied;
  if (s == "dual") return VectorMode::kDual;
  throw std::invalid_argument("unknown vector mode '" + s + "'");
}

void TrainConfig::validate() const {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (negatives < 0) throw std::invalid_argument("negatives must be >= 0");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(initial_step > 0.0) || !(final_step > 0.0) ||
      final_step > initial_step)
    throw std::invalid_argument("need 0 < final_step <= initial_step");
  if (!(init_scale >= 0.0)) throw std::invalid_argument("init_scale must be >= 0");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

std::uint64_t positive_events(const WalkCorpus& corpus, int window) {
  std::uint64_t total = 0;
  const auto w = static_cast<std::int64_t>(window);
  for (std::size_t i = 0; i < corpus.num_walks(); ++i) {
    const auto len = static_cast<std::int64_t>(corpus.walk(i).size());
    for (std::int64_t a = 0; a < len; ++a)
      total += static_cast<std::uint64_t>(std::min(len - 1, a + w) -
                                          std::max<std::int64_t>(0, a - w));
  }
  return total;
}

template <typename Scalar>
SkipGramModel<Scalar> initial_model(NodeId num_nodes, const TrainConfig& cfg) {
  cfg.validate();
  SkipGramModel<Scalar> model;
  model.mode = cfg.mode;
  const int d = cfg.dimension;
  model.center.resize(num_nodes, d);
  Rng rng = make_rng(cfg.seed, 0x696e6974);
  const double half = cfg.init_scale / d;
  for (Eigen::Index i = 0; i < model.center.size(); ++i)
    model.center.data()[i] = static_cast<Scalar>((2.0 * uniform01(rng) - 1.0) * half);
  // Context vectors start at zero, as in the reference word-embedding code.
  if (cfg.mode == VectorMode::kDual)
    model.context = EmbeddingMatrix<Scalar>::Zero(num_nodes, d);
  return model;
}

namespace {

// Logistic function tabulated on [-30, 30] with linear interpolation
// (absolute error below 3e-6); saturates outside.
class LogisticTable {
 public:
  static constexpr int kSize = 1 << 12;
  static constexpr double kLimit = 30.0;

  LogisticTable() {
    for (int i = 0; i <= kSize; ++i)
      values_[i] = static_cast<float>(logistic(-kLimit + 2.0 * kLimit * i / kSize));
  }

  template <typename Scalar>
  Scalar operator()(Scalar x) const {
    // Written so NaN saturates instead of indexing; callers detect NaN.
    if (!(x > Scalar(-kLimit))) return Scalar(0);
    if (x >= Scalar(kLimit)) return Scalar(1);
    const Scalar pos = (x + Scalar(kLimit)) * Scalar(kSize / (2.0 * kLimit));
    const int i = std::min(static_cast<int>(pos), kSize - 1);
    const Scalar frac = pos - static_cast<Scalar>(i);
    return static_cast<Scalar>(values_[i]) +
           frac * static_cast<Scalar>(values_[i + 1] - values_[i]);
  }

 private:
  std::array<float, kSize + 1> values_;
};

const LogisticTable& logistic_table() {
  static const LogisticTable table;
  return table;
}

// One positive pair and its negatives. `ctx` aliases `in` in tied mode.
// Plain loops: this file is compiled with reassociation enabled so the dot
// products vectorize. Returns the sum of the inner products so the caller
// can detect divergence without a test per pair.
template <typename Scalar>
inline Scalar skip_gram_step(Scalar* in, Scalar* ctx, int d, NodeId center,
                           NodeId context, int negatives,
                           const AliasTable& table, const LogisticTable& sigma,
                           FastRng& rng, Scalar step,
                           Scalar* __restrict input, Scalar* __restrict accum) {
  Scalar* u = in + static_cast<std::size_t>(center) * d;
  for (int c = 0; c < d; ++c) {
    input[c] = u[c];
    accum[c] = 0;
  }
  Scalar check = 0;
  for (int k = 0; k <= negatives; ++k) {
    const NodeId target = k == 0 ? context : table.sample(rng);
    Scalar* v = ctx + static_cast<std::size_t>(target) * d;
    Scalar x = 0;
    for (int c = 0; c < d; ++c) x += input[c] * v[c];
    check += x;
    const Scalar g = (static_cast<Scalar>(k == 0) - sigma(x)) * step;
    for (int c = 0; c < d; ++c) {
      accum[c] += g * v[c];
      v[c] += g * input[c];
    }
  }
  for (int c = 0; c < d; ++c) u[c] += accum[c];
  return check;
}

}  // namespace

template <typename Scalar>
void sgd_train(SkipGramModel<Scalar>& model, const WalkCorpus& corpus,
               int window, const TrainConfig& cfg) {
  cfg.validate();
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (corpus.num_walks() == 0) throw std::invalid_argument("empty corpus");
  const int d = cfg.dimension;
  if (model.center.rows() != corpus.num_nodes() || model.center.cols() != d)
    throw std::invalid_argument("model shape does not match corpus/config");

  std::vector<std::uint64_t> unigram(corpus.num_nodes(), 0);
  for (std::size_t w = 0; w < corpus.num_walks(); ++w)
    for (NodeId v : corpus.walk(w)) ++unigram[v];
  const AliasTable table = negative_table(unigram, cfg.unigram_exponent);

  const std::uint64_t per_epoch = positive_events(corpus, window);
  const double scheduled = static_cast<double>(per_epoch) * cfg.epochs;
  Scalar* in = model.center.data();
  Scalar* ctx = cfg.mode == VectorMode::kDual ? model.context.data() : in;
  if (cfg.mode == VectorMode::kDual && model.context.rows() != model.center.rows())
    throw std::invalid_argument("dual mode needs context vectors");

  const LogisticTable& sigma = logistic_table();
  std::atomic<std::uint64_t> processed{0};
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    parallel_chunks(
        corpus.num_walks(), cfg.threads,
        [&](std::size_t begin, std::size_t end, std::size_t chunk) {
          FastRng rng(derive_seed(
              cfg.seed, 0x736764ULL + static_cast<std::uint64_t>(epoch) * 1024 +
                            chunk));
          std::vector<Scalar> input(static_cast<std::size_t>(d)),
              accum(static_cast<std::size_t>(d));
          const auto w = static_cast<std::ptrdiff_t>(window);
          for (std::size_t wi = begin; wi < end; ++wi) {
            const auto walk = corpus.walk(wi);
            const auto len = static_cast<std::ptrdiff_t>(walk.size());
            const double progress =
                static_cast<double>(processed.load(std::memory_order_relaxed)) /
                scheduled;
            const auto step = static_cast<Scalar>(
                cfg.initial_step +
                (cfg.final_step - cfg.initial_step) * std::min(1.0, progress));
            std::uint64_t events = 0;
            Scalar check = 0;
            for (std::ptrdiff_t a = 0; a < len; ++a) {
              const auto lo = std::max<std::ptrdiff_t>(0, a - w);
              const auto hi = std::min<std::ptrdiff_t>(len - 1, a + w);
              for (auto b = lo; b <= hi; ++b) {
                if (b == a) continue;
                check += skip_gram_step(in, ctx, d, walk[a], walk[b],
                                        cfg.negatives, table, sigma, rng, step,
                                        input.data(), accum.data());
                ++events;
              }
            }
            // NaN and infinity propagate through the sum.
            if (!std::isfinite(check))
              throw TrainingError("non-finite inner product in walk " +
                                  std::to_string(wi));
            processed.fetch_add(events, std::memory_order_relaxed);
          }
        });
    if (!model.center.allFinite())
      throw TrainingError("non-finite embedding after epoch " +
                          std::to_string(epoch + 1));
  }
  model.events += processed.load();
}

template <typename Scalar>
SkipGramModel<Scalar> sgd_train(const WalkCorpus& corpus, int window,
                                const TrainConfig& cfg) {
  auto model = initial_model<Scalar>(corpus.num_nodes(), cfg);
  sgd_train(model, corpus, window, cfg);
  return model;
}

template SkipGramModel<float> initial_model<float>(NodeId, const TrainConfig&);
template SkipGramModel<double> initial_model<double>(NodeId, const TrainConfig&);
template void sgd_train<float>(SkipGramModel<float>&, const WalkCorpus&, int,
                               const TrainConfig&);
template void sgd_train<double>(SkipGramModel<double>&, const WalkCorpus&, int,
                                const TrainConfig&);
template SkipGramModel<float> sgd_train<float>(const WalkCorpus&, int,
                                               const TrainConfig&);
template SkipGramModel<double> sgd_train<double>(const WalkCorpus&, int,
                                                 const TrainConfig&);

Eigen::SparseMatrix<double> gram_relaxation(const PairCounts& pc) {
  std::vector<Eigen::Triplet<double>> entries;
  // Both lists are sorted by (first, second): merge.
  auto neg = pc.negative.begin();
  for (const auto& p : pc.positive) {
    while (neg != pc.negative.end() &&
           (neg->first < p.first ||
            (neg->first == p.first && neg->second < p.second)))
      ++neg;
    if (neg == pc.negative.end()) break;
    if (neg->first == p.first && neg->second == p.second && p.count > 0 &&
        neg->count > 0)
      entries.emplace_back(p.first, p.second,
                           std::log(static_cast<double>(p.count) /
                                    static_cast<double>(neg->count)));
  }
  Eigen::SparseMatrix<double> G(pc.num_nodes, pc.num_nodes);
  G.setFromTriplets(entries.begin(), entries.end());
  return G;
}

EmbeddingMatrix<double> factorize_gram(const Eigen::MatrixXd& G, int d) {
  if (d < 1 || d > G.rows())
    throw std::invalid_argument("factorization rank must lie in [1, n]");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(G, Eigen::ComputeThinU);
  EmbeddingMatrix<double> out =
      svd.matrixU().leftCols(d) *
      svd.singularValues().head(d).cwiseSqrt().asDiagonal();
  return out;
}

EmbeddingMatrix<double> pmi_factorize(const PairCounts& pc, int d) {
  if (d < 1 || static_cast<NodeId>(d) > pc.num_nodes)
    throw std::invalid_argument("factorization rank must lie in [1, n]");
  return factorize_gram(Eigen::MatrixXd(gram_relaxation(pc)), d);
}

template <typename Scalar>
void write_embedding_text(const std::filesystem::path& path,
                          const EmbeddingMatrix<Scalar>& emb) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(std::numeric_limits<Scalar>::max_digits10);
  out << emb.rows() << ' ' << emb.cols() << '\n';
  for (Eigen::Index i = 0; i < emb.rows(); ++i) {
    out << i;
    for (Eigen::Index j = 0; j < emb.cols(); ++j) out << ' ' << emb(i, j);
    out << '\n';
  }
}

template void write_embedding_text<float>(const std::filesystem::path&,
                                          const EmbeddingMatrix<float>&);
template void write_embedding_text<double>(const std::filesystem::path&,
                                           const EmbeddingMatrix<double>&);

EmbeddingMatrix<double> read_embedding_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  long long n, d;
  if (!(in >> n >> d) || n < 0 || d < 1)
    throw ParseError("expected header \"n d\"", 1);
  EmbeddingMatrix<double> emb(n, d);
  for (long long r = 0; r < n; ++r) {
    long long id;
    if (!(in >> id) || id < 0 || id >= n)
      throw ParseError("bad node id", static_cast<std::size_t>(r) + 2);
    for (long long j = 0; j < d; ++j)
      if (!(in >> emb(id, j)))
        throw ParseError("expected " + std::to_string(d) + " values",
                         static_cast<std::size_t>(r) + 2);
  }
  return emb;
}

namespace {

std::filesystem::path sidecar(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".json");
}

}  // namespace

template <typename Scalar>
void write_embedding_binary(const std::filesystem::path& path,
                            const EmbeddingMatrix<Scalar>& emb) {
  static_assert(std::endian::native == std::endian::little,
                "binary embedding format is little-endian");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(emb.data()),
            static_cast<std::streamsize>(emb.size() * sizeof(Scalar)));
  nlohmann::json meta = {{"n", emb.rows()},
                         {"d", emb.cols()},
                         {"dtype", sizeof(Scalar) == 4 ? "float32" : "float64"},
                         {"byte_order", "little"},
                         {"layout", "row-major"}};
  std::ofstream(sidecar(path)) << meta.dump(2) << '\n';
}

template void write_embedding_binary<float>(const std::filesystem::path&,
                                            const EmbeddingMatrix<float>&);
template void write_embedding_binary<double>(const std::filesystem::path&,
                                             const EmbeddingMatrix<double>&);

EmbeddingMatrix<double> read_embedding_binary(const std::filesystem::path& path) {
  std::ifstream meta_in(sidecar(path));
  if (!meta_in) throw std::runtime_error("missing sidecar for " + path.string());
  const auto meta = nlohmann::json::parse(meta_in);
  const auto n = meta.at("n").get<Eigen::Index>();
  const auto d = meta.at("d").get<Eigen::Index>();
  const auto dtype = meta.at("dtype").get<std::string>();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  auto read_as = [&](auto tag) {
    using S = decltype(tag);
    EmbeddingMatrix<S> raw(n, d);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(S)));
    if (!in) throw std::runtime_error("truncated embedding file " + path.string());
    return EmbeddingMatrix<double>(raw.template cast<double>());
  };
  if (dtype == "float32") return read_as(float{});
  if (dtype == "float64") return read_as(double{});
  throw std::runtime_error("unsupported dtype " + dtype);
}

}  // namespace vecsbm
