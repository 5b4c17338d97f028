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

#ifndef VECSBM_EMBEDDING_HPP_
#define VECSBM_EMBEDDING_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "vecsbm/corpus.hpp"

namespace vecsbm {

// One row per node.
template <typename Scalar>
using EmbeddingMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// log(1 + e^x) without overflow.
inline double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

// Logistic function, saturated beyond |x| >= 30.
inline double logistic(double x) {
  if (x >= 30.0) return 1.0;
  if (x <= -30.0) return 0.0;
  return 1.0 / (1.0 + std::exp(-x));
}

enum class VectorMode {
  kTied,  // one vector per node, as in the logistic pair model
  kDual,  // separate center and context vectors; center vectors returned
};

std::string to_string(VectorMode m);
VectorMode parse_vector_mode(const std::string& s);

struct TrainConfig {
  int dimension = 50;
  int negatives = 5;
  int epochs = 1;
  double initial_step = 0.025;
  double final_step = 1e-4;
  // Center vectors start i.i.d. uniform on [-init_scale/d, init_scale/d].
  double init_scale = 0.5;
  double unigram_exponent = 1.0;
  std::uint64_t seed = 1;
  VectorMode mode = VectorMode::kDual;
  // >1 enables lock-free asynchronous updates (not bit-reproducible).
  int threads = 1;

  void validate() const;
};

template <typename Scalar>
struct SkipGramModel {
  VectorMode mode = VectorMode::kDual;
  EmbeddingMatrix<Scalar> center;
  EmbeddingMatrix<Scalar> context;  // empty in tied mode
  std::uint64_t events = 0;         // positive pairs processed

  const EmbeddingMatrix<Scalar>& embedding() const { return center; }
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Number of (center, context) positive events in one pass over the corpus.
std::uint64_t positive_events(const WalkCorpus& corpus, int window);

// Initial vectors exactly as sgd_train draws them.
template <typename Scalar>
SkipGramModel<Scalar> initial_model(NodeId num_nodes, const TrainConfig& cfg);

// Skip-gram negative-sampling SGD streamed over the corpus: every positive
// occurrence (i, j) within the window is followed by `negatives` pairs
// (i, j_k), j_k ~ unigram^exponent. The step size decays linearly from
// initial_step to final_step over all scheduled events. Each event costs O(d).
template <typename Scalar = float>
SkipGramModel<Scalar> sgd_train(const WalkCorpus& corpus, int window,
                                const TrainConfig& cfg);

// Same, continuing from `model` (which must match the corpus and config).
template <typename Scalar = float>
void sgd_train(SkipGramModel<Scalar>& model, const WalkCorpus& corpus,
               int window, const TrainConfig& cfg);

// sum over pairs of n+ log(1 + e^{-x}) + n- log(1 + e^{x}), x = u_i . v_j.
template <typename DerivedA, typename DerivedB>
double objective(const PairCounts& pc, const Eigen::MatrixBase<DerivedA>& center,
                 const Eigen::MatrixBase<DerivedB>& context) {
  auto term = [&](const PairCount& p, double sign) {
    const double x =
        center.row(p.first).template cast<double>().dot(
            context.row(p.second).template cast<double>());
    return static_cast<double>(p.count) * softplus(sign * x);
  };
  double total = 0.0;
  for (const auto& p : pc.positive) total += term(p, -1.0);
  for (const auto& p : pc.negative) total += term(p, +1.0);
  return total;
}

// Tied-vector objective.
template <typename Derived>
double objective(const PairCounts& pc, const Eigen::MatrixBase<Derived>& emb) {
  return objective(pc, emb, emb);
}

// Gradients of the dual objective with respect to center and context rows.
template <typename DerivedA, typename DerivedB>
std::pair<EmbeddingMatrix<double>, EmbeddingMatrix<double>> gradient(
    const PairCounts& pc, const Eigen::MatrixBase<DerivedA>& center,
    const Eigen::MatrixBase<DerivedB>& context) {
  EmbeddingMatrix<double> gc = EmbeddingMatrix<double>::Zero(center.rows(), center.cols());
  EmbeddingMatrix<double> gx = EmbeddingMatrix<double>::Zero(context.rows(), context.cols());
  auto accumulate = [&](const PairCount& p, bool positive) {
    const auto u = center.row(p.first).template cast<double>();
    const auto v = context.row(p.second).template cast<double>();
    const double x = u.dot(v);
    // d/dx of n+ softplus(-x) is -n+ sigma(-x); of n- softplus(x) is n- sigma(x).
    const double coef = static_cast<double>(p.count) *
                        (positive ? -logistic(-x) : logistic(x));
    gc.row(p.first) += coef * v;
    gx.row(p.second) += coef * u;
  };
  for (const auto& p : pc.positive) accumulate(p, true);
  for (const auto& p : pc.negative) accumulate(p, false);
  return {std::move(gc), std::move(gx)};
}

// Tied-vector gradient: a node collects the terms of both of its roles.
template <typename Derived>
EmbeddingMatrix<double> gradient(const PairCounts& pc,
                                 const Eigen::MatrixBase<Derived>& emb) {
  auto [gc, gx] = gradient(pc, emb, emb);
  return gc + gx;
}

// G_ij = log(n+_ij / n-_ij) on pairs where both counts are positive.
Eigen::SparseMatrix<double> gram_relaxation(const PairCounts& pc);

// Rank-d factorization U sqrt(S) from the d leading singular triplets of G.
// Dense SVD: intended as an oracle for small graphs.
EmbeddingMatrix<double> factorize_gram(const Eigen::MatrixXd& G, int d);

// gram_relaxation followed by factorize_gram. Throws if d > n.
EmbeddingMatrix<double> pmi_factorize(const PairCounts& pc, int d);

// Text format: header "n d", then "node v1 ... vd" per row.
template <typename Scalar>
void write_embedding_text(const std::filesystem::path& path,
                          const EmbeddingMatrix<Scalar>& emb);
EmbeddingMatrix<double> read_embedding_text(const std::filesystem::path& path);

// Raw little-endian row-major values plus "<path>.json" describing n, d and
// dtype.
template <typename Scalar>
void write_embedding_binary(const std::filesystem::path& path,
                            const EmbeddingMatrix<Scalar>& emb);
EmbeddingMatrix<double> read_embedding_binary(const std::filesystem::path& path);

}  // namespace vecsbm

#endif  // VECSBM_EMBEDDING_HPP_
