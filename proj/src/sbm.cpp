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

#include "vecsbm/sbm.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "vecsbm/random.hpp"

namespace vecsbm {

std::string to_string(Scaling s) {
  return s == Scaling::kConstant ? "constant" : "logarithmic";
}

Scaling parse_scaling(const std::string& s) {
  if (s == "constant" || s == "const") return Scaling::kConstant;
  if (s == "logarithmic" || s == "log") return Scaling::kLogarithmic;
  throw std::invalid_argument("unknown scaling '" + s + "'");
}

std::string to_string(ThetaNormalization t) {
  return t == ThetaNormalization::kMeanOne ? "mean_one" : "sum_to_one";
}

ThetaNormalization parse_normalization(const std::string& s) {
  if (s == "mean_one") return ThetaNormalization::kMeanOne;
  if (s == "sum_to_one") return ThetaNormalization::kSumToOne;
  throw std::invalid_argument("unknown theta normalization '" + s + "'");
}

void SbmParams::validate() const {
  const auto k = p.size();
  if (k < 1) throw std::invalid_argument("SBM needs at least one community");
  if (Q.rows() != k || Q.cols() != k)
    throw std::invalid_argument("Q must be K x K");
  if ((p.array() < 0.0).any())
    throw std::invalid_argument("community weights must be nonnegative");
  if (std::abs(p.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("community weights must sum to 1");
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 0.0)
    throw std::invalid_argument("Q must be symmetric");
  if ((Q.array() < 0.0).any() || (Q.array() > 1.0).any() || !Q.allFinite())
    throw std::invalid_argument("Q entries must lie in [0,1]");
}

void PlantedPartitionSpec::validate() const {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (K < 1) throw std::invalid_argument("K must be positive");
  if (!(sparsity >= 0.0)) throw std::invalid_argument("sparsity must be >= 0");
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in (0,1]");
  if (gamma) {
    if (K != 2) throw std::invalid_argument("gamma requires K = 2");
    if (!(*gamma >= 1.0 / K && *gamma < 1.0))
      throw std::invalid_argument("gamma must lie in [1/K, 1)");
  }
  if (beta) {
    if (K != 2) throw std::invalid_argument("beta requires K = 2");
    if (!(*beta > 0.0 && *beta <= 1.0))
      throw std::invalid_argument("beta must lie in (0,1]");
  }
}

void DcSbmSpec::validate() const {
  base.validate();
  if (!(power < -1.0))
    throw std::invalid_argument("power-law exponent must be < -1");
  if (!(theta_min > 0.0)) throw std::invalid_argument("theta_min must be > 0");
}

SbmParams expand(const PlantedPartitionSpec& spec) {
  spec.validate();
  const double n = spec.n;
  const double scale = spec.scaling == Scaling::kConstant
                           ? spec.sparsity / n
                           : spec.sparsity * std::log(n) / n;
  SbmParams params;
  params.n = spec.n;
  params.p = Eigen::VectorXd::Constant(spec.K, 1.0 / spec.K);
  if (spec.gamma) params.p << *spec.gamma, 1.0 - *spec.gamma;
  params.Q = Eigen::MatrixXd::Constant(spec.K, spec.K, scale * (1.0 - spec.lambda));
  params.Q.diagonal().setConstant(scale);
  if (spec.beta) params.Q(1, 1) = scale * *spec.beta;
  if ((params.Q.array() > 1.0).any())
    throw std::invalid_argument("edge probability exceeds 1; lower the sparsity");
  return params;
}

std::vector<int> sample_labels(NodeId n, const Eigen::VectorXd& p,
                               std::uint64_t seed) {
  Rng rng = make_rng(seed, 1);
  std::discrete_distribution<int> pick(p.data(), p.data() + p.size());
  std::vector<int> labels(n);
  for (auto& l : labels) l = pick(rng) + 1;
  return labels;
}

namespace {

// Calls emit(t) for each index t in [0, total) selected independently with
// probability q.
template <typename Emit>
void bernoulli_indices(std::uint64_t total, double q, Rng& rng, Emit emit) {
  if (total == 0 || q <= 0.0) return;
  if (q >= 1.0) {
    for (std::uint64_t t = 0; t < total; ++t) emit(t);
    return;
  }
  const double log_fail = std::log1p(-q);
  std::uint64_t t = 0;
  while (true) {
    // Number of failures before the next success.
    const double u = uniform01(rng);
    const double skip = std::floor(std::log1p(-u) / log_fail);
    if (skip >= static_cast<double>(total - t)) return;
    t += static_cast<std::uint64_t>(skip);
    emit(t);
    if (++t >= total) return;
  }
}

}  // namespace

SampledGraph sample_sbm(const SbmParams& params, std::uint64_t seed) {
  params.validate();
  const int k = params.num_communities();
  std::vector<int> labels = sample_labels(params.n, params.p, seed);
  std::vector<std::vector<NodeId>> members(static_cast<std::size_t>(k));
  for (NodeId v = 0; v < params.n; ++v)
    members[static_cast<std::size_t>(labels[v] - 1)].push_back(v);

  Rng rng = make_rng(seed, 2);
  std::vector<Edge> edges;
  for (int a = 0; a < k; ++a) {
    const auto& ma = members[static_cast<std::size_t>(a)];
    const std::uint64_t sa = ma.size();
    // Within block: pair index t enumerates (v, w) with w < v row by row.
    std::uint64_t row = 1, row_start = 0;
    bernoulli_indices(sa < 2 ? 0 : sa * (sa - 1) / 2, params.Q(a, a), rng,
                      [&](std::uint64_t t) {
                        while (t >= row_start + row) {
                          row_start += row;
                          ++row;
                        }
                        edges.push_back({ma[row], ma[t - row_start], 1.0});
                      });
    for (int b = a + 1; b < k; ++b) {
      const auto& mb = members[static_cast<std::size_t>(b)];
      const std::uint64_t sb = mb.size();
      bernoulli_indices(sa * sb, params.Q(a, b), rng, [&](std::uint64_t t) {
        edges.push_back({ma[t / sb], mb[t % sb], 1.0});
      });
    }
  }
  return {Graph::from_edges(params.n, edges),
          LabelVector(std::move(labels), k)};
}

namespace {

// Inverse-CDF Poisson draw from one uniform; exact for moderate means.
int poisson_draw(double mean, Rng& rng) {
  if (mean > 500.0) {
    std::poisson_distribution<int> pois(mean);
    return pois(rng);
  }
  const double u = uniform01(rng);
  double pmf = std::exp(-mean);
  double cdf = pmf;
  int k = 0;
  while (u >= cdf && pmf > 0.0) {
    ++k;
    pmf *= mean / k;
    cdf += pmf;
  }
  return k;
}

}  // namespace

SampledGraph sample_dcsbm(const DcSbmSpec& spec, std::uint64_t seed) {
  spec.validate();
  const SbmParams params = expand(spec.base);
  const int k = params.num_communities();
  std::vector<int> labels = sample_labels(params.n, params.p, seed);

  // Pareto on [theta_min, inf) with density ~ theta^power, via inverse CDF.
  Rng theta_rng = make_rng(seed, 3);
  const double tail = -spec.power - 1.0;
  Eigen::VectorXd theta(params.n);
  for (NodeId v = 0; v < params.n; ++v)
    theta[v] = spec.theta_min * std::pow(1.0 - uniform01(theta_rng), -1.0 / tail);

  Eigen::VectorXd total = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd count = Eigen::VectorXd::Zero(k);
  for (NodeId v = 0; v < params.n; ++v) {
    total[labels[v] - 1] += theta[v];
    count[labels[v] - 1] += 1.0;
  }
  for (NodeId v = 0; v < params.n; ++v) {
    const int c = labels[v] - 1;
    theta[v] /= spec.normalization == ThetaNormalization::kSumToOne
                    ? total[c]
                    : total[c] / count[c];
  }

  Rng rng = make_rng(seed, 4);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < params.n; ++i) {
    for (NodeId j = i + 1; j < params.n; ++j) {
      const double mean =
          theta[i] * theta[j] * params.Q(labels[i] - 1, labels[j] - 1);
      if (mean <= 0.0) continue;
      const int w = poisson_draw(mean, rng);
      if (w > 0) edges.push_back({i, j, static_cast<double>(w)});
    }
  }
  return {Graph::from_edges(params.n, edges),
          LabelVector(std::move(labels), k)};
}

namespace {

void check_threshold_args(int K, double lambda) {
  if (K < 2) throw std::invalid_argument("threshold requires K >= 2");
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("threshold requires lambda in (0,1]");
}

}  // namespace

double weak_threshold(int K, double lambda) {
  check_threshold_args(K, lambda);
  const double mu = 1.0 + (K - 1) * (1.0 - lambda);
  return K * mu / (lambda * lambda);
}

double exact_threshold(int K, double lambda) {
  check_threshold_args(K, lambda);
  const double gap = 1.0 - std::sqrt(1.0 - lambda);
  return K / (gap * gap);
}

int max_weak_k(double c, double lambda) {
  if (!(c > 0.0) || !(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("max_weak_k requires c > 0, lambda in (0,1]");
  const double lhs = lambda * lambda * c;
  int k = 0;
  while (lhs > (k + 1) * (1.0 + k * (1.0 - lambda))) ++k;
  return k;
}

PlantedPartitionFit fit_planted_partition(const Graph& g,
                                          const LabelVector& labels) {
  const NodeId n = g.num_nodes();
  if (labels.size() != n)
    throw std::invalid_argument("label count does not match node count");
  const int k = labels.num_communities();
  if (k < 2) throw std::invalid_argument("fit needs K >= 2");
  const auto sizes = labels.community_sizes();
  for (std::size_t s : sizes)
    if (s < 2) throw std::invalid_argument("every community needs >= 2 members");

  double within_edges = 0.0, across_edges = 0.0;
  for (const Edge& e : g.edges())
    (labels[e.u] == labels[e.v] ? within_edges : across_edges) += 1.0;
  double within_pairs = 0.0, total = 0.0;
  for (std::size_t s : sizes) {
    within_pairs += 0.5 * static_cast<double>(s) * static_cast<double>(s - 1);
    total += static_cast<double>(s);
  }
  const double across_pairs = 0.5 * total * (total - 1.0) - within_pairs;

  PlantedPartitionFit fit;
  fit.q_in = within_edges / within_pairs;
  fit.q_out = across_pairs > 0.0 ? across_edges / across_pairs : 0.0;
  if (fit.q_in <= 0.0)
    throw std::invalid_argument("no within-community edges; fit undefined");
  fit.lambda = 1.0 - fit.q_out / fit.q_in;
  fit.sparsity = fit.q_in * n / std::log(static_cast<double>(n));
  fit.weights.resize(k);
  for (int c = 0; c < k; ++c)
    fit.weights[c] = static_cast<double>(sizes[static_cast<std::size_t>(c)]) / n;
  fit.max_weight = fit.weights.maxCoeff();
  return fit;
}

SbmParams fitted_params(const PlantedPartitionFit& fit, NodeId n) {
  const auto k = fit.weights.size();
  SbmParams params;
  params.n = n;
  params.p = fit.weights / fit.weights.sum();
  params.Q = Eigen::MatrixXd::Constant(k, k, std::min(1.0, fit.q_out));
  params.Q.diagonal().setConstant(std::min(1.0, fit.q_in));
  return params;
}

}  // namespace vecsbm
