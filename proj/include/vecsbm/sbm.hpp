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

#ifndef VECSBM_SBM_HPP_
#define VECSBM_SBM_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "vecsbm/graph.hpp"

namespace vecsbm {

enum class Scaling { kConstant, kLogarithmic };

std::string to_string(Scaling s);
Scaling parse_scaling(const std::string& s);

// General SBM: community weights p and symmetric edge probabilities Q.
struct SbmParams {
  NodeId n = 0;
  Eigen::VectorXd p;
  Eigen::MatrixXd Q;

  int num_communities() const { return static_cast<int>(p.size()); }
  // Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

struct PlantedPartitionSpec {
  NodeId n = 10000;
  int K = 2;
  // c for constant scaling, c' for logarithmic scaling.
  double sparsity = 5.0;
  double lambda = 0.9;
  Scaling scaling = Scaling::kConstant;
  // Weight of community 1 (K = 2 only); p = (gamma, 1 - gamma).
  std::optional<double> gamma;
  // Relative density of community 2 (K = 2 only); Q(2,2) = beta * Q(1,1).
  std::optional<double> beta;

  void validate() const;
};

enum class ThetaNormalization { kSumToOne, kMeanOne };

std::string to_string(ThetaNormalization t);
ThetaNormalization parse_normalization(const std::string& s);

struct DcSbmSpec {
  PlantedPartitionSpec base;
  // Exponent of the power-law density theta^power on [theta_min, inf).
  double power = -2.5;
  double theta_min = 10.0;
  ThetaNormalization normalization = ThetaNormalization::kMeanOne;

  void validate() const;
};

struct SampledGraph {
  Graph graph;
  LabelVector labels;
};

SbmParams expand(const PlantedPartitionSpec& spec);

// Labels i.i.d. from p; each unordered pair {i,j} is an edge with probability
// Q(label_i, label_j). Runs in O(n + E) using geometric skips over the pairs
// of each block.
SampledGraph sample_sbm(const SbmParams& params, std::uint64_t seed);

// Degree-corrected variant: per-community power-law theta, Poisson edge
// multiplicities with mean theta_i * theta_j * Q. O(n^2).
SampledGraph sample_dcsbm(const DcSbmSpec& spec, std::uint64_t seed);

// Labels i.i.d. from p. Exposed for tests and for the DC-SBM sampler.
std::vector<int> sample_labels(NodeId n, const Eigen::VectorXd& p,
                               std::uint64_t seed);

// Weak recovery threshold for constant scaling: c must exceed K*mu/lambda^2,
// mu = 1 + (K-1)(1-lambda).
double weak_threshold(int K, double lambda);

// Exact recovery threshold for logarithmic scaling: K / (1 - sqrt(1-lambda))^2.
double exact_threshold(int K, double lambda);

// Largest K with lambda^2 c > K (1 + (K-1)(1-lambda)); 0 if none.
int max_weak_k(double c, double lambda);

// Maximum-likelihood planted-partition parameters under logarithmic scaling.
struct PlantedPartitionFit {
  double lambda = 0.0;
  double sparsity = 0.0;  // c'
  double max_weight = 0.0;
  double q_in = 0.0;
  double q_out = 0.0;
  Eigen::VectorXd weights;
};

PlantedPartitionFit fit_planted_partition(const Graph& g,
                                          const LabelVector& labels);

// The planted-partition spec (logarithmic scaling) matching a fit; unbalanced
// weights are carried over through SbmParams.
SbmParams fitted_params(const PlantedPartitionFit& fit, NodeId n);

}  // namespace vecsbm

#endif  // VECSBM_SBM_HPP_
