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

#ifndef VECSBM_METRICS_HPP_
#define VECSBM_METRICS_HPP_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vecsbm/graph.hpp"

namespace vecsbm {

using ConfusionMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// counts(y-1, yhat-1) = nodes with true label y predicted as yhat. Padded with
// zeros to a square max(K, K_hat) matrix.
ConfusionMatrix confusion_matrix(const LabelVector& truth,
                                 const LabelVector& pred);

// Column assigned to each row of a square matrix, maximizing the total weight
// (Hungarian algorithm, O(K^3)).
std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weight);

// Correct classification rate under the best relabeling of pred.
double ccr(const LabelVector& truth, const LabelVector& pred);

// I(Y; Y_hat) / ((H(Y) + H(Y_hat)) / 2), natural logarithms. 1 if both
// labelings are constant, 0 if exactly one is.
double nmi(const LabelVector& truth, const LabelVector& pred);

// Q(a, e): metric value of algorithm a (row) in experiment e (column).
struct ExperimentResultTable {
  std::vector<std::string> algorithms;
  Eigen::MatrixXd values;
};

struct PerformanceProfile {
  std::vector<double> tau;
  std::vector<std::string> algorithms;
  Eigen::MatrixXd curves;  // algorithms x tau
};

// 101 uniform points on [0, 1].
std::vector<double> default_tau_grid();

// PP_a(tau) = |{e : Q(a,e) >= (1 - tau) max_a' Q(a',e)}| / #experiments.
PerformanceProfile performance_profile(const ExperimentResultTable& table,
                                       std::span<const double> tau);

}  // namespace vecsbm

#endif  // VECSBM_METRICS_HPP_
