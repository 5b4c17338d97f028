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

#include "vecsbm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vecsbm {
namespace {

void check_lengths(const LabelVector& a, const LabelVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("label vectors differ in length (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  if (a.size() == 0) throw std::invalid_argument("label vectors are empty");
}

double entropy(const Eigen::VectorXd& pmf) {
  double h = 0.0;
  for (double p : pmf)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

}  // namespace

ConfusionMatrix confusion_matrix(const LabelVector& truth,
                                 const LabelVector& pred) {
  check_lengths(truth, pred);
  const int k = std::max(truth.num_communities(), pred.num_communities());
  ConfusionMatrix counts = ConfusionMatrix::Zero(k, k);
  for (std::size_t i = 0; i < truth.size(); ++i) ++counts(truth[i] - 1, pred[i] - 1);
  return counts;
}

std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weight) {
  const int n = static_cast<int>(weight.rows());
  if (weight.cols() != n)
    throw std::invalid_argument("assignment needs a square matrix");
  // Minimize cost = -weight with row/column potentials; 1-based with a
  // virtual column 0.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const int r = match[col0];
      double delta = inf;
      int col1 = 0;
      for (int col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double cur = -weight(r - 1, col - 1) - u[r] - v[col];
        if (cur < minv[col]) {
          minv[col] = cur;
          way[col] = col0;
        }
        if (minv[col] < delta) {
          delta = minv[col];
          col1 = col;
        }
      }
      for (int col = 0; col <= n; ++col) {
        if (used[col]) {
          u[match[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const int col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> assignment(n, -1);
  for (int col = 1; col <= n; ++col) assignment[match[col] - 1] = col - 1;
  return assignment;
}

double ccr(const LabelVector& truth, const LabelVector& pred) {
  const ConfusionMatrix counts = confusion_matrix(truth, pred);
  const auto assignment = max_weight_assignment(counts.cast<double>());
  long long correct = 0;
  for (Eigen::Index y = 0; y < counts.rows(); ++y)
    correct += counts(y, assignment[static_cast<std::size_t>(y)]);
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

double nmi(const LabelVector& truth, const LabelVector& pred) {
  const Eigen::MatrixXd joint =
      confusion_matrix(truth, pred).cast<double>() / static_cast<double>(truth.size());
  const Eigen::VectorXd py = joint.rowwise().sum();
  const Eigen::VectorXd pyhat = joint.colwise().sum().transpose();
  const double hy = entropy(py);
  const double hyhat = entropy(pyhat);
  if (hy == 0.0 && hyhat == 0.0) return 1.0;
  if (hy == 0.0 || hyhat == 0.0) return 0.0;
  double mi = 0.0;
  for (Eigen::Index a = 0; a < joint.rows(); ++a)
    for (Eigen::Index b = 0; b < joint.cols(); ++b)
      if (joint(a, b) > 0.0)
        mi += joint(a, b) * std::log(joint(a, b) / (py[a] * pyhat[b]));
  // Clamp round-off (e.g. -1e-17 for independent labelings).
  return std::clamp(mi / (0.5 * (hy + hyhat)), 0.0, 1.0);
}

std::vector<double> default_tau_grid() {
  std::vector<double> tau(101);
  for (int i = 0; i <= 100; ++i) tau[static_cast<std::size_t>(i)] = i / 100.0;
  return tau;
}

PerformanceProfile performance_profile(const ExperimentResultTable& table,
                                       std::span<const double> tau) {
  const auto& q = table.values;
  if (q.rows() != static_cast<Eigen::Index>(table.algorithms.size()))
    throw std::invalid_argument("one table row per algorithm expected");
  if (q.cols() == 0) throw std::invalid_argument("no experiments");
  if (!q.allFinite()) throw std::invalid_argument("table has missing values");
  PerformanceProfile pp;
  pp.tau.assign(tau.begin(), tau.end());
  pp.algorithms = table.algorithms;
  pp.curves.resize(q.rows(), static_cast<Eigen::Index>(tau.size()));
  const Eigen::RowVectorXd best = q.colwise().maxCoeff();
  for (Eigen::Index a = 0; a < q.rows(); ++a) {
    for (std::size_t t = 0; t < tau.size(); ++t) {
      long long hits = 0;
      for (Eigen::Index e = 0; e < q.cols(); ++e)
        hits += q(a, e) >= (1.0 - tau[t]) * best[e];
      pp.curves(a, static_cast<Eigen::Index>(t)) =
          static_cast<double>(hits) / static_cast<double>(q.cols());
    }
  }
  return pp;
}

}  // namespace vecsbm
