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

#ifndef VECSBM_KMEANS_HPP_
#define VECSBM_KMEANS_HPP_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "vecsbm/graph.hpp"
#include "vecsbm/parallel.hpp"
#include "vecsbm/random.hpp"

namespace vecsbm {

struct KMeansConfig {
  int k = 2;
  int restarts = 10;
  int max_iterations = 300;
  // Stop once no center moves farther than this.
  double tolerance = 1e-6;
  std::uint64_t seed = 1;
  int threads = 1;

  void validate() const {
    if (k < 1) throw std::invalid_argument("K must be >= 1");
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (max_iterations < 1)
      throw std::invalid_argument("max_iterations must be >= 1");
  }
};

struct KMeansResult {
  LabelVector labels;  // {1..K}, numbered by first appearance
  Eigen::MatrixXd centers;  // row c - 1 is the center of label c
  double wcss = 0.0;
  int best_restart = 0;
  int iterations = 0;
  std::vector<double> history;       // WCSS after each assignment, best run
  std::vector<double> restart_wcss;  // final WCSS of every restart
  std::vector<Eigen::Index> seeds;   // k-means++ seed rows, best run
};

namespace kmeans_detail {

struct Run {
  std::vector<int> assign;
  Eigen::MatrixXd centers;
  double wcss = 0.0;
  int iterations = 0;
  std::vector<double> history;
  std::vector<Eigen::Index> seeds;
};

// Assigns every point to its nearest center (ties: lowest index) and returns
// the within-cluster sum of squares. dist receives each point's distance.
inline double assign(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centers,
                     std::vector<int>& labels, Eigen::VectorXd& dist) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = centers.rows();
  dist.setConstant(n, std::numeric_limits<double>::infinity());
  for (Eigen::Index c = 0; c < k; ++c) {
    const Eigen::VectorXd d2 = (x.rowwise() - centers.row(c)).rowwise().squaredNorm();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (d2[i] < dist[i]) {
        dist[i] = d2[i];
        labels[static_cast<std::size_t>(i)] = static_cast<int>(c);
      }
    }
  }
  return dist.sum();
}

inline Run lloyd(const Eigen::MatrixXd& x, const KMeansConfig& cfg, Rng rng) {
  const Eigen::Index n = x.rows();
  const int k = cfg.k;
  Run run;
  run.centers.resize(k, x.cols());

  // k-means++ seeding.
  Eigen::VectorXd best = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  Eigen::Index pick = static_cast<Eigen::Index>(
      (static_cast<unsigned __int128>(rng() >> 11) * static_cast<std::uint64_t>(n)) >> 53);
  for (int c = 0; c < k; ++c) {
    if (c > 0) {
      const double total = best.sum();
      if (total > 0.0) {
        double target = uniform01(rng) * total;
        pick = n - 1;
        for (Eigen::Index i = 0; i < n; ++i) {
          target -= best[i];
          if (target < 0.0 && best[i] > 0.0) {
            pick = i;
            break;
          }
        }
      } else {
        pick = static_cast<Eigen::Index>(
            (static_cast<unsigned __int128>(rng() >> 11) * static_cast<std::uint64_t>(n)) >> 53);
      }
    }
    run.seeds.push_back(pick);
    run.centers.row(c) = x.row(pick);
    best = best.cwiseMin((x.rowwise() - x.row(pick)).rowwise().squaredNorm());
  }

  run.assign.assign(static_cast<std::size_t>(n), 0);
  Eigen::VectorXd dist(n);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    run.wcss = assign(x, run.centers, run.assign, dist);
    run.history.push_back(run.wcss);
    run.iterations = it + 1;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(run.assign[static_cast<std::size_t>(i)]) += x.row(i);
      counts[run.assign[static_cast<std::size_t>(i)]] += 1.0;
    }
    double moved = 0.0;
    for (int c = 0; c < k; ++c) {
      Eigen::RowVectorXd next;
      if (counts[c] > 0.0) {
        next = sums.row(c) / counts[c];
      } else {
        // Empty cluster: reseed at the point farthest from its center.
        Eigen::Index far = 0;
        dist.maxCoeff(&far);
        next = x.row(far);
        dist[far] = 0.0;
      }
      moved = std::max(moved, (next - run.centers.row(c)).norm());
      run.centers.row(c) = next;
    }
    if (moved <= cfg.tolerance) break;
  }
  run.wcss = assign(x, run.centers, run.assign, dist);
  if (run.history.empty() || run.wcss < run.history.back())
    run.history.push_back(run.wcss);
  return run;
}

}  // namespace kmeans_detail

// Lloyd's algorithm with k-means++ seeding, best of cfg.restarts runs by
// within-cluster sum of squares (ties: lowest restart index).
template <typename Derived>
KMeansResult kmeans(const Eigen::MatrixBase<Derived>& points,
                    const KMeansConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = points.rows();
  if (cfg.k > n) throw std::invalid_argument("K exceeds the number of points");
  const Eigen::MatrixXd x = points.template cast<double>();

  std::vector<kmeans_detail::Run> runs(static_cast<std::size_t>(cfg.restarts));
  parallel_chunks(runs.size(), cfg.threads,
                  [&](std::size_t begin, std::size_t end, std::size_t) {
                    for (std::size_t r = begin; r < end; ++r)
                      runs[r] = kmeans_detail::lloyd(x, cfg, make_rng(cfg.seed, r));
                  });

  std::size_t best = 0;
  KMeansResult result;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    result.restart_wcss.push_back(runs[r].wcss);
    if (runs[r].wcss < runs[best].wcss) best = r;
  }
  auto& run = runs[best];

  // Relabel by order of first appearance.
  std::vector<int> relabel(static_cast<std::size_t>(cfg.k), 0);
  int next = 0;
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    int& slot = relabel[static_cast<std::size_t>(run.assign[static_cast<std::size_t>(i)])];
    if (slot == 0) slot = ++next;
    labels[static_cast<std::size_t>(i)] = slot;
  }
  result.centers.resize(cfg.k, x.cols());
  for (int c = 0; c < cfg.k; ++c) {
    int slot = relabel[static_cast<std::size_t>(c)];
    if (slot == 0) slot = ++next;  // center that owns no point
    result.centers.row(slot - 1) = run.centers.row(c);
  }
  result.labels = LabelVector(std::move(labels), cfg.k);
  result.wcss = run.wcss;
  result.best_restart = static_cast<int>(best);
  result.iterations = run.iterations;
  result.history = std::move(run.history);
  result.seeds = std::move(run.seeds);
  return result;
}

}  // namespace vecsbm

#endif  // VECSBM_KMEANS_HPP_
