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


#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "vecsbm/kmeans.hpp"
#include "vecsbm/metrics.hpp"

using namespace vecsbm;

namespace {

Eigen::MatrixXd blobs(std::mt19937_64& rng, int k, int per, double spread) {
  std::normal_distribution<double> g(0.0, spread);
  Eigen::MatrixXd x(k * per, 2);
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < per; ++i) {
      x(c * per + i, 0) = 10.0 * std::cos(2 * M_PI * c / k) + g(rng);
      x(c * per + i, 1) = 10.0 * std::sin(2 * M_PI * c / k) + g(rng);
    }
  return x;
}

LabelVector blob_labels(int k, int per) {
  std::vector<int> l;
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < per; ++i) l.push_back(c + 1);
  return LabelVector(l, k);
}

// Minimum WCSS over all K^n assignments.
double exhaustive_wcss(const Eigen::MatrixXd& x, int k) {
  const Eigen::Index n = x.rows();
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(a[i]) += x.row(i);
      counts[a[i]] += 1;
    }
    double w = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      w += (x.row(i) - sums.row(a[i]) / counts[a[i]]).squaredNorm();
    if (counts.minCoeff() > 0) best = std::min(best, w);
    Eigen::Index pos = 0;
    while (pos < n && ++a[pos] == k) a[pos++] = 0;
    if (pos == n) break;
  }
  return best;
}

}  // namespace

TEST_CASE("four points, two clusters") {
  Eigen::MatrixXd x(4, 2);
  x << 0, 0, 0, 1, 10, 10, 10, 11;
  KMeansConfig cfg;
  cfg.k = 2;
  const auto r = kmeans(x, cfg);
  CHECK(r.labels.values() == std::vector<int>{1, 1, 2, 2});
  CHECK(r.wcss == doctest::Approx(1.0));
  CHECK(r.centers(0, 1) == doctest::Approx(0.5));
  CHECK(r.centers(1, 0) == doctest::Approx(10.0));
}

TEST_CASE("K = 1 puts the center at the mean") {
  std::mt19937_64 rng(1);
  const Eigen::MatrixXd x = blobs(rng, 3, 20, 1.0);
  KMeansConfig cfg;
  cfg.k = 1;
  const auto r = kmeans(x, cfg);
  CHECK((r.centers.row(0) - x.colwise().mean()).norm() < 1e-12);
  const double expect = (x.rowwise() - x.colwise().mean()).squaredNorm();
  CHECK(r.wcss == doctest::Approx(expect));
}

TEST_CASE("well separated blobs are recovered") {
  std::mt19937_64 rng(2);
  for (int k : {2, 3, 5}) {
    const Eigen::MatrixXd x = blobs(rng, k, 40, 0.5);
    KMeansConfig cfg;
    cfg.k = k;
    CHECK(ccr(blob_labels(k, 40), kmeans(x, cfg).labels) == 1.0);
  }
}

TEST_CASE("matches the exhaustive optimum on small inputs") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd x(10, 2);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
    KMeansConfig cfg;
    cfg.k = 3;
    cfg.restarts = 200;
    cfg.seed = static_cast<std::uint64_t>(trial);
    CHECK(kmeans(x, cfg).wcss == doctest::Approx(exhaustive_wcss(x, 3)).epsilon(1e-9));
  }
}

TEST_CASE("WCSS history never increases and the best restart wins") {
  std::mt19937_64 rng(4);
  const Eigen::MatrixXd x = blobs(rng, 4, 30, 4.0);
  KMeansConfig cfg;
  cfg.k = 4;
  const auto r = kmeans(x, cfg);
  for (std::size_t i = 1; i < r.history.size(); ++i)
    CHECK(r.history[i] <= r.history[i - 1] * (1 + 1e-12));
  CHECK(r.restart_wcss.size() == 10);
  for (double w : r.restart_wcss) CHECK(r.wcss <= w);
  CHECK(r.restart_wcss[static_cast<std::size_t>(r.best_restart)] == r.wcss);
  CHECK(r.seeds.size() == 4);
}

TEST_CASE("invalid configurations throw") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(3, 2);
  KMeansConfig cfg;
  cfg.k = 4;
  CHECK_THROWS_AS(kmeans(x, cfg), std::invalid_argument);
  cfg.k = 0;
  CHECK_THROWS_AS(kmeans(x, cfg), std::invalid_argument);
  cfg.k = 2;
  cfg.restarts = 0;
  CHECK_THROWS_AS(kmeans(x, cfg), std::invalid_argument);
}

TEST_CASE("partition is invariant under rotation and translation") {
  std::mt19937_64 rng(5);
  const Eigen::MatrixXd x = blobs(rng, 3, 25, 2.0);
  const double t = 0.7;
  Eigen::Matrix2d rot;
  rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  Eigen::MatrixXd y = x * rot.transpose();
  y.rowwise() += Eigen::RowVector2d(100.0, -40.0);
  KMeansConfig cfg;
  cfg.k = 3;
  const auto a = kmeans(x, cfg);
  const auto b = kmeans(y, cfg);
  CHECK(a.labels.values() == b.labels.values());
  CHECK(a.wcss == doctest::Approx(b.wcss).epsilon(1e-9));
}

TEST_CASE("labels are numbered by first appearance") {
  std::mt19937_64 rng(6);
  const Eigen::MatrixXd x = blobs(rng, 5, 10, 3.0);
  KMeansConfig cfg;
  cfg.k = 5;
  const auto r = kmeans(x, cfg);
  int seen = 0;
  for (int l : r.labels.values()) {
    CHECK(l <= seen + 1);
    seen = std::max(seen, l);
  }
  CHECK(r.labels.num_communities() == 5);
}

TEST_CASE("duplicate points with more clusters than locations") {
  Eigen::MatrixXd x(6, 1);
  x << 0, 0, 0, 5, 5, 5;
  KMeansConfig cfg;
  cfg.k = 3;
  const auto r = kmeans(x, cfg);
  CHECK(r.wcss == 0.0);
  CHECK(r.labels.size() == 6);
  CHECK(r.labels[0] == r.labels[1]);
  CHECK(r.labels[3] == r.labels[5]);
  CHECK(r.labels[0] != r.labels[3]);
}

TEST_CASE("restarts on several threads give the same answer") {
  std::mt19937_64 rng(7);
  const Eigen::MatrixXd x = blobs(rng, 4, 30, 5.0);
  KMeansConfig cfg;
  cfg.k = 4;
  const auto a = kmeans(x, cfg);
  cfg.threads = 3;
  const auto b = kmeans(x, cfg);
  CHECK(a.labels.values() == b.labels.values());
  CHECK(a.wcss == b.wcss);
}
