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

#include <random>
#include <stdexcept>

#include "test_graphs.hpp"
#include "vecsbm/metrics.hpp"
#include "vecsbm/sbm.hpp"
#include "vecsbm/spectral.hpp"

using namespace vecsbm;

TEST_CASE("two cliques split exactly") {
  SpectralConfig cfg;
  const auto r = spectral_cluster(testing::cliques(2, 10), cfg);
  CHECK(ccr(testing::clique_labels(2, 10), r.labels) == 1.0);
  CHECK(r.laplacian_eigenvalues.size() == 2);
  CHECK(std::abs(r.laplacian_eigenvalues[0]) < 1e-10);
  CHECK(std::abs(r.laplacian_eigenvalues[1]) < 1e-10);
  for (Eigen::Index i = 0; i < r.embedding.rows(); ++i)
    CHECK(r.embedding.row(i).norm() == doctest::Approx(1.0));
}

TEST_CASE("normalized Laplacian is symmetric positive semidefinite") {
  const auto s = sample_sbm(expand({200, 3, 6.0, 0.8}), 3);
  const Eigen::MatrixXd l(normalized_laplacian(s.graph));
  CHECK((l - l.transpose()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
  CHECK(es.eigenvalues().maxCoeff() < 2 + 1e-10);
}

TEST_CASE("zero Laplacian eigenvalues count the components") {
  for (NodeId count : {1, 2, 4}) {
    const Eigen::MatrixXd l(normalized_laplacian(testing::cliques(count, 6)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
    int zeros = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      zeros += std::abs(es.eigenvalues()[i]) < 1e-10;
    CHECK(zeros == static_cast<int>(count));
  }
}

TEST_CASE("Lanczos agrees with the dense solver") {
  const auto s = sample_sbm(expand({500, 4, 8.0, 0.7}), 5);
  const auto a = normalized_adjacency(s.graph);
  const EigenPairs p = largest_eigenpairs(a, 4, 1e-10, 7);
  const Eigen::MatrixXd dense(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  const Eigen::Index n = dense.rows();
  for (int i = 0; i < 4; ++i) {
    CHECK(p.values[i] == doctest::Approx(es.eigenvalues()[n - 1 - i]).epsilon(1e-8));
    const Eigen::VectorXd x = p.vectors.col(i);
    CHECK((a * x - p.values[i] * x).norm() < 1e-9);
  }
  const Eigen::MatrixXd gram = p.vectors.transpose() * p.vectors;
  CHECK((gram - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(p.matvecs > 0);
}

TEST_CASE("Lanczos finds repeated eigenvalues") {
  // Four disconnected 100-node cycles plus a clique: eigenvalue 1 repeats.
  std::vector<Edge> e;
  for (NodeId c = 0; c < 4; ++c)
    for (NodeId i = 0; i < 100; ++i) e.push_back({c * 100 + i, c * 100 + (i + 1) % 100});
  const Graph g = Graph::from_edges(400, e);
  const EigenPairs p = largest_eigenpairs(normalized_adjacency(g), 4, 1e-10, 3);
  for (int i = 0; i < 4; ++i) CHECK(p.values[i] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("isolated nodes get zero rows and the largest cluster") {
  std::vector<Edge> e;
  for (NodeId c = 0; c < 2; ++c)
    for (NodeId i = 0; i < 6; ++i)
      for (NodeId j = i + 1; j < 6; ++j) e.push_back({c * 6 + i, c * 6 + j});
  for (NodeId i = 6; i < 12; ++i) e.push_back({i, i < 11 ? i + 1 : 0});
  // Nodes 12 and 13 are isolated.
  const Graph g = Graph::from_edges(14, e);
  SpectralConfig cfg;
  const auto r = spectral_cluster(g, cfg);
  CHECK(r.embedding.row(12).norm() == 0.0);
  CHECK(r.embedding.row(13).norm() == 0.0);
  const auto sizes = r.labels.community_sizes();
  const int largest = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin()) + 1;
  CHECK(r.labels[12] == largest);
  CHECK(r.labels[13] == largest);
}

TEST_CASE("invalid requests throw") {
  SpectralConfig cfg;
  cfg.k = 1;
  CHECK_THROWS_AS(spectral_cluster(testing::cliques(2, 3), cfg), std::invalid_argument);
  cfg.k = 7;
  CHECK_THROWS_AS(spectral_cluster(testing::cliques(2, 3), cfg), std::invalid_argument);
  cfg.k = 2;
  CHECK_THROWS_AS(spectral_cluster(Graph::from_edges(3, {}), cfg), std::invalid_argument);
}

TEST_CASE("sparse constant-degree SBM defeats spectral clustering") {
  const auto s = sample_sbm(expand({10000, 2, 2.0, 0.9}), 11);
  SpectralConfig cfg;
  CHECK(ccr(s.labels, spectral_cluster(s.graph, cfg).labels) < 0.6);
}

TEST_CASE("dense SBM is easy for spectral clustering") {
  PlantedPartitionSpec p{2000, 2, 4.5, 0.9};
  p.scaling = Scaling::kLogarithmic;
  const auto s = sample_sbm(expand(p), 12);
  SpectralConfig cfg;
  CHECK(ccr(s.labels, spectral_cluster(s.graph, cfg).labels) > 0.98);
}
