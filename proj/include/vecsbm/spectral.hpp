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

#ifndef VECSBM_SPECTRAL_HPP_
#define VECSBM_SPECTRAL_HPP_

#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "vecsbm/graph.hpp"

namespace vecsbm {

class EigenSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// D^{-1/2} W D^{-1/2} with zero rows/columns for zero-degree nodes.
Eigen::SparseMatrix<double> normalized_adjacency(const Graph& g);

// I - D^{-1/2} W D^{-1/2}; zero-degree nodes keep a 1 on the diagonal.
Eigen::SparseMatrix<double> normalized_laplacian(const Graph& g);

struct EigenPairs {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // orthonormal columns
  int matvecs = 0;
};

// k algebraically largest eigenpairs of a symmetric sparse matrix. Lanczos
// with full reorthogonalization, one pair locked per outer round so repeated
// eigenvalues are found. Throws EigenSolverError when a pair does not reach
// ||A x - theta x|| <= tolerance within max_restarts.
EigenPairs largest_eigenpairs(const Eigen::SparseMatrix<double>& a, int k,
                              double tolerance = 1e-8, std::uint64_t seed = 1,
                              int max_restarts = 200);

struct SpectralConfig {
  int k = 2;
  double tolerance = 1e-8;
  std::uint64_t seed = 1;
  int kmeans_restarts = 10;
};

struct SpectralResult {
  LabelVector labels;
  Eigen::VectorXd laplacian_eigenvalues;  // ascending
  Eigen::MatrixXd embedding;              // row-normalized, n x K
};

// Normalized spectral clustering on the K smallest eigenvectors of the
// normalized Laplacian. Zero-degree nodes get zero rows and join the largest
// cluster.
SpectralResult spectral_cluster(const Graph& g, const SpectralConfig& cfg);

}  // namespace vecsbm

#endif  // VECSBM_SPECTRAL_HPP_
