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

#include "vecsbm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "vecsbm/kmeans.hpp"
#include "vecsbm/random.hpp"

namespace vecsbm {
namespace {

Eigen::VectorXd inv_sqrt_degrees(const Graph& g) {
  Eigen::VectorXd s(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const double d = g.weighted_degree(v);
    s[v] = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  return s;
}

Eigen::VectorXd random_unit(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = normal(rng);
  return x.normalized();
}

// Removes the components along the first `count` columns of `basis`.
void orthogonalize(Eigen::VectorXd& x, const Eigen::MatrixXd& basis,
                   Eigen::Index count) {
  if (count == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd coef = basis.leftCols(count).transpose() * x;
    x.noalias() -= basis.leftCols(count) * coef;
  }
}

EigenPairs dense_largest(const Eigen::SparseMatrix<double>& a, int k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(a)};
  if (es.info() != Eigen::Success)
    throw EigenSolverError("dense eigensolver failed");
  const Eigen::Index n = a.rows();
  EigenPairs out;
  out.values = es.eigenvalues().tail(k).reverse();
  out.vectors = es.eigenvectors().rightCols(k).rowwise().reverse();
  out.matvecs = static_cast<int>(n);
  return out;
}

}  // namespace

Eigen::SparseMatrix<double> normalized_adjacency(const Graph& g) {
  const Eigen::VectorXd s = inv_sqrt_degrees(g);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * g.num_edges());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto nb = g.neighbors(u);
    const auto wt = g.weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
      entries.emplace_back(u, nb[i], s[u] * wt[i] * s[nb[i]]);
  }
  Eigen::SparseMatrix<double> a(g.num_nodes(), g.num_nodes());
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

Eigen::SparseMatrix<double> normalized_laplacian(const Graph& g) {
  Eigen::SparseMatrix<double> id(g.num_nodes(), g.num_nodes());
  id.setIdentity();
  return id - normalized_adjacency(g);
}

EigenPairs largest_eigenpairs(const Eigen::SparseMatrix<double>& a, int k,
                              double tolerance, std::uint64_t seed,
                              int max_restarts) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("matrix must be square");
  if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
  if (n <= 300) return dense_largest(a, k);

  Rng rng = make_rng(seed, 0x6c616e);
  EigenPairs out;
  out.values.resize(k);
  out.vectors.resize(n, k);
  const Eigen::Index max_basis = std::min<Eigen::Index>(n - k, 1000);

  for (int found = 0; found < k; ++found) {
    Eigen::Index m = std::min<Eigen::Index>(max_basis, std::max(64, 4 * k));
    Eigen::VectorXd start = random_unit(n, rng);
    double residual = 0.0;
    double theta = 0.0;
    int restart = 0;
    for (;; ++restart) {
      orthogonalize(start, out.vectors, found);
      if (start.norm() < 1e-8) {
        start = random_unit(n, rng);
        orthogonalize(start, out.vectors, found);
      }
      start.normalize();

      Eigen::MatrixXd basis(n, m + 1);
      Eigen::VectorXd alpha(m), beta(m);
      basis.col(0) = start;
      Eigen::Index steps = m;
      Eigen::VectorXd w(n);
      for (Eigen::Index j = 0; j < m; ++j) {
        w.noalias() = a * basis.col(j);
        ++out.matvecs;
        alpha[j] = basis.col(j).dot(w);
        w -= alpha[j] * basis.col(j);
        if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
        orthogonalize(w, out.vectors, found);
        orthogonalize(w, basis, j + 1);
        beta[j] = w.norm();
        if (beta[j] < 1e-10) {  // invariant subspace
          steps = j + 1;
          break;
        }
        basis.col(j + 1) = w / beta[j];
      }

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(alpha.head(steps), beta.head(steps - 1),
                                 Eigen::ComputeEigenvectors);
      theta = tri.eigenvalues()[steps - 1];
      Eigen::VectorXd y = basis.leftCols(steps) * tri.eigenvectors().col(steps - 1);
      y.normalize();
      const Eigen::VectorXd r = a * y - theta * y;
      ++out.matvecs;
      residual = r.norm();
      if (residual <= tolerance) {
        orthogonalize(y, out.vectors, found);
        out.vectors.col(found) = y.normalized();
        out.values[found] = theta;
        break;
      }
      if (restart >= max_restarts) {
        std::ostringstream msg;
        msg << "Lanczos did not converge for eigenpair " << found + 1 << " of "
            << k << ": residual " << residual << " > " << tolerance << " after "
            << restart + 1 << " restarts, " << out.matvecs
            << " matrix-vector products (basis " << m << ")";
        throw EigenSolverError(msg.str());
      }
      start = y;
      m = std::min(max_basis, 2 * m);
    }
  }
  return out;
}

SpectralResult spectral_cluster(const Graph& g, const SpectralConfig& cfg) {
  const NodeId n = g.num_nodes();
  if (cfg.k < 2) throw std::invalid_argument("spectral clustering needs K >= 2");
  if (static_cast<NodeId>(cfg.k) > n)
    throw std::invalid_argument("K exceeds the number of nodes");

  const EigenPairs pairs =
      largest_eigenpairs(normalized_adjacency(g), cfg.k, cfg.tolerance, cfg.seed);
  SpectralResult result;
  result.laplacian_eigenvalues = (1.0 - pairs.values.array()).matrix();
  result.embedding = pairs.vectors;

  std::vector<NodeId> active;
  for (NodeId v = 0; v < n; ++v) {
    const double norm = result.embedding.row(v).norm();
    if (g.degree(v) == 0 || norm == 0.0) {
      result.embedding.row(v).setZero();
    } else {
      result.embedding.row(v) /= norm;
      active.push_back(v);
    }
  }
  if (active.size() < static_cast<std::size_t>(cfg.k))
    throw std::invalid_argument("fewer non-isolated nodes than clusters");

  Eigen::MatrixXd rows(static_cast<Eigen::Index>(active.size()), cfg.k);
  for (std::size_t i = 0; i < active.size(); ++i)
    rows.row(static_cast<Eigen::Index>(i)) = result.embedding.row(active[i]);
  KMeansConfig kc;
  kc.k = cfg.k;
  kc.restarts = cfg.kmeans_restarts;
  kc.seed = cfg.seed;
  const KMeansResult km = kmeans(rows, kc);

  const auto sizes = km.labels.community_sizes();
  const int largest = static_cast<int>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin()) + 1;
  std::vector<int> labels(n, largest);
  for (std::size_t i = 0; i < active.size(); ++i) labels[active[i]] = km.labels[i];
  // Renumber by first appearance over all nodes.
  std::vector<int> relabel(static_cast<std::size_t>(cfg.k) + 1, 0);
  int next = 0;
  for (int& l : labels) {
    if (relabel[static_cast<std::size_t>(l)] == 0) relabel[static_cast<std::size_t>(l)] = ++next;
    l = relabel[static_cast<std::size_t>(l)];
  }
  result.labels = LabelVector(std::move(labels), cfg.k);
  return result;
}

}  // namespace vecsbm
