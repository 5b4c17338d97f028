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

#ifndef VECSBM_PIPELINE_HPP_
#define VECSBM_PIPELINE_HPP_

#include <cstdint>

#include "vecsbm/embedding.hpp"
#include "vecsbm/graph.hpp"
#include "vecsbm/kmeans.hpp"

namespace vecsbm {

// Walks -> skip-gram embedding -> K-means.
struct VecConfig {
  int walks_per_node = 10;  // r
  int walk_length = 60;     // nodes per walk
  int window = 8;           // w
  TrainConfig train;        // d = 50, m = 5 by default
  int kmeans_restarts = 10;
  int threads = 1;
};

struct VecResult {
  LabelVector labels;
  EmbeddingMatrix<float> embedding;
};

// All randomness (walks, SGD, K-means) derives from `seed`.
VecResult run_vec(const Graph& g, int k, const VecConfig& cfg,
                  std::uint64_t seed);

}  // namespace vecsbm

#endif  // VECSBM_PIPELINE_HPP_
