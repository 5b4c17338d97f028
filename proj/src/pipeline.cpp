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

#include "vecsbm/pipeline.hpp"

#include "vecsbm/corpus.hpp"

namespace vecsbm {

VecResult run_vec(const Graph& g, int k, const VecConfig& cfg,
                  std::uint64_t seed) {
  const WalkCorpus corpus = generate_walks(g, cfg.walks_per_node,
                                           cfg.walk_length,
                                           derive_seed(seed, 1), cfg.threads);
  TrainConfig train = cfg.train;
  train.seed = derive_seed(seed, 2);
  train.threads = cfg.threads;
  auto model = sgd_train<float>(corpus, cfg.window, train);

  KMeansConfig kc;
  kc.k = k;
  kc.restarts = cfg.kmeans_restarts;
  kc.seed = derive_seed(seed, 3);
  kc.threads = cfg.threads;
  VecResult result;
  result.labels = kmeans(model.center, kc).labels;
  result.embedding = std::move(model.center);
  return result;
}

}  // namespace vecsbm
