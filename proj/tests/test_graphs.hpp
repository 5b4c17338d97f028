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


// Small graphs shared by the unit tests.

#ifndef VECSBM_TESTS_TEST_GRAPHS_HPP_
#define VECSBM_TESTS_TEST_GRAPHS_HPP_

#include <vector>

#include "vecsbm/graph.hpp"

namespace vecsbm::testing {

inline Graph make_graph(NodeId n, std::vector<Edge> edges) {
  return Graph::from_edges(n, edges);
}

inline Graph cycle(NodeId n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return make_graph(n, e);
}

// `count` disjoint cliques of `size` nodes; node i is in clique i / size.
inline Graph cliques(NodeId count, NodeId size) {
  std::vector<Edge> e;
  for (NodeId c = 0; c < count; ++c)
    for (NodeId i = 0; i < size; ++i)
      for (NodeId j = i + 1; j < size; ++j)
        e.push_back({c * size + i, c * size + j});
  return make_graph(count * size, e);
}

inline LabelVector clique_labels(NodeId count, NodeId size) {
  std::vector<int> l;
  for (NodeId c = 0; c < count; ++c)
    for (NodeId i = 0; i < size; ++i) l.push_back(static_cast<int>(c) + 1);
  return LabelVector(l, static_cast<int>(count));
}

}  // namespace vecsbm::testing

#endif  // VECSBM_TESTS_TEST_GRAPHS_HPP_
