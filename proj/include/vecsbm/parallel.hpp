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

#ifndef VECSBM_PARALLEL_HPP_
#define VECSBM_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace vecsbm {

// Thread count from VECSBM_THREADS, else 1.
inline int default_threads() {
  if (const char* env = std::getenv("VECSBM_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (...) {
    }
  }
  return 1;
}

// Splits [0, count) into `threads` contiguous chunks and runs
// fn(begin, end, chunk_index) on each. Runs inline for one thread. The first
// exception thrown by a worker is rethrown after all workers finish.
template <typename Fn>
void parallel_chunks(std::size_t count, int threads, Fn&& fn) {
  const auto chunks = static_cast<std::size_t>(
      std::clamp<long long>(threads, 1, std::max<long long>(1, count)));
  if (chunks <= 1) {
    fn(std::size_t{0}, count, std::size_t{0});
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t begin = count * c / chunks;
      const std::size_t end = count * (c + 1) / chunks;
      pool.emplace_back([&, begin, end, c] {
        try {
          fn(begin, end, c);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace vecsbm

#endif  // VECSBM_PARALLEL_HPP_
