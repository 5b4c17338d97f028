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
#include <set>
#include <stdexcept>
#include <vector>

#include "vecsbm/random.hpp"

using namespace vecsbm;

TEST_CASE("stable_hash is 64-bit FNV-1a") {
  CHECK(stable_hash("") == 0xcbf29ce484222325ULL);
  CHECK(stable_hash("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(stable_hash("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("derived seeds differ across streams and masters") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 20; ++m)
    for (std::uint64_t i = 0; i < 50; ++i) seen.insert(derive_seed(m, i));
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("uniform01 stays in [0, 1) with the right mean") {
  Rng rng = make_rng(5);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(rng);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("FastRng is deterministic per seed") {
  FastRng a(11), b(11), c(12);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs = differs || x != c();
  }
  CHECK(differs);
}

namespace {

// Pearson chi-square statistic of observed counts against probabilities.
double chi_square(const std::vector<long>& counts, const std::vector<double>& p,
                  long total) {
  double x2 = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    const double e = p[i] * static_cast<double>(total);
    x2 += (counts[i] - e) * (counts[i] - e) / e;
  }
  return x2;
}

}  // namespace

TEST_CASE("alias table samples the target distribution") {
  const std::vector<double> w{1, 0, 3, 0.5, 5.5};
  const double total = 10;
  AliasTable table(w);
  REQUIRE(table.size() == 5);
  std::vector<long> counts(5, 0);
  Rng rng = make_rng(3);
  const long draws = 200000;
  for (long i = 0; i < draws; ++i) ++counts[table.sample(rng)];
  CHECK(counts[1] == 0);  // zero weight is never drawn
  std::vector<double> p;
  for (double x : w) p.push_back(x / total);
  // 3 degrees of freedom (four nonzero cells); 0.1% critical value 16.27.
  CHECK(chi_square(counts, p, draws) < 16.27);

  // Same distribution through the fast generator.
  std::fill(counts.begin(), counts.end(), 0);
  FastRng fast(9);
  for (long i = 0; i < draws; ++i) ++counts[table.sample(fast)];
  CHECK(counts[1] == 0);
  CHECK(chi_square(counts, p, draws) < 16.27);
}

TEST_CASE("alias table with a single outcome") {
  const std::vector<double> w{2.0};
  AliasTable table(w);
  Rng rng = make_rng(1);
  for (int i = 0; i < 100; ++i) CHECK(table.sample(rng) == 0u);
}

TEST_CASE("alias table rejects bad weights") {
  CHECK_THROWS_AS(AliasTable(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(AliasTable(std::vector<double>{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(AliasTable(std::vector<double>{1, -1, 2}),
                  std::invalid_argument);
}
