// Copyright 2026 The fincert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fincert/lp.hpp"

using namespace fincert;
using namespace fincert::lp;

TEST_CASE("max x subject to x <= 1 is optimal at 1") {
  auto p = StandardLp::with_variables(1, Sense::Maximize);
  p.objective = {Rational(1)};
  p.add_row({Rational(1)}, Relation::LessEq, Rational(1));

  LpOutcome out = solve(p);
  REQUIRE(out.is_optimal());
  CHECK(out.optimal().primal[0] == 1);
  CHECK(out.optimal().value == 1);
  CHECK(verify_optimal(p, out.optimal()));
}

TEST_CASE("same instance expressed through a variable upper bound") {
  auto p = StandardLp::with_variables(1, Sense::Maximize);
  p.objective = {Rational(1)};
  p.upper[0] = Rational(1);

  LpOutcome out = solve(p);
  REQUIRE(out.is_optimal());
  CHECK(out.optimal().primal[0] == 1);
  CHECK(out.optimal().value == 1);
  CHECK(verify_optimal(p, out.optimal()));
}

TEST_CASE("max x with no upper constraint is unbounded") {
  auto p = StandardLp::with_variables(1, Sense::Maximize);
  p.objective = {Rational(1)};

  LpOutcome out = solve(p);
  REQUIRE(out.is_unbounded());
  CHECK(verify_unbounded(p, out.unbounded()));
}

TEST_CASE("x >= 1 together with x <= 0 is infeasible with a Farkas ray") {
  auto p = StandardLp::with_variables(1);
  p.add_row({Rational(1)}, Relation::GreaterEq, Rational(1));
  p.add_row({Rational(1)}, Relation::LessEq, Rational(0));

  LpOutcome out = solve(p);
  REQUIRE(out.is_infeasible());
  const auto& y = out.infeasible().farkas;
  REQUIRE(y.size() == 2);
  // The combination y_1*(x >= 1) + |y_2|*(-x >= 0) aggregates to
  // 0 >= positive: a contradictory row.
  CHECK(y[0] > 0);
  CHECK(y[1] < 0);
  CHECK(y[0] * Rational(1) + y[1] * Rational(1) == 0);
  CHECK(y[0] * Rational(1) + y[1] * Rational(0) > 0);
  CHECK(verify_farkas(p, y));
}

TEST_CASE("zero rows and untouched columns are handled, not errors") {
  auto p = StandardLp::with_variables(2);
  p.objective = {Rational(1), Rational(0)};
  p.add_row({Rational(0), Rational(0)}, Relation::LessEq, Rational(3));
  p.add_row({Rational(1), Rational(0)}, Relation::GreaterEq, Rational(2));

  LpOutcome out = solve(p);
  REQUIRE(out.is_optimal());
  CHECK(out.optimal().value == 2);
  CHECK(verify_optimal(p, out.optimal()));

  SECTION("an all-zero row with negative rhs is infeasible") {
    auto q = StandardLp::with_variables(1);
    q.add_row({Rational(0)}, Relation::LessEq, Rational(-1));
    LpOutcome bad = solve(q);
    REQUIRE(bad.is_infeasible());
    CHECK(verify_farkas(q, bad.infeasible().farkas));
  }
}

TEST_CASE("free variables and equality rows") {
  // min t subject to t >= 3 - x, t >= x - 1, x = 2, t free.
  auto p = StandardLp::with_variables(2);
  p.objective = {Rational(0), Rational(1)};
  p.lower[1] = std::nullopt;
  p.add_row({Rational(1), Rational(1)}, Relation::GreaterEq, Rational(3));
  p.add_row({Rational(-1), Rational(1)}, Relation::GreaterEq, Rational(-1));
  p.add_row({Rational(1), Rational(0)}, Relation::Equal, Rational(2));

  LpOutcome out = solve(p);
  REQUIRE(out.is_optimal());
  CHECK(out.optimal().primal[0] == 2);
  CHECK(out.optimal().primal[1] == 1);
  CHECK(out.optimal().value == 1);
  CHECK(verify_optimal(p, out.optimal()));
}

TEST_CASE("negative lower bounds shift correctly") {
  // min x + y with x >= -3, y in [-1, 5], x + y >= -2.
  auto p = StandardLp::with_variables(2);
  p.objective = {Rational(1), Rational(1)};
  p.lower[0] = Rational(-3);
  p.lower[1] = Rational(-1);
  p.upper[1] = Rational(5);
  p.add_row({Rational(1), Rational(1)}, Relation::GreaterEq, Rational(-2));

  LpOutcome out = solve(p);
  REQUIRE(out.is_optimal());
  CHECK(out.optimal().value == -2);
  CHECK(verify_optimal(p, out.optimal()));
}

TEST_CASE("crossed bounds are rejected as malformed") {
  auto p = StandardLp::with_variables(1);
  p.lower[0] = Rational(2);
  p.upper[0] = Rational(1);
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
}

TEST_CASE("determinism: identical instances give identical outcomes") {
  auto p = StandardLp::with_variables(3, Sense::Maximize);
  p.objective = {Rational(3), Rational(1), Rational(2)};
  p.add_row({Rational(1), Rational(1), Rational(3)}, Relation::LessEq, Rational(30));
  p.add_row({Rational(2), Rational(2), Rational(5)}, Relation::LessEq, Rational(24));
  p.add_row({Rational(4), Rational(1), Rational(2)}, Relation::LessEq, Rational(36));

  LpOutcome a = solve(p);
  LpOutcome b = solve(p);
  REQUIRE(a.is_optimal());
  REQUIRE(b.is_optimal());
  CHECK(a.optimal().primal == b.optimal().primal);
  CHECK(a.optimal().dual == b.optimal().dual);
  CHECK(a.optimal().value == b.optimal().value);
  CHECK(a.optimal().value == 28);  // classic CLRS instance
  CHECK(verify_optimal(p, a.optimal()));
}

namespace {

StandardLp random_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> rel(0, 2);
  std::uniform_int_distribution<int> kind(0, 9);

  std::size_t n = dim(rng), m = dim(rng);
  auto p = StandardLp::with_variables(n);
  std::bernoulli_distribution maximize(0.5);
  if (maximize(rng)) p.sense = Sense::Maximize;
  for (std::size_t j = 0; j < n; ++j) {
    p.objective[j] = Rational(coef(rng), den(rng));
    int k = kind(rng);
    if (k == 0) p.lower[j] = std::nullopt;            // free
    else if (k == 1) p.lower[j] = Rational(coef(rng));  // shifted
    if (k == 2) p.upper[j] = Rational(std::abs(coef(rng)) + 4);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Rational> row(n);
    for (auto& e : row) e = Rational(coef(rng), den(rng));
    p.add_row(std::move(row), static_cast<Relation>(rel(rng)),
              Rational(coef(rng), den(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("random LPs: every outcome verifies exactly") {
  std::mt19937_64 rng(987654321);
  int optimal = 0, infeasible = 0, unbounded = 0;
  for (int k = 0; k < 400; ++k) {
    StandardLp p = random_lp(rng);
    LpOutcome out = solve(p);
    if (out.is_optimal()) {
      ++optimal;
      REQUIRE(verify_optimal(p, out.optimal()));
    } else if (out.is_infeasible()) {
      ++infeasible;
      REQUIRE(verify_farkas(p, out.infeasible().farkas));
    } else {
      ++unbounded;
      REQUIRE(verify_unbounded(p, out.unbounded()));
    }
  }
  // All three outcome kinds must actually occur for this test to mean
  // anything.
  CHECK(optimal > 20);
  CHECK(infeasible > 20);
  CHECK(unbounded > 20);
}
