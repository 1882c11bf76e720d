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

#include "fincert/minimax.hpp"
#include "test_util.hpp"

using namespace fincert;
using namespace fincert::minimax;
using fincert::testutil::matrix_of_ints;

namespace {

const FamilyMatrix kMatchingPennies = matrix_of_ints({{1, -1}, {-1, 1}});
const FamilyMatrix kSkewGame = matrix_of_ints({{0, 6}, {3, 0}});

Rational mixture_max(const FamilyMatrix& a, const ProbabilityMeasure& m) {
  auto mix = integral(m, a);
  Rational best = mix[0];
  for (const auto& v : mix)
    if (v > best) best = v;
  return best;
}

Rational pairing_min(const FamilyMatrix& a, const DiscreteMeasure& h) {
  auto vals = pairing(a, h);
  Rational best = vals[0];
  for (const auto& v : vals)
    if (v < best) best = v;
  return best;
}

}  // namespace

TEST_CASE("lower value by enumeration") {
  CHECK(lower_value(matrix_of_ints({{5}})).value == 5);
  CHECK(lower_value(kMatchingPennies).value == -1);
  CHECK(lower_value(kSkewGame).value == 0);
  CHECK(upper_value(kMatchingPennies).value == 1);
  CHECK(upper_value(kSkewGame).value == 3);
}

TEST_CASE("hull minimax on a singleton") {
  auto pair = hull_minimax(matrix_of_ints({{5}}));
  CHECK(pair.value == 5);
  CHECK(pair.measure.weight_of("f1") == 1);
}

TEST_CASE("hull minimax on matching pennies equalises at zero") {
  auto pair = hull_minimax(kMatchingPennies);
  CHECK(pair.value == 0);
  CHECK(pair.measure.weight_of("f1") == Rational(1, 2));
  CHECK(pair.measure.weight_of("f2") == Rational(1, 2));
  // Both sides of the duality pair verify by re-substitution.
  CHECK(mixture_max(kMatchingPennies, pair.measure) == pair.value);
  CHECK(pairing_min(kMatchingPennies, pair.point_weights) == pair.value);
}

TEST_CASE("hull minimax with identical rows") {
  auto a = matrix_of_ints({{2, 7, 1}, {2, 7, 1}});
  auto pair = hull_minimax(a);
  CHECK(pair.value == 7);  // sup_x of the single distinct row
  CHECK(pair.measure.is_probability());
}

TEST_CASE("game value defaults to point-mass generators") {
  SECTION("matching pennies") {
    auto g = game_value(kMatchingPennies);
    CHECK(g.value == 0);
    CHECK(g.measure.weight_of("f1") == Rational(1, 2));
    CHECK(g.point_weights.weight_of("x1") == Rational(1, 2));
    CHECK(g.point_weights.weight_of("x2") == Rational(1, 2));
  }
  SECTION("constant row") {
    auto g = game_value(matrix_of_ints({{4, 4, 4}}));
    CHECK(g.value == 4);
  }
  SECTION("2x2 skew game solved in closed form") {
    // v = (0*0 - 6*3)/(0 + 0 - 6 - 3) = 2; row mix (1/3, 2/3);
    // column mix (2/3, 1/3) equalises both rows at 2.
    auto g = game_value(kSkewGame);
    CHECK(g.value == 2);
    CHECK(g.measure.weight_of("f1") == Rational(1, 3));
    CHECK(g.measure.weight_of("f2") == Rational(2, 3));
    CHECK(g.point_weights.weight_of("x1") == Rational(2, 3));
    CHECK(g.point_weights.weight_of("x2") == Rational(1, 3));
    CHECK(pairing_min(kSkewGame, g.point_weights) == 2);
  }
  SECTION("empty generator list is an error") {
    CHECK_THROWS_AS(game_value(kSkewGame, std::vector<DiscreteMeasure>{}),
                    std::invalid_argument);
  }
}

TEST_CASE("game value with explicit generators") {
  // Restricting H to a single generator turns the game into a plain
  // minimisation of <f, h> over f.
  auto h = DiscreteMeasure({"x1", "x2"}, {Rational(1, 4), Rational(3, 4)});
  auto g = game_value(kSkewGame, std::vector<DiscreteMeasure>{h});
  // <f1,h> = 18/4, <f2,h> = 3/4 -> value 3/4
  CHECK(g.value == Rational(3, 4));
  CHECK(g.point_weights.weight_of("x1") == Rational(1, 4));
}

TEST_CASE("concave-likeness decision") {
  SECTION("single column is concave-like") {
    CHECK(is_concave_like(matrix_of_ints({{3}, {1}})).concave_like);
  }
  SECTION("monotone rows are concave-like") {
    CHECK(is_concave_like(matrix_of_ints({{0, 1, 5}, {2, 2, 3}, {-1, 0, 0}}))
              .concave_like);
  }
  SECTION("matching pennies fails around t = 1/2") {
    auto r = is_concave_like(kMatchingPennies);
    REQUIRE_FALSE(r.concave_like);
    REQUIRE(r.violation.has_value());
    CHECK(r.violation->gap_lo < Rational(1, 2));
    CHECK(r.violation->gap_hi > Rational(1, 2));
  }
}

TEST_CASE("sub-barycentre search") {
  SECTION("a point is its own barycentre") {
    auto m = DiscreteMeasure::point_mass("x2");
    auto r = find_sub_barycentre(kSkewGame, m);
    REQUIRE(r.has_value());
    CHECK(*r == "x2");
  }
  SECTION("minimum of a nondecreasing row is dominated by the average") {
    auto a = matrix_of_ints({{1, 2, 6}});
    auto m = DiscreteMeasure::uniform({"x1", "x2", "x3"});
    auto r = find_sub_barycentre(a, m);
    REQUIRE(r.has_value());
    CHECK(*r == "x1");
  }
  SECTION("matching pennies has no sub-barycentre for the uniform mixture") {
    auto m = DiscreteMeasure::uniform({"x1", "x2"});
    CHECK_FALSE(find_sub_barycentre(kMatchingPennies, m).has_value());
  }
  SECTION("a found point verifies by re-substitution") {
    std::mt19937_64 rng(777);
    for (int k = 0; k < 50; ++k) {
      auto a = testutil::random_family(rng, {5, 5});
      std::vector<Rational> w(a.cols(), Rational(1, a.cols()));
      DiscreteMeasure m(a.col_labels(), w);
      auto r = find_sub_barycentre(a, m);
      if (!r) continue;
      auto bary = integral(m, a.transposed());
      std::size_t x = a.col_index(*r);
      for (std::size_t f = 0; f < a.rows(); ++f) REQUIRE(a.at(f, x) <= bary[f]);
    }
  }
}

TEST_CASE("local minimax") {
  SECTION("whole family reproduces hull minimax") {
    auto r = local_minimax(kSkewGame, {{"f1", "f2"}});
    CHECK(r.value == hull_minimax(kSkewGame).value);
  }
  SECTION("singleton subfamilies give the upper value") {
    auto r = local_minimax(kSkewGame, {{"f1"}, {"f2"}});
    CHECK(r.value == 3);  // min(max f1, max f2) = min(6, 3)
    CHECK(r.best_index == 1);
    CHECK(r.measure.weight_of("f2") == 1);
    CHECK(r.value == upper_value(kSkewGame).value);
  }
  SECTION("attaining measure vanishes outside its subfamily") {
    auto a = matrix_of_ints({{0, 9}, {8, 0}, {4, 4}});
    auto r = local_minimax(a, {{"f1", "f2"}, {"f3"}});
    for (const auto& label : r.measure.support())
      CHECK((label == (r.best_index == 0 ? "f1" : "f3") ||
             label == (r.best_index == 0 ? "f2" : "f3")));
  }
  SECTION("empty subfamily list is an error") {
    CHECK_THROWS_AS(local_minimax(kSkewGame, {}), std::invalid_argument);
  }
}

TEST_CASE("value chain inequalities on random instances") {
  std::mt19937_64 rng(20260811);
  for (int k = 0; k < 60; ++k) {
    auto a = testutil::random_family(rng, {6, 6});
    auto lo = lower_value(a);
    auto up = upper_value(a);
    auto pair = hull_minimax(a);
    REQUIRE(lo.value <= pair.value);
    REQUIRE(pair.value <= up.value);
    // Duality pair re-substitutes exactly on both sides.
    REQUIRE(mixture_max(a, pair.measure) == pair.value);
    REQUIRE(pairing_min(a, pair.point_weights) == pair.value);
    // The bilinear game with H = Delta(X) computes the same value.
    auto g = game_value(a);
    REQUIRE(g.value == pair.value);
  }
}

TEST_CASE("concave-like families reach the lower value exactly") {
  std::mt19937_64 rng(1311);
  for (int k = 0; k < 40; ++k) {
    auto a = k % 2 == 0 ? testutil::random_monotone_family(rng)
                        : testutil::random_max_closed_family(rng);
    REQUIRE(is_concave_like(a).concave_like);
    auto pair = hull_minimax(a);
    REQUIRE(pair.value == lower_value(a).value);
    // The transposed orientation admits a sub-barycentre for the
    // attained measure, which closes the chain upper == lower when it
    // exists alongside concave-likeness.
    auto sb = find_sub_barycentre(a.transposed(), pair.measure);
    REQUIRE(sb.has_value());
  }
}

TEST_CASE("scale equivariance of the three values") {
  std::mt19937_64 rng(5150);
  for (int k = 0; k < 20; ++k) {
    auto a = testutil::random_family(rng, {5, 5});
    Rational c(3, 2);
    auto b = a.scaled(c);
    CHECK(lower_value(b).value == c * lower_value(a).value);
    CHECK(upper_value(b).value == c * upper_value(a).value);
    auto pa = hull_minimax(a);
    auto pb = hull_minimax(b);
    CHECK(pb.value == c * pa.value);
    // Certificates stay valid; equality of bases is not promised.
    CHECK(mixture_max(b, pb.measure) == pb.value);
  }
}

TEST_CASE("analyze bundles the report") {
  auto r = analyze(kMatchingPennies);
  CHECK(r.lower == -1);
  CHECK(r.upper == 1);
  CHECK(r.hull_value == 0);
  CHECK_FALSE(r.concave_like);
  CHECK_FALSE(r.sub_barycentre.has_value());
  CHECK(r.optimal_measure.weight_of("f1") == Rational(1, 2));
}
