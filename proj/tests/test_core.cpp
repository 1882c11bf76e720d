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

#include "fincert/core.hpp"

using namespace fincert;

namespace {

FamilyMatrix two_by_two(int a, int b, int c, int d) {
  return FamilyMatrix({"f1", "f2"}, {"x1", "x2"},
                      {{Rational(a), Rational(b)}, {Rational(c), Rational(d)}});
}

}  // namespace

TEST_CASE("family matrix invariants") {
  CHECK_THROWS_AS(FamilyMatrix({}, {"x"}, {}), DimensionError);
  CHECK_THROWS_AS(FamilyMatrix({"f"}, {"x", "x"}, {{Rational(0), Rational(0)}}),
                  LabelError);
  CHECK_THROWS_AS(FamilyMatrix({"f"}, {"x", "y"}, {{Rational(0)}}), DimensionError);

  auto a = two_by_two(1, 2, 3, 4);
  CHECK(a.at(a.row_index("f2"), a.col_index("x1")) == 3);
  CHECK_THROWS_AS(a.row_index("nope"), LabelError);

  auto t = a.transposed();
  CHECK(t.rows() == 2);
  CHECK(t.at(t.row_index("x2"), t.col_index("f1")) == 2);
}

TEST_CASE("integral of a point mass is the matching row") {
  auto a = two_by_two(1, 3, 3, 1);
  auto m = DiscreteMeasure::point_mass("f2");
  auto v = integral(m, a);
  CHECK(v[0] == 3);
  CHECK(v[1] == 1);
}

TEST_CASE("integral of symmetric mixture") {
  auto a = two_by_two(1, 3, 3, 1);
  auto m = DiscreteMeasure({"f1", "f2"}, {Rational(1, 2), Rational(1, 2)});
  auto v = integral(m, a);
  CHECK(v[0] == 2);
  CHECK(v[1] == 2);
}

TEST_CASE("integral of weighted mixture") {
  auto a = two_by_two(0, 6, 3, 0);
  auto m = DiscreteMeasure({"f1", "f2"}, {Rational(1, 3), Rational(2, 3)});
  auto v = integral(m, a);
  CHECK(v[0] == 2);  // 1/3*0 + 2/3*3
  CHECK(v[1] == 2);  // 1/3*6 + 2/3*0
}

TEST_CASE("integral rejects unknown support labels") {
  auto a = two_by_two(0, 6, 3, 0);
  auto m = DiscreteMeasure::point_mass("g");
  CHECK_THROWS_AS(integral(m, a), LabelError);
}

TEST_CASE("integral is affine in the measure") {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> coef(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  auto a = FamilyMatrix(
      {"f1", "f2", "f3"}, {"x1", "x2"},
      {{Rational(coef(rng), den(rng)), Rational(coef(rng), den(rng))},
       {Rational(coef(rng), den(rng)), Rational(coef(rng), den(rng))},
       {Rational(coef(rng), den(rng)), Rational(coef(rng), den(rng))}});
  auto m1 = DiscreteMeasure({"f1", "f3"}, {Rational(1, 4), Rational(3, 4)});
  auto m2 = DiscreteMeasure({"f2"}, {Rational(1)});
  for (const auto& t : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}) {
    auto mix = DiscreteMeasure::convex_combination(m1, m2, t);
    auto lhs = integral(mix, a);
    auto v1 = integral(m1, a);
    auto v2 = integral(m2, a);
    for (std::size_t x = 0; x < a.cols(); ++x)
      REQUIRE(lhs[x] == t * v1[x] + (1 - t) * v2[x]);
  }
}

TEST_CASE("finite approximation returns the support itself, exactly") {
  auto a = two_by_two(1, 3, 3, 1);

  SECTION("point mass") {
    auto m = DiscreteMeasure::point_mass("x1");
    auto fa = finite_approximation(m, a);
    REQUIRE(fa.points == std::vector<std::string>{"x1"});
    REQUIRE(fa.weights == std::vector<Rational>{Rational(1)});
  }
  SECTION("uniform pair") {
    auto m = DiscreteMeasure::uniform({"x1", "x2"});
    auto fa = finite_approximation(m, a);
    REQUIRE(fa.points.size() == 2);
    CHECK(fa.weights[0] == Rational(1, 2));
    CHECK(fa.weights[1] == Rational(1, 2));
  }
  SECTION("the approximation error is zero for every row") {
    auto m = DiscreteMeasure({"x1", "x2"}, {Rational(2, 7), Rational(5, 7)});
    auto fa = finite_approximation(m, a);
    // sup_f |int f dm - sum_j f(x_j) alpha_j| == 0
    for (std::size_t f = 0; f < a.rows(); ++f) {
      Rational direct = 0;
      for (std::size_t i = 0; i < m.size(); ++i)
        direct += m.weights()[i] * a.at(f, a.col_index(m.support()[i]));
      Rational recon = 0;
      for (std::size_t j = 0; j < fa.points.size(); ++j)
        recon += fa.weights[j] * a.at(f, a.col_index(fa.points[j]));
      REQUIRE(direct == recon);
    }
  }
  SECTION("non-probability rejected") {
    auto m = DiscreteMeasure({"x1"}, {Rational(1, 2)});
    CHECK_THROWS(finite_approximation(m, a));
  }
}

TEST_CASE("measure basics") {
  CHECK_THROWS(DiscreteMeasure({"a"}, {Rational(-1)}));
  auto m = DiscreteMeasure({"a", "b", "c"}, {Rational(1, 2), Rational(0), Rational(1, 2)});
  CHECK(m.is_probability());
  CHECK(m.weight_of("b") == 0);
  CHECK(m.weight_of("zzz") == 0);
  auto t = m.trimmed();
  CHECK(t.size() == 2);
  CHECK(t.weight_of("c") == Rational(1, 2));
}
