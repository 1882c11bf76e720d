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

#include <catch2/catch_amalgamated.hpp>

#include "fincert/certificate.hpp"
#include "fincert/oracle.hpp"
#include "test_util.hpp"

using namespace fincert;
using certificate::Context;
using certificate::Status;

namespace {

Json family_json(std::initializer_list<const char*> points,
                 std::initializer_list<std::pair<const char*, std::vector<int>>> fns) {
  Json j;
  j["points"] = Json::array();
  for (const char* p : points) j["points"].push_back(p);
  j["functions"] = Json::array();
  for (const auto& [name, values] : fns) {
    Json f;
    f["name"] = name;
    f["values"] = values;
    j["functions"].push_back(std::move(f));
  }
  return j;
}

// Increment the numerator of one rational scalar: the smallest possible
// data corruption a certificate can suffer.
Json bump_scalar(const Json& j) {
  Rational r = scalar_from_json(j) + Rational(1, 1000000);
  return scalar_to_json(r);
}

}  // namespace

TEST_CASE("minimax certificate round trip and tampering") {
  Json raw = family_json({"x1", "x2"}, {{"f1", {1, -1}}, {"f2", {-1, 1}}});
  FamilyMatrix a = family_from_json(raw);
  auto report = minimax::analyze(a);
  Json cert = certificate::make_minimax(raw, a, report, true);

  Context ctx{raw, {}, {}};
  CHECK(certificate::verify(cert, ctx).ok());

  SECTION("hash pins the instance") {
    Json other = family_json({"x1", "x2"}, {{"f1", {1, -1}}, {"f2", {-1, 2}}});
    auto out = certificate::verify(cert, Context{other, {}, {}});
    CHECK(out.status == Status::HashMismatch);
  }
  SECTION("whitespace-only reformatting keeps the hash") {
    Json reparsed = Json::parse(raw.dump(4));
    CHECK(certificate::verify(cert, Context{reparsed, {}, {}}).ok());
  }
  SECTION("any scalar perturbation fails") {
    for (const char* field : {"lower", "upper", "hull_value"}) {
      Json bad = cert;
      bad[field] = bump_scalar(bad[field]);
      CHECK_FALSE(certificate::verify(bad, ctx).ok());
    }
    Json bad = cert;
    bad["optimal_measure"]["f1"] = bump_scalar(bad["optimal_measure"]["f1"]);
    CHECK_FALSE(certificate::verify(bad, ctx).ok());
  }
}

TEST_CASE("domination certificate, both branches") {
  Json raw = family_json({"x1", "x2"}, {{"e1", {1, 0}}, {"e2", {0, 1}}});
  raw["targets"] = Json::array();

  SECTION("dominating measure") {
    raw["targets"].push_back({{"name", "mid"}, {"values", {"1/2", "1/2"}}});
    domination::DominationInstance inst(family_from_json(raw),
                                        family_from_json(raw, "targets"));
    Json cert = certificate::make_domination(
        raw, domination::find_dominating_measure(inst));
    Context ctx{raw, {}, {}};
    REQUIRE(cert["branch"] == "dominating_measure");
    CHECK(certificate::verify(cert, ctx).ok());

    Json bad = cert;
    bad["measure"]["e1"] = bump_scalar(bad["measure"]["e1"]);
    CHECK_FALSE(certificate::verify(bad, ctx).ok());
  }
  SECTION("balance violation") {
    raw["targets"].push_back({{"name", "ones"}, {"values", {1, 1}}});
    domination::DominationInstance inst(family_from_json(raw),
                                        family_from_json(raw, "targets"));
    Json cert = certificate::make_domination(
        raw, domination::find_dominating_measure(inst));
    Context ctx{raw, {}, {}};
    REQUIRE(cert["branch"] == "balance_violation");
    CHECK(certificate::verify(cert, ctx).ok());

    // Shrinking the delta mass invalidates the pair.
    Json bad = cert;
    bad["pairs"][0]["delta"]["x1"] = bump_scalar(bad["pairs"][0]["delta"]["x1"]);
    CHECK_FALSE(certificate::verify(bad, ctx).ok());
  }
}

TEST_CASE("hull certificate round trip") {
  Json raw = family_json({"x1", "x2"}, {{"e1", {1, 0}}, {"e2", {0, 1}}});
  FamilyMatrix a = family_from_json(raw);
  Context ctx{raw, {}, {}};

  std::vector<Rational> inside{Rational(1, 2), Rational(1, 2)};
  Json cin_ = certificate::make_hull(raw, inside, domination::hull_membership(a, inside));
  CHECK(certificate::verify(cin_, ctx).ok());

  std::vector<Rational> outside{Rational(1), Rational(1)};
  Json cout_ = certificate::make_hull(raw, outside, domination::hull_membership(a, outside));
  REQUIRE(cout_["branch"] == "not_in_hull");
  CHECK(certificate::verify(cout_, ctx).ok());

  Json bad = cout_;
  bad["weights"][0] = bump_scalar(bad["weights"][0]);
  // A slightly moved separator usually still separates; moving the
  // target breaks the pairing against the recorded branch instead.
  bad = cout_;
  bad["target"][0] = "0";
  CHECK_FALSE(certificate::verify(bad, ctx).ok());
}

TEST_CASE("fan certificate round trip including the l2 float path") {
  Json raw;
  raw["points"] = {{1, 0}, {-1, 0}};
  raw["g"] = {1, 1};
  FanInstance inst = fan_from_json(raw);
  auto result = domination::fan_norm_domination(inst.points, inst.g, Rational(2),
                                                domination::PolyNorm::L1);
  Json cert = certificate::make_fan(raw, Rational(2), domination::PolyNorm::L1, result);
  Context ctx{raw, {}, {}};
  REQUIRE(cert["branch"] == "violation");
  CHECK(certificate::verify(cert, ctx).ok());
  CHECK(oracle::float_check(cert, ctx, 1e-9));

  SECTION("the same witness read in the euclidean norm") {
    Json l2 = cert;
    l2["norm"] = "l2";
    l2.erase("margin");  // euclidean margins are not rational
    certificate::seal(l2);
    // sum p_i g_i = 1 > 2 * ||p1 x1 - p2 x2||_2 = 0 for balanced weights.
    CHECK(certificate::verify(l2, ctx).ok());
    CHECK(oracle::float_check(l2, ctx, 1e-9));
  }
}

TEST_CASE("sufficiency certificates") {
  Json raw = family_json({"x1", "x2", "x3"}, {{"h1", {0, 2, 1}}, {"h2", {2, 0, 1}}});
  FamilyMatrix h = family_from_json(raw);
  Context ctx{raw, {}, {}};

  SECTION("sufficient: constructive representations verify") {
    representation::SufficiencyInstance inst(h, {"x1", "x2"});
    REQUIRE(std::holds_alternative<representation::Sufficient>(
        representation::check_sufficiency(inst)));
    std::vector<std::pair<std::string, ProbabilityMeasure>> reps;
    auto rep = representation::representing_measure(inst, "x3");
    reps.emplace_back("x3",
                      std::get<representation::RepresentingMeasure>(rep).measure);
    Json cert = certificate::make_sufficiency_proof(raw, inst.subset, reps);
    CHECK(certificate::verify(cert, ctx).ok());

    Json bad = cert;
    bad["representations"] = Json::array();  // drop the required witness
    CHECK_FALSE(certificate::verify(bad, ctx).ok());
  }
  SECTION("violation") {
    representation::SufficiencyInstance inst(h, {"x1"});
    auto r = representation::check_sufficiency(inst);
    REQUIRE(std::holds_alternative<representation::SufficiencyViolation>(r));
    Json cert = certificate::make_sufficiency_violation(
        raw, inst.subset, std::get<representation::SufficiencyViolation>(r));
    CHECK(certificate::verify(cert, ctx).ok());

    Json bad = cert;
    bad["margin"] = bump_scalar(bad["margin"]);
    CHECK_FALSE(certificate::verify(bad, ctx).ok());
  }
}

TEST_CASE("strassen certificates") {
  Json raw;
  raw["functionals"] = Json::array();
  raw["functionals"].push_back({{"name", "abs"}, {"generators", {{1}, {-1}}}});
  FunctionalsFile file = functionals_from_json(raw);
  std::vector<representation::PolyhedralSublinear> fs{
      representation::PolyhedralSublinear(file.names[0], file.generators[0])};
  Context ctx{raw, {}, {}};

  std::vector<Rational> phi{Rational(1, 3)};
  Json cert = certificate::make_strassen(raw, phi,
                                         fs, representation::strassen_decompose(phi, fs));
  CHECK(certificate::verify(cert, ctx).ok());

  Json bad = cert;
  bad["t"]["abs"][0] = bump_scalar(bad["t"]["abs"][0]);
  CHECK_FALSE(certificate::verify(bad, ctx).ok());

  std::vector<Rational> wild{Rational(2)};
  Json vcert = certificate::make_strassen(
      raw, wild, fs, representation::strassen_decompose(wild, fs));
  REQUIRE(vcert["branch"] == "violation");
  CHECK(certificate::verify(vcert, ctx).ok());
}

TEST_CASE("exhaustion certificates") {
  Json raw = family_json({"x1", "x2", "x3"}, {{"f1", {1, 0, 0}}, {"f2", {0, 1, 0}}});
  FamilyMatrix a = family_from_json(raw);
  exhaustion::ExhaustionInstance inst(a, {{"X1", {"x1"}}, {"X2", {"x2"}}});
  auto report = exhaustion::verify_exhaustion(inst);
  Json cert = certificate::make_exhaustion(raw, inst, report);
  Context ctx{raw, {}, {}};
  CHECK(certificate::verify(cert, ctx).ok());
  CHECK(cert["ok"].get<bool>());  // both pieces positive, x3 silent

  Json bad = cert;
  bad["bounds"][0]["value"] = bump_scalar(bad["bounds"][0]["value"]);
  CHECK_FALSE(certificate::verify(bad, ctx).ok());
}

TEST_CASE("summing and pietsch certificates") {
  Json raw = family_json({"x1", "x2"}, {{"e1", {1, 0}}, {"e2", {0, 1}}});
  FamilyMatrix a = family_from_json(raw);
  std::vector<Rational> g{Rational(1), Rational(1)};
  Json cert = certificate::make_summing(raw, g, summability::summing_constant(a, g));
  Context ctx{raw, {}, {}};
  CHECK(certificate::verify(cert, ctx).ok());

  Json bad = cert;
  bad["witness"]["constant"] = bump_scalar(bad["witness"]["constant"]);
  CHECK_FALSE(certificate::verify(bad, ctx).ok());

  SECTION("pietsch needs all three inputs and their hashes") {
    Json op;
    op["matrix"] = {{1}};
    Json net;
    net["vectors"] = {{1}, {-1}};
    Json sample;
    sample["vectors"] = {{1}, {-1}};
    auto est = summability::pietsch_estimate(operator_from_json(op), Rational(1),
                                             vectors_from_json(net),
                                             vectors_from_json(sample));
    Json pcert = certificate::make_pietsch(op, net, sample, Rational(1), est);
    Context pctx{op, net, sample};
    CHECK(certificate::verify(pcert, pctx).ok());

    Json other_net;
    other_net["vectors"] = {{1}};
    auto out = certificate::verify(pcert, Context{op, other_net, sample});
    CHECK(out.status == Status::HashMismatch);
  }
}
