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

#ifndef FINCERT_CERTIFICATE_HPP
#define FINCERT_CERTIFICATE_HPP

#include <cmath>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fincert/core.hpp"
#include "fincert/domination.hpp"
#include "fincert/exhaustion.hpp"
#include "fincert/json_io.hpp"
#include "fincert/minimax.hpp"
#include "fincert/representation.hpp"
#include "fincert/summability.hpp"

namespace fincert::certificate {

// Every certificate is a JSON object with a "kind" tag, one or more
// content hashes pinning the instance files it talks about, and enough
// optimizers that each claim re-checks by substitution alone — no LP
// runs inside `verify`.

struct Context {
  std::optional<Json> instance;
  std::optional<Json> net;
  std::optional<Json> sample;
};

enum class Status { Ok, Failed, HashMismatch, Malformed };

struct Outcome {
  Status status;
  std::string message;

  bool ok() const { return status == Status::Ok; }
};

// ---------------------------------------------------------------------------
// Canonical instance forms. Hashes are computed over these, so cosmetic
// reformatting of an instance file never breaks a certificate.

inline Json canonical_family_instance(const Json& raw) {
  FamilyMatrix fam = family_from_json(raw);
  Json j = family_to_json(fam);
  if (raw.contains("targets")) {
    FamilyMatrix tgt = family_from_json(raw, "targets");
    j["targets"] = family_to_json(tgt)["functions"];
  }
  return j;
}

inline Json canonical_fan_instance(const Json& raw) {
  return fan_to_json(fan_from_json(raw));
}

inline Json canonical_functionals_instance(const Json& raw) {
  return functionals_to_json(functionals_from_json(raw));
}

inline Json canonical_vectors_instance(const Json& raw) {
  return vectors_to_json(vectors_from_json(raw));
}

inline Json canonical_operator_instance(const Json& raw) {
  return operator_to_json(operator_from_json(raw));
}

inline std::string hash_for_kind(const std::string& kind, const Json& raw) {
  if (kind == "fan") return content_hash(canonical_fan_instance(raw));
  if (kind == "strassen") return content_hash(canonical_functionals_instance(raw));
  if (kind == "pietsch") return content_hash(canonical_operator_instance(raw));
  return content_hash(canonical_family_instance(raw));
}

// Violation certificates witness open conditions, so a perturbed
// witness may still be a witness; re-substitution alone cannot make
// them tamper-evident. Two measures close the gap: strict margins are
// stored and re-checked as exact equalities, and the whole payload is
// sealed with a digest (the attached oracle block stays outside it).
inline std::string payload_digest(const Json& cert) {
  Json copy = cert;
  copy.erase("digest");
  copy.erase("oracle");
  return content_hash(copy);
}

inline void seal(Json& cert) { cert["digest"] = payload_digest(cert); }

// ---------------------------------------------------------------------------
// Builders. Each returns the full certificate the CLI emits.

inline Json make_minimax(const Json& raw_instance, const FamilyMatrix& a,
                         const minimax::MinimaxReport& r,
                         bool include_concavity_detail) {
  Json c;
  c["kind"] = "minimax_report";
  c["instance_hash"] = hash_for_kind("minimax_report", raw_instance);
  c["lower"] = scalar_to_json(r.lower);
  c["lower_attained_at"] = r.lower_attained_at;
  c["upper"] = scalar_to_json(r.upper);
  c["upper_attained_at"] = r.upper_attained_at;
  c["hull_value"] = scalar_to_json(r.hull_value);
  c["optimal_measure"] = measure_to_json(r.optimal_measure);
  c["optimal_point_weights"] = measure_to_json(r.optimal_point_weights);
  c["concave_like"] = r.concave_like;
  if (include_concavity_detail) {
    if (r.concavity_violation) {
      Json v;
      v["x"] = r.concavity_violation->x;
      v["x_prime"] = r.concavity_violation->x_prime;
      v["gap_lo"] = scalar_to_json(r.concavity_violation->gap_lo);
      v["gap_hi"] = scalar_to_json(r.concavity_violation->gap_hi);
      c["concavity_violation"] = std::move(v);
    } else {
      c["concavity_violation"] = nullptr;
    }
  }
  if (r.sub_barycentre) c["sub_barycentre"] = *r.sub_barycentre;
  else c["sub_barycentre"] = nullptr;
  (void)a;
  seal(c);
  return c;
}

inline void attach_local(Json& cert, const std::vector<std::vector<std::string>>& subfamilies,
                         const minimax::LocalMinimax& local) {
  Json l;
  l["subfamilies"] = subfamilies;
  l["value"] = scalar_to_json(local.value);
  l["best_index"] = local.best_index;
  l["measure"] = measure_to_json(local.measure);
  Json per = Json::array();
  for (const auto& pair : local.per_subfamily) {
    Json p;
    p["value"] = scalar_to_json(pair.value);
    p["measure"] = measure_to_json(pair.measure);
    p["point_weights"] = measure_to_json(pair.point_weights);
    per.push_back(std::move(p));
  }
  l["per_subfamily"] = std::move(per);
  cert["local"] = std::move(l);
  seal(cert);
}

inline Json make_domination(const Json& raw_instance,
                            const domination::DominationResult& r) {
  Json c;
  c["kind"] = "domination";
  c["instance_hash"] = hash_for_kind("domination", raw_instance);
  if (std::holds_alternative<ProbabilityMeasure>(r)) {
    c["branch"] = "dominating_measure";
    c["measure"] = measure_to_json(std::get<ProbabilityMeasure>(r));
  } else {
    c["branch"] = "balance_violation";
    const auto& v = std::get<domination::BalanceViolation>(r);
    Json pairs = Json::array();
    for (const auto& p : v.pairs) {
      Json e;
      e["g"] = p.g_label;
      e["delta"] = measure_to_json(p.delta);
      e["multiplicity"] = p.multiplicity.str();
      pairs.push_back(std::move(e));
    }
    c["pairs"] = std::move(pairs);
    domination::DominationInstance inst(family_from_json(raw_instance),
                                        family_from_json(raw_instance, "targets"));
    c["margin"] = scalar_to_json(domination::balance_margin(inst, v.pairs));
  }
  seal(c);
  return c;
}

inline Json make_hull(const Json& raw_instance, const std::vector<Rational>& target,
                      const domination::HullResult& r) {
  Json c;
  c["kind"] = "hull";
  c["instance_hash"] = hash_for_kind("hull", raw_instance);
  c["target"] = vector_to_json(target);
  if (std::holds_alternative<domination::InHull>(r)) {
    c["branch"] = "in_hull";
    c["measure"] = measure_to_json(std::get<domination::InHull>(r).measure);
  } else {
    c["branch"] = "not_in_hull";
    const auto& w = std::get<domination::NotInHull>(r).weights;
    c["weights"] = vector_to_json(w);
    FamilyMatrix a = family_from_json(raw_instance);
    Rational lhs = lp::dot(target, w);
    Rational rhs = lp::dot(a.row(0), w);
    for (std::size_t f = 1; f < a.rows(); ++f) {
      Rational v = lp::dot(a.row(f), w);
      if (v > rhs) rhs = v;
    }
    c["margin"] = scalar_to_json(lhs - rhs);
  }
  seal(c);
  return c;
}

inline Json make_fan(const Json& raw_instance, const Rational& rho,
                     domination::PolyNorm norm, const domination::FanResult& r) {
  Json c;
  c["kind"] = "fan";
  c["instance_hash"] = hash_for_kind("fan", raw_instance);
  c["rho"] = scalar_to_json(rho);
  c["norm"] = domination::poly_norm_name(norm);
  if (std::holds_alternative<domination::LinearFunctional>(r)) {
    c["branch"] = "functional";
    c["phi"] = vector_to_json(std::get<domination::LinearFunctional>(r).phi);
  } else {
    c["branch"] = "violation";
    const auto& p = std::get<domination::FanViolation>(r).p;
    c["p"] = vector_to_json(p);
    FanInstance inst = fan_from_json(raw_instance);
    const std::size_t d = inst.points.front().size();
    Rational lhs = 0;
    std::vector<Rational> combo(d, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
      lhs += p[i] * inst.g[i];
      for (std::size_t j = 0; j < d; ++j) combo[j] += p[i] * inst.points[i][j];
    }
    c["margin"] = scalar_to_json(lhs - rho * domination::poly_norm(combo, norm));
  }
  seal(c);
  return c;
}

inline Json make_sufficiency_violation(const Json& raw_instance,
                                       const std::vector<std::string>& subset,
                                       const representation::SufficiencyViolation& v) {
  Json c;
  c["kind"] = "sufficiency";
  c["instance_hash"] = hash_for_kind("sufficiency", raw_instance);
  c["subset"] = subset;
  c["branch"] = "violation";
  c["x"] = v.x;
  c["delta"] = measure_to_json(v.delta);
  c["margin"] = scalar_to_json(v.margin);
  seal(c);
  return c;
}

inline Json make_sufficiency_proof(
    const Json& raw_instance, const std::vector<std::string>& subset,
    const std::vector<std::pair<std::string, ProbabilityMeasure>>& representations) {
  Json c;
  c["kind"] = "sufficiency";
  c["instance_hash"] = hash_for_kind("sufficiency", raw_instance);
  c["subset"] = subset;
  c["branch"] = "sufficient";
  Json reps = Json::array();
  for (const auto& [x, m] : representations) {
    Json e;
    e["x"] = x;
    e["measure"] = measure_to_json(m);
    reps.push_back(std::move(e));
  }
  c["representations"] = std::move(reps);
  seal(c);
  return c;
}

inline Json make_strassen(const Json& raw_instance, const std::vector<Rational>& phi,
                          const std::vector<representation::PolyhedralSublinear>& fs,
                          const representation::StrassenResult& r) {
  Json c;
  c["kind"] = "strassen";
  c["instance_hash"] = hash_for_kind("strassen", raw_instance);
  c["phi"] = vector_to_json(phi);
  if (std::holds_alternative<representation::StrassenDecomposition>(r)) {
    const auto& dec = std::get<representation::StrassenDecomposition>(r);
    c["branch"] = "decomposition";
    c["lambda"] = measure_to_json(dec.lambda);
    Json t = Json::object();
    Json hw = Json::object();
    for (std::size_t f = 0; f < fs.size(); ++f) {
      t[fs[f].name] = vector_to_json(dec.t[f]);
      hw[fs[f].name] = vector_to_json(dec.hull_weights[f]);
    }
    c["t"] = std::move(t);
    c["hull_weights"] = std::move(hw);
  } else {
    c["branch"] = "violation";
    const auto& x = std::get<representation::StrassenViolation>(r).x;
    c["x"] = vector_to_json(x);
    Rational rhs = fs.front()(x);
    for (std::size_t f = 1; f < fs.size(); ++f) {
      Rational v = fs[f](x);
      if (v > rhs) rhs = v;
    }
    c["margin"] = scalar_to_json(lp::dot(phi, x) - rhs);
  }
  seal(c);
  return c;
}

inline Json make_exhaustion(const Json& raw_instance,
                            const exhaustion::ExhaustionInstance& inst,
                            const exhaustion::ExhaustionReport& report) {
  Json c;
  c["kind"] = "exhaustion";
  c["instance_hash"] = hash_for_kind("exhaustion", raw_instance);
  c["clipped"] = true;
  Json pieces = Json::array();
  for (const auto& piece : inst.pieces) {
    Json p;
    p["name"] = piece.name;
    p["points"] = piece.points;
    pieces.push_back(std::move(p));
  }
  c["pieces"] = std::move(pieces);
  c["remainder"] = inst.remainder;
  Json bounds = Json::array();
  for (const auto& pr : report.piece_reports) {
    Json b;
    b["name"] = pr.name;
    b["empty"] = pr.empty;
    if (pr.bound) {
      b["value"] = scalar_to_json(pr.bound->value);
      b["delta"] = measure_to_json(pr.bound->delta);
      b["measure"] = measure_to_json(pr.bound->measure);
    }
    bounds.push_back(std::move(b));
  }
  c["bounds"] = std::move(bounds);
  Json cond;
  cond["cardinality"] = report.cardinality_ok;
  cond["positivity"] = report.pieces_positive;
  cond["remainder_null"] = report.remainder_null;
  c["conditions"] = std::move(cond);
  c["ok"] = report.ok;
  seal(c);
  return c;
}

inline Json summing_witness_to_json(const summability::SummingWitness& w) {
  Json j;
  j["finite"] = w.finite;
  if (w.finite) {
    j["constant"] = scalar_to_json(w.constant);
    j["measure"] = measure_to_json(w.measure);
    j["dual_weights"] = vector_to_json(w.dual_weights);
  } else {
    j["witness_point"] = *w.witness_point;
  }
  return j;
}

inline summability::SummingWitness summing_witness_from_json(const Json& j) {
  summability::SummingWitness w;
  w.finite = j.at("finite").get<bool>();
  if (w.finite) {
    w.constant = scalar_from_json(j.at("constant"));
    w.measure = measure_from_json(j.at("measure"));
    w.dual_weights = vector_from_json(j.at("dual_weights"));
  } else {
    w.witness_point = j.at("witness_point").get<std::string>();
  }
  return w;
}

inline Json make_summing(const Json& raw_instance, const std::vector<Rational>& target,
                         const summability::SummingWitness& w) {
  Json c;
  c["kind"] = "summing";
  c["instance_hash"] = hash_for_kind("summing", raw_instance);
  c["target"] = vector_to_json(target);
  c["witness"] = summing_witness_to_json(w);
  seal(c);
  return c;
}

inline Json make_pietsch(const Json& raw_operator, const Json& raw_net,
                         const Json& raw_sample, const Rational& p,
                         const summability::PietschEstimate& est) {
  Json c;
  c["kind"] = "pietsch";
  c["instance_hash"] = hash_for_kind("pietsch", raw_operator);
  c["net_hash"] = content_hash(canonical_vectors_instance(raw_net));
  c["sample_hash"] = content_hash(canonical_vectors_instance(raw_sample));
  c["p"] = scalar_to_json(p);
  c["witness"] = summing_witness_to_json(est.witness);
  seal(c);
  return c;
}

// ---------------------------------------------------------------------------
// Exact verification.

namespace detail {

inline Rational mixture_max(const FamilyMatrix& a, const ProbabilityMeasure& m) {
  auto mix = integral(m, a);
  Rational best = mix[0];
  for (const auto& v : mix)
    if (v > best) best = v;
  return best;
}

inline bool measure_supported_in(const DiscreteMeasure& m,
                                 const std::vector<std::string>& allowed) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.weights()[i] != 0 && !ok.count(m.support()[i])) return false;
  return true;
}

inline Outcome fail(const std::string& what) { return {Status::Failed, what}; }
inline Outcome pass() { return {Status::Ok, "verified"}; }

inline Outcome verify_minimax(const Json& c, const FamilyMatrix& a) {
  using namespace fincert::minimax;
  auto lo = lower_value(a);
  auto up = upper_value(a);
  if (scalar_from_json(c.at("lower")) != lo.value) return fail("lower value mismatch");
  if (scalar_from_json(c.at("upper")) != up.value) return fail("upper value mismatch");
  // The stated attainment witnesses must attain, though they need not
  // match the scan's tie-breaking choice.
  {
    std::size_t x = a.col_index(c.at("lower_attained_at").get<std::string>());
    Rational col_min = a.at(0, x);
    for (std::size_t f = 1; f < a.rows(); ++f)
      if (a.at(f, x) < col_min) col_min = a.at(f, x);
    if (col_min != lo.value) return fail("lower attainment witness does not attain");
    std::size_t f = a.row_index(c.at("upper_attained_at").get<std::string>());
    Rational row_max = a.at(f, 0);
    for (std::size_t xx = 1; xx < a.cols(); ++xx)
      if (a.at(f, xx) > row_max) row_max = a.at(f, xx);
    if (row_max != up.value) return fail("upper attainment witness does not attain");
  }

  Rational hull = scalar_from_json(c.at("hull_value"));
  ProbabilityMeasure m = measure_from_json(c.at("optimal_measure"));
  DiscreteMeasure h = measure_from_json(c.at("optimal_point_weights"));
  if (!m.is_probability() || !h.is_probability())
    return fail("optimizers must be probabilities");
  if (!measure_supported_in(m, a.row_labels()) ||
      !measure_supported_in(h, a.col_labels()))
    return fail("optimizer supported outside the instance");
  if (mixture_max(a, m) != hull) return fail("measure does not attain the hull value");
  {
    auto vals = pairing(a, h);
    Rational worst = vals[0];
    for (const auto& v : vals)
      if (v < worst) worst = v;
    if (worst != hull) return fail("point weights do not attain the hull value");
  }

  bool concave = is_concave_like(a).concave_like;
  if (c.at("concave_like").get<bool>() != concave)
    return fail("concavity flag mismatch");
  if (c.contains("concavity_violation") && !c.at("concavity_violation").is_null()) {
    const Json& v = c.at("concavity_violation");
    if (concave) return fail("violation recorded for a concave-like family");
    std::size_t x = a.col_index(v.at("x").get<std::string>());
    std::size_t xp = a.col_index(v.at("x_prime").get<std::string>());
    Rational t =
        (scalar_from_json(v.at("gap_lo")) + scalar_from_json(v.at("gap_hi"))) / 2;
    if (t < 0 || t > 1) return fail("violation weight outside [0,1]");
    for (std::size_t cand = 0; cand < a.cols(); ++cand) {
      bool dominated = true;
      for (std::size_t f = 0; f < a.rows() && dominated; ++f)
        if (t * a.at(f, x) + (1 - t) * a.at(f, xp) > a.at(f, cand)) dominated = false;
      if (dominated) return fail("claimed gap weight is actually dominated");
    }
  }

  auto mix = integral(m, a);
  if (!c.at("sub_barycentre").is_null()) {
    std::size_t f = a.row_index(c.at("sub_barycentre").get<std::string>());
    for (std::size_t x = 0; x < a.cols(); ++x)
      if (a.at(f, x) > mix[x]) return fail("sub-barycentre row rises above the mixture");
  } else {
    for (std::size_t f = 0; f < a.rows(); ++f) {
      bool below = true;
      for (std::size_t x = 0; x < a.cols() && below; ++x)
        if (a.at(f, x) > mix[x]) below = false;
      if (below) return fail("a sub-barycentre exists but none was reported");
    }
  }

  if (c.contains("local")) {
    const Json& l = c.at("local");
    const Json& subs = l.at("subfamilies");
    const Json& per = l.at("per_subfamily");
    if (subs.size() != per.size() || subs.empty())
      return fail("local block arity mismatch");
    Rational best;
    bool first = true;
    for (std::size_t s = 0; s < subs.size(); ++s) {
      std::vector<std::string> labels = subs[s].get<std::vector<std::string>>();
      if (labels.empty()) return fail("empty subfamily");
      Rational value = scalar_from_json(per[s].at("value"));
      ProbabilityMeasure pm = measure_from_json(per[s].at("measure"));
      DiscreteMeasure pw = measure_from_json(per[s].at("point_weights"));
      if (!pm.is_probability() || !pw.is_probability())
        return fail("local optimizers must be probabilities");
      if (!measure_supported_in(pm, labels))
        return fail("local measure leaves its subfamily");
      if (!measure_supported_in(pw, a.col_labels()))
        return fail("local point weights leave the point set");
      if (mixture_max(a, pm) != value) return fail("local measure misses its value");
      bool fst = true;
      Rational worst;
      for (const auto& label : labels) {
        std::size_t f = a.row_index(label);
        Rational v = 0;
        for (std::size_t i = 0; i < pw.size(); ++i)
          v += pw.weights()[i] * a.at(f, a.col_index(pw.support()[i]));
        if (fst || v < worst) {
          worst = v;
          fst = false;
        }
      }
      if (worst != value) return fail("local point weights miss their value");
      if (first || value < best) {
        best = value;
        first = false;
      }
    }
    if (scalar_from_json(l.at("value")) != best) return fail("local value mismatch");
    std::size_t bi = l.at("best_index").get<std::size_t>();
    if (bi >= per.size() ||
        scalar_from_json(per[bi].at("value")) != best)
      return fail("best index does not attain the local value");
  }
  return pass();
}

inline Outcome verify_domination(const Json& c, const Json& raw) {
  domination::DominationInstance inst(family_from_json(raw),
                                      family_from_json(raw, "targets"));
  std::string branch = c.at("branch").get<std::string>();
  if (branch == "dominating_measure") {
    ProbabilityMeasure m = measure_from_json(c.at("measure"));
    if (!domination::verify_dominating(inst, m))
      return fail("measure does not dominate the targets");
    return pass();
  }
  if (branch != "balance_violation") return {Status::Malformed, "unknown branch"};
  std::vector<domination::BalancePair> pairs;
  for (const auto& e : c.at("pairs")) {
    domination::BalancePair p;
    p.g_label = e.at("g").get<std::string>();
    p.delta = measure_from_json(e.at("delta"));
    p.multiplicity = Integer(e.at("multiplicity").get<std::string>());
    pairs.push_back(std::move(p));
  }
  if (pairs.empty()) return fail("violation without pairs");
  Rational margin = domination::balance_margin(inst, pairs);
  if (margin <= 0)
    return fail("claimed violation actually satisfies the balance inequality");
  if (c.contains("margin") && scalar_from_json(c.at("margin")) != margin)
    return fail("stated margin differs from the recomputed one");
  return pass();
}

inline Outcome verify_hull(const Json& c, const Json& raw) {
  FamilyMatrix a = family_from_json(raw);
  std::vector<Rational> g = vector_from_json(c.at("target"));
  std::string branch = c.at("branch").get<std::string>();
  if (branch == "in_hull") {
    ProbabilityMeasure m = measure_from_json(c.at("measure"));
    if (!domination::verify_in_hull(a, g, m)) return fail("mixture misses the target");
    return pass();
  }
  if (branch != "not_in_hull") return {Status::Malformed, "unknown branch"};
  std::vector<Rational> w = vector_from_json(c.at("weights"));
  if (!domination::verify_not_in_hull(a, g, w))
    return fail("separating weights do not separate");
  if (c.contains("margin")) {
    Rational lhs = lp::dot(g, w);
    Rational rhs = lp::dot(a.row(0), w);
    for (std::size_t f = 1; f < a.rows(); ++f) {
      Rational v = lp::dot(a.row(f), w);
      if (v > rhs) rhs = v;
    }
    if (scalar_from_json(c.at("margin")) != lhs - rhs)
      return fail("stated margin differs from the recomputed one");
  }
  return pass();
}

inline Outcome verify_fan(const Json& c, const Json& raw) {
  FanInstance inst = fan_from_json(raw);
  Rational rho = scalar_from_json(c.at("rho"));
  std::string norm = c.at("norm").get<std::string>();
  std::string branch = c.at("branch").get<std::string>();
  const std::size_t d = inst.points.front().size();

  if (norm == "l1" || norm == "linf") {
    domination::PolyNorm n =
        norm == "l1" ? domination::PolyNorm::L1 : domination::PolyNorm::LInf;
    if (branch == "functional") {
      auto phi = vector_from_json(c.at("phi"));
      if (phi.size() != d) return {Status::Malformed, "phi has wrong dimension"};
      if (!domination::verify_fan_functional(inst.points, inst.g, rho, n, phi))
        return fail("functional violates its constraints");
      return pass();
    }
    if (branch != "violation") return {Status::Malformed, "unknown branch"};
    auto p = vector_from_json(c.at("p"));
    if (!domination::verify_fan_violation(inst.points, inst.g, rho, n, p))
      return fail("weights do not violate the balance inequality");
    if (c.contains("margin")) {
      Rational lhs = 0;
      std::vector<Rational> combo(d, Rational(0));
      for (std::size_t i = 0; i < p.size(); ++i) {
        lhs += p[i] * inst.g[i];
        for (std::size_t j = 0; j < d; ++j) combo[j] += p[i] * inst.points[i][j];
      }
      if (scalar_from_json(c.at("margin")) !=
          lhs - rho * domination::poly_norm(combo, n))
        return fail("stated margin differs from the recomputed one");
    }
    return pass();
  }
  if (norm == "l2") {
    // No exact l2 producer exists here, but squared comparisons make
    // the checks exact for externally supplied certificates.
    if (branch == "functional") {
      auto phi = vector_from_json(c.at("phi"));
      if (phi.size() != d) return {Status::Malformed, "phi has wrong dimension"};
      Rational sq = 0;
      for (const auto& e : phi) sq += e * e;
      if (sq > rho * rho) return fail("phi exceeds the dual l2 ball");
      for (std::size_t i = 0; i < inst.points.size(); ++i)
        if (lp::dot(phi, inst.points[i]) < inst.g[i])
          return fail("functional misses a point constraint");
      return pass();
    }
    if (branch != "violation") return {Status::Malformed, "unknown branch"};
    auto p = vector_from_json(c.at("p"));
    if (p.size() != inst.points.size()) return {Status::Malformed, "weight arity"};
    Rational mass = 0, lhs = 0;
    std::vector<Rational> combo(d, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < 0) return fail("negative weight");
      mass += p[i];
      lhs += p[i] * inst.g[i];
      for (std::size_t j = 0; j < d; ++j) combo[j] += p[i] * inst.points[i][j];
    }
    if (mass > 1) return fail("weights exceed unit mass");
    if (lhs <= 0) return fail("violation needs a positive left side");
    Rational sq = 0;
    for (const auto& e : combo) sq += e * e;
    if (lhs * lhs <= rho * rho * sq) return fail("l2 balance inequality holds");
    return pass();
  }
  return {Status::Malformed, "unknown norm '" + norm + "'"};
}

inline Outcome verify_sufficiency(const Json& c, const Json& raw) {
  FamilyMatrix h = family_from_json(raw);
  std::vector<std::string> subset = c.at("subset").get<std::vector<std::string>>();
  representation::SufficiencyInstance inst(h, subset);
  std::string branch = c.at("branch").get<std::string>();
  if (branch == "violation") {
    DeltaElement delta = measure_from_json(c.at("delta"));
    if (!delta.is_probability()) return fail("delta must be a probability");
    Rational margin =
        representation::violation_margin(inst, c.at("x").get<std::string>(), delta);
    if (margin <= 0) return fail("claimed violation has no positive margin");
    if (margin != scalar_from_json(c.at("margin"))) return fail("margin mismatch");
    return pass();
  }
  if (branch != "sufficient") return {Status::Malformed, "unknown branch"};
  std::set<std::string> in_z(inst.subset.begin(), inst.subset.end());
  std::set<std::string> covered;
  for (const auto& e : c.at("representations")) {
    std::string x = e.at("x").get<std::string>();
    ProbabilityMeasure m = measure_from_json(e.at("measure"));
    if (!representation::verify_representation(inst, x, m))
      return fail("representation fails at '" + x + "'");
    covered.insert(x);
  }
  for (const auto& label : h.col_labels())
    if (!in_z.count(label) && !covered.count(label))
      return fail("no representing measure for '" + label + "'");
  return pass();
}

inline Outcome verify_strassen_cert(const Json& c, const Json& raw) {
  FunctionalsFile file = functionals_from_json(raw);
  std::vector<representation::PolyhedralSublinear> fs;
  for (std::size_t i = 0; i < file.names.size(); ++i)
    fs.emplace_back(file.names[i], file.generators[i]);
  std::vector<Rational> phi = vector_from_json(c.at("phi"));
  std::string branch = c.at("branch").get<std::string>();
  if (branch == "violation") {
    auto x = vector_from_json(c.at("x"));
    if (!representation::verify_strassen_violation(phi, fs, x))
      return fail("direction does not separate phi");
    if (c.contains("margin")) {
      Rational rhs = fs.front()(x);
      for (std::size_t f = 1; f < fs.size(); ++f) {
        Rational v = fs[f](x);
        if (v > rhs) rhs = v;
      }
      if (scalar_from_json(c.at("margin")) != lp::dot(phi, x) - rhs)
        return fail("stated margin differs from the recomputed one");
    }
    return pass();
  }
  if (branch != "decomposition") return {Status::Malformed, "unknown branch"};
  representation::StrassenDecomposition dec;
  dec.lambda = measure_from_json(c.at("lambda"));
  for (const auto& f : fs) {
    dec.t.push_back(vector_from_json(c.at("t").at(f.name)));
    dec.hull_weights.push_back(vector_from_json(c.at("hull_weights").at(f.name)));
  }
  if (!representation::verify_strassen(phi, fs, dec))
    return fail("decomposition does not reconstruct phi");
  return pass();
}

inline Outcome verify_exhaustion_cert(const Json& c, const Json& raw) {
  FamilyMatrix a = family_from_json(raw);
  std::vector<exhaustion::LabelledPiece> pieces;
  for (const auto& p : c.at("pieces"))
    pieces.push_back({p.at("name").get<std::string>(),
                      p.at("points").get<std::vector<std::string>>()});
  exhaustion::ExhaustionInstance inst(a, pieces);

  // Remainder must be derived, not declared.
  if (c.at("remainder").get<std::vector<std::string>>() != inst.remainder)
    return fail("remainder does not match the pieces");

  const Json& bounds = c.at("bounds");
  if (bounds.size() != pieces.size()) return {Status::Malformed, "bounds arity"};
  bool positivity = true;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const Json& b = bounds[k];
    bool empty = pieces[k].points.empty();
    if (b.at("empty").get<bool>() != empty) return fail("piece emptiness mismatch");
    if (empty) continue;
    Rational value = scalar_from_json(b.at("value"));
    DeltaElement delta = measure_from_json(b.at("delta"));
    ProbabilityMeasure m = measure_from_json(b.at("measure"));
    if (!delta.is_probability() || !m.is_probability())
      return fail("bound optimizers must be probabilities");
    if (!measure_supported_in(delta, pieces[k].points))
      return fail("delta leaves its piece");
    if (!measure_supported_in(m, inst.family.row_labels()))
      return fail("bound measure leaves the family");
    // delta attains value from above, m from below: certified equality.
    auto per_row = pairing(inst.family, delta);
    Rational worst = per_row[0];
    for (const auto& v : per_row)
      if (v > worst) worst = v;
    if (worst != value) return fail("delta does not attain the bound");
    auto mix = integral(m, inst.family);
    bool first = true;
    Rational low;
    for (const auto& label : pieces[k].points) {
      Rational v = mix[inst.family.col_index(label)];
      if (first || v < low) {
        low = v;
        first = false;
      }
    }
    if (low != value) return fail("measure does not attain the bound");
    if (value <= 0) positivity = false;
  }
  const Json& cond = c.at("conditions");
  if (cond.at("positivity").get<bool>() != positivity)
    return fail("positivity flag mismatch");
  bool remainder_null = true;
  for (const auto& label : inst.remainder) {
    std::size_t x = inst.family.col_index(label);
    for (std::size_t f = 0; f < inst.family.rows(); ++f)
      if (inst.family.at(f, x) != 0) remainder_null = false;
  }
  if (cond.at("remainder_null").get<bool>() != remainder_null)
    return fail("remainder flag mismatch");
  if (!cond.at("cardinality").get<bool>()) return fail("cardinality cannot fail");
  if (c.at("ok").get<bool>() != (positivity && remainder_null))
    return fail("overall flag mismatch");
  return pass();
}

inline Outcome verify_summing_cert(const Json& c, const Json& raw) {
  FamilyMatrix a = family_from_json(raw);
  std::vector<Rational> g = vector_from_json(c.at("target"));
  if (g.size() != a.cols()) return {Status::Malformed, "target arity"};
  summability::SummingWitness w = summing_witness_from_json(c.at("witness"));
  if (!summability::verify_summing(a, g, w)) return fail("summing witness fails");
  return pass();
}

inline Outcome verify_pietsch_cert(const Json& c, const Context& ctx) {
  if (!ctx.net || !ctx.sample)
    return {Status::Malformed, "pietsch verification needs --net and --sample"};
  if (content_hash(canonical_vectors_instance(*ctx.net)) !=
      c.at("net_hash").get<std::string>())
    return {Status::HashMismatch, "net hash mismatch"};
  if (content_hash(canonical_vectors_instance(*ctx.sample)) !=
      c.at("sample_hash").get<std::string>())
    return {Status::HashMismatch, "sample hash mismatch"};
  auto op = operator_from_json(*ctx.instance);
  auto net = vectors_from_json(*ctx.net);
  auto sample = vectors_from_json(*ctx.sample);
  Rational p = scalar_from_json(c.at("p"));
  if (!is_integer(p) || p < 1) return {Status::Malformed, "p must be a positive integer"};
  unsigned pe = static_cast<unsigned>(numerator(p));

  // Rebuild the derived instance deterministically; no LP is needed to
  // re-check the witness against it.
  const std::size_t d = op.front().size();
  std::vector<std::string> rows, cols;
  for (std::size_t i = 0; i < net.size(); ++i) rows.push_back("n" + std::to_string(i + 1));
  for (std::size_t k = 0; k < sample.size(); ++k) cols.push_back("s" + std::to_string(k + 1));
  std::vector<std::vector<Rational>> values(net.size(),
                                            std::vector<Rational>(sample.size()));
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (net[i].size() != d) return {Status::Malformed, "net dimension"};
    for (std::size_t k = 0; k < sample.size(); ++k)
      values[i][k] = rational_pow(rational_abs(lp::dot(net[i], sample[k])), pe);
  }
  FamilyMatrix fam(rows, cols, values);
  std::vector<Rational> g(sample.size());
  for (std::size_t k = 0; k < sample.size(); ++k) {
    if (sample[k].size() != d) return {Status::Malformed, "sample dimension"};
    Rational norm = 0;
    for (const auto& row : op) {
      Rational v = rational_abs(lp::dot(row, sample[k]));
      if (v > norm) norm = v;
    }
    g[k] = rational_pow(norm, pe);
  }
  summability::SummingWitness w = summing_witness_from_json(c.at("witness"));
  if (!summability::verify_summing(fam, g, w)) return fail("pietsch witness fails");
  return pass();
}

}  // namespace detail

/// Exact re-verification of any certificate against its instance
/// file(s). Returns HashMismatch without looking further when the
/// instance content does not match the hash the certificate carries.
inline Outcome verify(const Json& cert, const Context& ctx) {
  try {
    if (!cert.contains("kind")) return {Status::Malformed, "missing kind"};
    std::string kind = cert.at("kind").get<std::string>();
    if (!ctx.instance) return {Status::Malformed, "no instance supplied"};

    if (!cert.contains("digest") ||
        cert.at("digest").get<std::string>() != payload_digest(cert))
      return {Status::Failed, "certificate digest mismatch"};

    std::string expect = cert.at("instance_hash").get<std::string>();
    if (hash_for_kind(kind, *ctx.instance) != expect)
      return {Status::HashMismatch,
              "instance content does not match the certificate hash"};

    if (kind == "minimax_report")
      return detail::verify_minimax(cert, family_from_json(*ctx.instance));
    if (kind == "domination") return detail::verify_domination(cert, *ctx.instance);
    if (kind == "hull") return detail::verify_hull(cert, *ctx.instance);
    if (kind == "fan") return detail::verify_fan(cert, *ctx.instance);
    if (kind == "sufficiency") return detail::verify_sufficiency(cert, *ctx.instance);
    if (kind == "strassen") return detail::verify_strassen_cert(cert, *ctx.instance);
    if (kind == "exhaustion")
      return detail::verify_exhaustion_cert(cert, *ctx.instance);
    if (kind == "summing") return detail::verify_summing_cert(cert, *ctx.instance);
    if (kind == "pietsch") return detail::verify_pietsch_cert(cert, ctx);
    return {Status::Malformed, "unknown certificate kind '" + kind + "'"};
  } catch (const std::exception& e) {
    return {Status::Malformed, e.what()};
  }
}

}  // namespace fincert::certificate

#endif  // FINCERT_CERTIFICATE_HPP
