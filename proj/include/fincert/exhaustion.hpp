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

#ifndef FINCERT_EXHAUSTION_HPP
#define FINCERT_EXHAUSTION_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fincert/core.hpp"
#include "fincert/lp.hpp"
#include "fincert/minimax.hpp"

namespace fincert::exhaustion {

/// Entrywise |f| ∧ 1. All set-function computations in this module run
/// on the clipped matrix; clip once at ingestion and keep it.
inline FamilyMatrix clip_family(const FamilyMatrix& a) {
  std::vector<std::vector<Rational>> v(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t f = 0; f < a.rows(); ++f)
    for (std::size_t x = 0; x < a.cols(); ++x) {
      Rational e = rational_abs(a.at(f, x));
      v[f][x] = e > 1 ? Rational(1) : e;
    }
  return FamilyMatrix(a.row_labels(), a.col_labels(), std::move(v));
}

inline bool is_clipped(const FamilyMatrix& a) {
  for (std::size_t f = 0; f < a.rows(); ++f)
    for (std::size_t x = 0; x < a.cols(); ++x)
      if (a.at(f, x) < 0 || a.at(f, x) > 1) return false;
  return true;
}

struct LabelledPiece {
  std::string name;
  std::vector<std::string> points;
};

/// A clipped family together with labelled pieces of the point set; the
/// remainder X0 is everything no piece covers. Pieces may overlap and
/// may be empty — nothing in the defining conditions forbids either.
struct ExhaustionInstance {
  FamilyMatrix family;  // clipped on construction
  std::vector<LabelledPiece> pieces;
  std::vector<std::string> remainder;

  ExhaustionInstance(const FamilyMatrix& a, std::vector<LabelledPiece> ps)
      : family(clip_family(a)), pieces(std::move(ps)) {
    std::set<std::string> covered;
    for (const auto& piece : pieces)
      for (const auto& label : piece.points) {
        (void)family.col_index(label);
        covered.insert(label);
      }
    for (const auto& label : family.col_labels())
      if (!covered.count(label)) remainder.push_back(label);
  }
};

/// I_F(U) with both optimizers: the value of the game between mixtures
/// of points of U and the family, solved from both sides. The two LP
/// values agree exactly; that equality is itself part of the contract.
struct IntersectionBound {
  Rational value;
  DeltaElement delta;          // over U, attains min_delta max_f <f,delta>
  ProbabilityMeasure measure;  // over F, attains max_m min_{x in U} integral
};

inline IntersectionBound intersection_bound(const FamilyMatrix& clipped,
                                            const std::vector<std::string>& u) {
  if (u.empty()) throw std::invalid_argument("I_F needs a non-empty subset");
  const std::size_t nf = clipped.rows(), nu = u.size();
  std::vector<std::size_t> cols;
  for (const auto& label : u) cols.push_back(clipped.col_index(label));

  // Primal: min t, <A[f], delta> <= t for all f, delta in Delta(U).
  auto p = lp::StandardLp::with_variables(nu + 1);
  p.objective[nu] = 1;
  p.lower[nu] = std::nullopt;
  for (std::size_t f = 0; f < nf; ++f) {
    std::vector<Rational> row(nu + 1, Rational(0));
    for (std::size_t i = 0; i < nu; ++i) row[i] = clipped.at(f, cols[i]);
    row[nu] = -1;
    p.add_row(std::move(row), lp::Relation::LessEq, Rational(0));
  }
  {
    std::vector<Rational> row(nu + 1, Rational(1));
    row[nu] = 0;
    p.add_row(std::move(row), lp::Relation::Equal, Rational(1));
  }

  // Dual side: max s, integral >= s on U, m in Delta(F).
  auto q = lp::StandardLp::with_variables(nf + 1, lp::Sense::Maximize);
  q.objective[nf] = 1;
  q.lower[nf] = std::nullopt;
  for (std::size_t i = 0; i < nu; ++i) {
    std::vector<Rational> row(nf + 1, Rational(0));
    for (std::size_t f = 0; f < nf; ++f) row[f] = clipped.at(f, cols[i]);
    row[nf] = -1;
    q.add_row(std::move(row), lp::Relation::GreaterEq, Rational(0));
  }
  {
    std::vector<Rational> row(nf + 1, Rational(1));
    row[nf] = 0;
    q.add_row(std::move(row), lp::Relation::Equal, Rational(1));
  }

  auto pout = lp::solve(p);
  auto qout = lp::solve(q);
  if (!pout.is_optimal() || !qout.is_optimal())
    throw std::logic_error("intersection bound LPs must be solvable");
  if (pout.optimal().value != qout.optimal().value)
    throw std::logic_error("intersection bound primal/dual values differ");

  std::vector<Rational> dw(pout.optimal().primal.begin(),
                           pout.optimal().primal.begin() + nu);
  DeltaElement delta = DeltaElement(u, std::move(dw)).trimmed();
  std::vector<Rational> mw(qout.optimal().primal.begin(),
                           qout.optimal().primal.begin() + nf);
  ProbabilityMeasure m = ProbabilityMeasure(clipped.row_labels(), std::move(mw)).trimmed();
  return {pout.optimal().value, std::move(delta), std::move(m)};
}

/// Builds the level-set pieces X_alpha = { x : g_alpha(x) > 1/p_alpha }
/// for g_alpha the integral of the family against G[alpha]. Every
/// non-empty piece carries I_F >= 1/p_alpha; that bound is re-checked
/// here and a failure would be a library bug, not an input error.
inline ExhaustionInstance build_exhaustion(const FamilyMatrix& a,
                                           const std::vector<ProbabilityMeasure>& g,
                                           const std::vector<unsigned>& p) {
  if (g.size() != p.size())
    throw DimensionError("one threshold exponent per measure required");
  FamilyMatrix clipped = clip_family(a);
  std::vector<LabelledPiece> pieces;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (p[k] == 0) throw std::invalid_argument("thresholds must be positive");
    auto mix = integral(g[k], clipped);
    LabelledPiece piece;
    piece.name = "X" + std::to_string(k + 1);
    Rational threshold(1, p[k]);
    for (std::size_t x = 0; x < clipped.cols(); ++x)
      if (mix[x] > threshold) piece.points.push_back(clipped.col_labels()[x]);
    if (!piece.points.empty()) {
      auto bound = intersection_bound(clipped, piece.points);
      if (bound.value < threshold)
        throw std::logic_error("exhaustion piece lost its lower bound");
    }
    pieces.push_back(std::move(piece));
  }
  return ExhaustionInstance(clipped, std::move(pieces));
}

struct PieceReport {
  std::string name;
  bool empty;
  std::optional<IntersectionBound> bound;  // present for non-empty pieces
  bool positive;                           // condition (ii) for this piece
};

struct ExhaustionReport {
  bool cardinality_ok;  // finite instances satisfy the cardinality cap
  std::vector<PieceReport> piece_reports;
  bool pieces_positive;        // condition (ii)
  bool remainder_null;         // condition (iii): family vanishes on X0
  std::vector<std::string> offending_remainder;
  bool ok;
};

inline ExhaustionReport verify_exhaustion(const ExhaustionInstance& inst) {
  ExhaustionReport r;
  r.cardinality_ok = true;
  r.pieces_positive = true;
  for (const auto& piece : inst.pieces) {
    PieceReport pr;
    pr.name = piece.name;
    pr.empty = piece.points.empty();
    if (pr.empty) {
      pr.positive = true;  // no probabilities live on an empty piece
    } else {
      pr.bound = intersection_bound(inst.family, piece.points);
      pr.positive = pr.bound->value > 0;
    }
    r.pieces_positive = r.pieces_positive && pr.positive;
    r.piece_reports.push_back(std::move(pr));
  }
  r.remainder_null = true;
  for (const auto& label : inst.remainder) {
    std::size_t x = inst.family.col_index(label);
    for (std::size_t f = 0; f < inst.family.rows(); ++f)
      if (inst.family.at(f, x) != 0) {
        r.remainder_null = false;
        r.offending_remainder.push_back(label);
        break;
      }
  }
  r.ok = r.cardinality_ok && r.pieces_positive && r.remainder_null;
  return r;
}

/// Convex combination of finitely many measures with the dyadic default
/// weights 2^-k renormalised over the list. The combined integral is
/// positive exactly where some component integral is.
inline ProbabilityMeasure combine_countable(
    const std::vector<ProbabilityMeasure>& g,
    const std::optional<std::vector<Rational>>& weights = std::nullopt) {
  if (g.empty()) throw std::invalid_argument("nothing to combine");
  std::vector<Rational> w;
  if (weights) {
    if (weights->size() != g.size())
      throw DimensionError("one weight per measure required");
    w = *weights;
    Rational mass = 0;
    for (const auto& e : w) {
      if (e <= 0) throw std::invalid_argument("weights must be positive");
      mass += e;
    }
    for (auto& e : w) e /= mass;
  } else {
    // 1/2, 1/4, ... normalised by 1 - 2^-n.
    Rational mass = 0;
    Rational cur(1, 2);
    for (std::size_t k = 0; k < g.size(); ++k) {
      w.push_back(cur);
      mass += cur;
      cur /= 2;
    }
    for (auto& e : w) e /= mass;
  }
  std::map<std::string, Rational> acc;
  for (std::size_t k = 0; k < g.size(); ++k)
    for (std::size_t i = 0; i < g[k].size(); ++i)
      acc[g[k].support()[i]] += w[k] * g[k].weights()[i];
  std::vector<std::string> support;
  std::vector<Rational> out;
  for (auto& [label, weight] : acc)
    if (weight != 0) {
      support.push_back(label);
      out.push_back(weight);
    }
  return ProbabilityMeasure(std::move(support), std::move(out));
}

}  // namespace fincert::exhaustion

#endif  // FINCERT_EXHAUSTION_HPP
