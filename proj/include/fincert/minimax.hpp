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

#ifndef FINCERT_MINIMAX_HPP
#define FINCERT_MINIMAX_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fincert/core.hpp"
#include "fincert/lp.hpp"

namespace fincert::minimax {

/// sup_x inf_f f(x) by exact scan, with an attaining column (a finite
/// maximum is always attained).
struct LowerValue {
  Rational value;
  std::string attained_at;
};

inline LowerValue lower_value(const FamilyMatrix& a) {
  LowerValue best;
  for (std::size_t x = 0; x < a.cols(); ++x) {
    Rational col_min = a.at(0, x);
    for (std::size_t f = 1; f < a.rows(); ++f)
      if (a.at(f, x) < col_min) col_min = a.at(f, x);
    if (x == 0 || col_min > best.value) {
      best.value = col_min;
      best.attained_at = a.col_labels()[x];
    }
  }
  return best;
}

/// inf_f sup_x f(x) by exact scan, with the attaining row.
inline LowerValue upper_value(const FamilyMatrix& a) {
  LowerValue best;
  for (std::size_t f = 0; f < a.rows(); ++f) {
    Rational row_max = a.at(f, 0);
    for (std::size_t x = 1; x < a.cols(); ++x)
      if (a.at(f, x) > row_max) row_max = a.at(f, x);
    if (f == 0 || row_max < best.value) {
      best.value = row_max;
      best.attained_at = a.row_labels()[f];
    }
  }
  return best;
}

/// The primal/dual pair certifying a minimax value with zero residual:
/// max_x of the mixed row equals `value` equals min_f of <f, weights>.
struct DualityPair {
  Rational value;
  ProbabilityMeasure measure;        // over the family rows
  DiscreteMeasure point_weights;     // over the points (dual optimizer)
};

/// Solves min over probabilities m on the rows of max_x sum_f m(f)A[f][x]
/// as an exact LP. The attaining measure always exists; the dual
/// optimizer comes back as nonnegative point weights summing to one.
inline DualityPair hull_minimax(const FamilyMatrix& a) {
  const std::size_t nf = a.rows(), nx = a.cols();
  auto p = lp::StandardLp::with_variables(nf + 1);
  p.objective[nf] = 1;       // minimize t
  p.lower[nf] = std::nullopt;  // t free
  for (std::size_t x = 0; x < nx; ++x) {
    std::vector<Rational> row(nf + 1, Rational(0));
    for (std::size_t f = 0; f < nf; ++f) row[f] = a.at(f, x);
    row[nf] = -1;
    p.add_row(std::move(row), lp::Relation::LessEq, Rational(0));
  }
  {
    std::vector<Rational> row(nf + 1, Rational(0));
    for (std::size_t f = 0; f < nf; ++f) row[f] = 1;
    p.add_row(std::move(row), lp::Relation::Equal, Rational(1));
  }

  lp::LpOutcome out = lp::solve(p);
  if (!out.is_optimal())
    throw std::logic_error("hull minimax LP must be solvable on finite instances");
  const auto& opt = out.optimal();

  std::vector<Rational> mw(opt.primal.begin(), opt.primal.begin() + nf);
  ProbabilityMeasure m(a.row_labels(), std::move(mw));

  // Duals of the per-point rows are <= 0 and sum to -1; negating them
  // yields the optimal point weights.
  std::vector<Rational> hw(nx);
  for (std::size_t x = 0; x < nx; ++x) hw[x] = -opt.dual[x];
  DiscreteMeasure h(a.col_labels(), std::move(hw));

  return {opt.value, m.trimmed(), h.trimmed()};
}

struct GameValue {
  Rational value;
  ProbabilityMeasure measure;          // over rows
  DiscreteMeasure point_weights;       // the optimal h, mixture of generators
  std::vector<Rational> generator_weights;
};

/// The bilinear game over the free vector space: value of
/// min_{F in intr(F)} sup_{h in conv(generators)} <F,h>
///   = sup_h inf_f <f,h>,
/// both sides attained and exactly equal. Omitting the generators plays
/// against all point masses, i.e. H = Delta(X).
inline GameValue game_value(
    const FamilyMatrix& a,
    const std::optional<std::vector<DiscreteMeasure>>& generators = std::nullopt) {
  std::vector<DiscreteMeasure> gens;
  if (generators) {
    if (generators->empty())
      throw std::invalid_argument("game needs at least one generator");
    gens = *generators;
  } else {
    for (const auto& x : a.col_labels()) gens.push_back(DiscreteMeasure::point_mass(x));
  }
  const std::size_t nf = a.rows(), k = gens.size();

  // <f, h_j> for every row f and generator j.
  std::vector<std::vector<Rational>> pay(nf, std::vector<Rational>(k));
  for (std::size_t j = 0; j < k; ++j) {
    auto col = pairing(a, gens[j]);
    for (std::size_t f = 0; f < nf; ++f) pay[f][j] = col[f];
  }

  auto p = lp::StandardLp::with_variables(k + 1, lp::Sense::Maximize);
  p.objective[k] = 1;        // maximize u
  p.lower[k] = std::nullopt;  // u free
  for (std::size_t f = 0; f < nf; ++f) {
    std::vector<Rational> row(k + 1, Rational(0));
    for (std::size_t j = 0; j < k; ++j) row[j] = pay[f][j];
    row[k] = -1;
    p.add_row(std::move(row), lp::Relation::GreaterEq, Rational(0));
  }
  {
    std::vector<Rational> row(k + 1, Rational(0));
    for (std::size_t j = 0; j < k; ++j) row[j] = 1;
    p.add_row(std::move(row), lp::Relation::Equal, Rational(1));
  }

  lp::LpOutcome out = lp::solve(p);
  if (!out.is_optimal())
    throw std::logic_error("game LP must be solvable on finite instances");
  const auto& opt = out.optimal();

  std::vector<Rational> alpha(opt.primal.begin(), opt.primal.begin() + k);
  DiscreteMeasure h;
  {
    std::map<std::string, Rational> acc;
    for (std::size_t j = 0; j < k; ++j) {
      if (alpha[j] == 0) continue;
      for (std::size_t i = 0; i < gens[j].size(); ++i)
        acc[gens[j].support()[i]] += alpha[j] * gens[j].weights()[i];
    }
    std::vector<std::string> s;
    std::vector<Rational> w;
    for (auto& [label, weight] : acc)
      if (weight != 0) {
        s.push_back(label);
        w.push_back(weight);
      }
    if (s.empty()) {
      s.push_back(gens.front().support().empty() ? a.col_labels().front()
                                                 : gens.front().support().front());
      w.push_back(Rational(0));
    }
    h = DiscreteMeasure(std::move(s), std::move(w));
  }

  // Row duals are <= 0 in this orientation and sum to -1.
  std::vector<Rational> mw(nf);
  for (std::size_t f = 0; f < nf; ++f) mw[f] = -opt.dual[f];
  ProbabilityMeasure m(a.row_labels(), std::move(mw));

  return {opt.value, m.trimmed(), std::move(h), std::move(alpha)};
}

struct ConcavityViolation {
  std::string x;
  std::string x_prime;
  Rational gap_lo;  // the open interval (gap_lo, gap_hi) of mixing
  Rational gap_hi;  // weights no candidate point can dominate
};

struct ConcavityReport {
  bool concave_like;
  std::optional<ConcavityViolation> violation;
};

/// A family is concave-like on X when every two-point mixture of values
/// is dominated, at each mixing weight, by the values at some point.
/// Per ordered pair (x,x') the admissible weights for a candidate x''
/// form a closed rational interval; the family is concave-like iff the
/// union of these intervals covers [0,1]. Decided by exact sweeping.
inline ConcavityReport is_concave_like(const FamilyMatrix& a) {
  const std::size_t nf = a.rows(), nx = a.cols();
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t xp = 0; xp < nx; ++xp) {
      if (x == xp) continue;
      std::vector<std::pair<Rational, Rational>> intervals;
      for (std::size_t cand = 0; cand < nx; ++cand) {
        Rational lo = 0, hi = 1;
        bool empty = false;
        for (std::size_t f = 0; f < nf && !empty; ++f) {
          // t*A[f][x] + (1-t)*A[f][x'] <= A[f][cand]
          Rational coeff = a.at(f, x) - a.at(f, xp);
          Rational rhs = a.at(f, cand) - a.at(f, xp);
          if (coeff == 0) {
            if (rhs < 0) empty = true;
          } else if (coeff > 0) {
            Rational bound = rhs / coeff;
            if (bound < hi) hi = bound;
          } else {
            Rational bound = rhs / coeff;
            if (bound > lo) lo = bound;
          }
        }
        if (!empty && lo <= hi) intervals.emplace_back(lo, hi);
      }
      std::sort(intervals.begin(), intervals.end());
      Rational covered = 0;
      bool gap = false;
      Rational gap_hi = 1;
      for (const auto& [lo, hi] : intervals) {
        if (lo > covered) {
          gap = true;
          gap_hi = lo;
          break;
        }
        if (hi > covered) covered = hi;
      }
      if (!gap && covered < 1) {
        gap = true;
        gap_hi = 1;
      }
      if (gap)
        return {false,
                ConcavityViolation{a.col_labels()[x], a.col_labels()[xp], covered,
                                   gap_hi}};
    }
  }
  return {true, std::nullopt};
}

/// Searches for a column whose values sit below the integral of the
/// family against m in every row. On a finite set the paper's
/// sub-barycentre sequences collapse to such a single exact point.
inline std::optional<std::string> find_sub_barycentre(const FamilyMatrix& a,
                                                      const ProbabilityMeasure& m) {
  std::vector<Rational> bary(a.rows(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::size_t x = a.col_index(m.support()[i]);
    for (std::size_t f = 0; f < a.rows(); ++f)
      bary[f] += m.weights()[i] * a.at(f, x);
  }
  for (std::size_t cand = 0; cand < a.cols(); ++cand) {
    bool ok = true;
    for (std::size_t f = 0; f < a.rows() && ok; ++f)
      if (a.at(f, cand) > bary[f]) ok = false;
    if (ok) return a.col_labels()[cand];
  }
  return std::nullopt;
}

struct LocalMinimax {
  Rational value;
  ProbabilityMeasure measure;  // supported inside the best subfamily
  std::size_t best_index;
  std::vector<DualityPair> per_subfamily;
};

/// Minimax over measures confined to one of the given subfamilies:
/// the infimum of the subfamily hull values, with its attaining measure
/// extended by zero outside the subfamily. When every subfamily is
/// concave-like this equals inf_alpha sup_x inf_{f in F_alpha} f(x).
inline LocalMinimax local_minimax(const FamilyMatrix& a,
                                  const std::vector<std::vector<std::string>>& subfamilies) {
  if (subfamilies.empty())
    throw std::invalid_argument("local minimax needs at least one subfamily");
  LocalMinimax out;
  out.per_subfamily.reserve(subfamilies.size());
  for (std::size_t s = 0; s < subfamilies.size(); ++s) {
    const auto& labels = subfamilies[s];
    if (labels.empty())
      throw std::invalid_argument("subfamily " + std::to_string(s) + " is empty");
    std::vector<std::string> rows;
    std::vector<std::vector<Rational>> values;
    for (const auto& l : labels) {
      rows.push_back(l);
      values.push_back(a.row(a.row_index(l)));
    }
    FamilyMatrix sub(std::move(rows), a.col_labels(), std::move(values));
    DualityPair pair = hull_minimax(sub);
    if (s == 0 || pair.value < out.value) {
      out.value = pair.value;
      out.measure = pair.measure;
      out.best_index = s;
    }
    out.per_subfamily.push_back(std::move(pair));
  }
  return out;
}

struct MinimaxReport {
  Rational lower;
  std::string lower_attained_at;
  Rational upper;
  std::string upper_attained_at;
  Rational hull_value;
  ProbabilityMeasure optimal_measure;
  DiscreteMeasure optimal_point_weights;
  bool concave_like = false;
  std::optional<ConcavityViolation> concavity_violation;
  std::optional<std::string> sub_barycentre;  // row label, transposed check
};

/// One-stop report: scan values, the hull LP with its duality pair, the
/// concave-likeness decision and the transposed sub-barycentre check for
/// the attained measure.
inline MinimaxReport analyze(const FamilyMatrix& a) {
  MinimaxReport r;
  auto lo = lower_value(a);
  r.lower = lo.value;
  r.lower_attained_at = lo.attained_at;
  auto up = upper_value(a);
  r.upper = up.value;
  r.upper_attained_at = up.attained_at;

  DualityPair pair = hull_minimax(a);
  r.hull_value = pair.value;
  r.optimal_measure = pair.measure;
  r.optimal_point_weights = pair.point_weights;

  ConcavityReport c = is_concave_like(a);
  r.concave_like = c.concave_like;
  r.concavity_violation = c.violation;

  r.sub_barycentre = find_sub_barycentre(a.transposed(), r.optimal_measure);
  return r;
}

}  // namespace fincert::minimax

#endif  // FINCERT_MINIMAX_HPP
