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

#ifndef FINCERT_LP_HPP
#define FINCERT_LP_HPP

#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fincert/rational.hpp"

namespace fincert::lp {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Sense { Minimize, Maximize };

/// min/max c'x subject to row constraints and variable bounds.
/// Lower bounds default to 0; nullopt means the variable is free.
/// Everything is exact rational; there is no tolerance anywhere.
struct StandardLp {
  Sense sense = Sense::Minimize;
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> rows;
  std::vector<Relation> relations;
  std::vector<Rational> rhs;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;

  static StandardLp with_variables(std::size_t n, Sense sense = Sense::Minimize) {
    StandardLp lp;
    lp.sense = sense;
    lp.objective.assign(n, Rational(0));
    lp.lower.assign(n, Rational(0));
    lp.upper.assign(n, std::nullopt);
    return lp;
  }

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }

  void add_row(std::vector<Rational> coeffs, Relation rel, Rational b) {
    if (coeffs.size() != num_vars())
      throw std::invalid_argument("constraint row has wrong arity");
    rows.push_back(std::move(coeffs));
    relations.push_back(rel);
    rhs.push_back(std::move(b));
  }

  void validate() const {
    const std::size_t n = num_vars();
    if (n == 0) throw std::invalid_argument("LP needs at least one variable");
    if (lower.size() != n || upper.size() != n)
      throw std::invalid_argument("bound vectors have wrong arity");
    if (relations.size() != rows.size() || rhs.size() != rows.size())
      throw std::invalid_argument("row metadata out of sync");
    for (const auto& row : rows)
      if (row.size() != n) throw std::invalid_argument("ragged constraint matrix");
    for (std::size_t j = 0; j < n; ++j)
      if (lower[j] && upper[j] && *lower[j] > *upper[j])
        throw std::invalid_argument("crossed bounds on variable " + std::to_string(j));
  }
};

/// Optimal solutions carry the full exact certificate: primal point,
/// row duals and reduced costs. Sign conventions (Minimize):
///   dual[i] >= 0 for >= rows, <= 0 for <= rows, free for = rows;
///   reduced[j] = c_j - dual'A_j, nonnegative when x_j sits at its lower
///   bound, nonpositive at its upper bound, zero when strictly inside or
///   free. For Maximize all signs mirror. Complementary slackness and
///   primal value = dual value hold exactly.
struct LpOptimal {
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  std::vector<Rational> reduced;
  Rational value;
};

/// Farkas certificate of infeasibility: multipliers y over the rows
/// (y_i >= 0 for >= rows, y_i <= 0 for <= rows) such that the aggregated
/// inequality (y'A)x >= y'b cannot be met anywhere inside the bound box:
/// sup over the box of (y'A)x is finite and strictly below y'b.
struct LpInfeasible {
  std::vector<Rational> farkas;
};

/// A feasible point plus an exact improving recession direction.
struct LpUnbounded {
  std::vector<Rational> origin;
  std::vector<Rational> ray;
};

class LpOutcome {
 public:
  LpOutcome(LpOptimal o) : v_(std::move(o)) {}
  LpOutcome(LpInfeasible o) : v_(std::move(o)) {}
  LpOutcome(LpUnbounded o) : v_(std::move(o)) {}

  bool is_optimal() const { return std::holds_alternative<LpOptimal>(v_); }
  bool is_infeasible() const { return std::holds_alternative<LpInfeasible>(v_); }
  bool is_unbounded() const { return std::holds_alternative<LpUnbounded>(v_); }

  const LpOptimal& optimal() const { return std::get<LpOptimal>(v_); }
  const LpInfeasible& infeasible() const { return std::get<LpInfeasible>(v_); }
  const LpUnbounded& unbounded() const { return std::get<LpUnbounded>(v_); }

 private:
  std::variant<LpOptimal, LpInfeasible, LpUnbounded> v_;
};

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  assert(a.size() == b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

namespace detail {

// Two-phase dense-tableau simplex with Bland's least-index rule in both
// phases, over exact rationals. Bland guarantees termination; speed is
// not a concern at the instance sizes this library targets.
class Simplex {
 public:
  explicit Simplex(const StandardLp& lp) : lp_(lp) {
    lp.validate();
    build();
  }

  LpOutcome run() {
    if (!phase_one()) return LpInfeasible{extract_farkas()};
    pivot_out_artificials();
    if (auto ray = phase_two()) return *ray;
    return extract_optimal();
  }

 private:
  // Transformed column bookkeeping. Each original variable becomes one
  // shifted column (finite lower bound) or a split pair (free).
  struct VarMap {
    std::size_t pos_col;
    std::size_t neg_col = SIZE_MAX;  // used only for free variables
    Rational shift;                  // x = shift + x~ for bounded vars
    bool free = false;
  };

  const StandardLp& lp_;

  std::size_t n_cols_ = 0;  // structural + slack + artificial
  std::size_t n_struct_ = 0;
  std::size_t n_rows_ = 0;  // caller rows + upper-bound rows
  std::vector<VarMap> vars_;
  std::vector<Rational> cost_;              // phase-two structural costs
  std::vector<std::vector<Rational>> tab_;  // n_rows_ x (n_cols_ + 1)
  std::vector<Rational> rc_;                // reduced-cost row, rc_[n_cols_] = -objval
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> identity_col_;   // initial basis column per row
  std::vector<int> row_sign_;               // +-1 applied to reach rhs >= 0
  std::vector<Relation> row_rel_;           // relation per tableau row
  std::vector<std::size_t> row_bound_var_;  // SIZE_MAX for caller rows
  std::vector<bool> is_artificial_;
  std::vector<bool> blocked_;
  int sense_flip_ = 1;  // -1 when caller maximizes

  void build() {
    sense_flip_ = lp_.sense == Sense::Maximize ? -1 : 1;
    const std::size_t n = lp_.num_vars();

    vars_.resize(n);
    n_struct_ = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (lp_.lower[j]) {
        vars_[j] = {n_struct_++, SIZE_MAX, *lp_.lower[j], false};
      } else {
        vars_[j].free = true;
        vars_[j].shift = 0;
        vars_[j].pos_col = n_struct_++;
        vars_[j].neg_col = n_struct_++;
      }
    }

    cost_.assign(n_struct_, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      Rational c = lp_.objective[j] * sense_flip_;
      cost_[vars_[j].pos_col] += c;
      if (vars_[j].free) cost_[vars_[j].neg_col] -= c;
    }

    // Caller rows first, then one <= row per finite upper bound.
    struct RawRow {
      std::vector<Rational> a;  // structural coefficients
      Relation rel;
      Rational b;
      std::size_t bound_var;
    };
    std::vector<RawRow> raw;
    for (std::size_t i = 0; i < lp_.num_rows(); ++i) {
      RawRow r{std::vector<Rational>(n_struct_, Rational(0)), lp_.relations[i],
               lp_.rhs[i], SIZE_MAX};
      for (std::size_t j = 0; j < n; ++j) {
        const Rational& a = lp_.rows[i][j];
        if (a == 0) continue;
        r.a[vars_[j].pos_col] += a;
        if (vars_[j].free) r.a[vars_[j].neg_col] -= a;
        else r.b -= a * vars_[j].shift;
      }
      raw.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!lp_.upper[j]) continue;
      RawRow r{std::vector<Rational>(n_struct_, Rational(0)), Relation::LessEq,
               *lp_.upper[j], j};
      r.a[vars_[j].pos_col] += 1;
      if (vars_[j].free) r.a[vars_[j].neg_col] -= 1;
      else r.b -= vars_[j].shift;
      raw.push_back(std::move(r));
    }

    n_rows_ = raw.size();
    std::size_t n_slack = 0;
    for (const auto& r : raw)
      if (r.rel != Relation::Equal) ++n_slack;

    // Column layout: structural | slack | artificial. Artificial columns
    // are appended lazily below.
    std::size_t slack_base = n_struct_;
    n_cols_ = n_struct_ + n_slack;

    tab_.assign(n_rows_, std::vector<Rational>());
    basis_.assign(n_rows_, SIZE_MAX);
    identity_col_.assign(n_rows_, SIZE_MAX);
    row_sign_.assign(n_rows_, 1);
    row_rel_.resize(n_rows_);
    row_bound_var_.resize(n_rows_);

    std::vector<std::size_t> slack_col(n_rows_, SIZE_MAX);
    std::size_t next_slack = slack_base;
    for (std::size_t i = 0; i < n_rows_; ++i) {
      row_rel_[i] = raw[i].rel;
      row_bound_var_[i] = raw[i].bound_var;
      if (raw[i].rel != Relation::Equal) slack_col[i] = next_slack++;
    }

    std::size_t n_art = 0;
    std::vector<std::size_t> art_row;
    for (std::size_t i = 0; i < n_rows_; ++i) {
      int sign = raw[i].b < 0 ? -1 : 1;
      row_sign_[i] = sign;
      int slack_coeff = raw[i].rel == Relation::LessEq ? 1 : -1;
      bool slack_is_basis =
          raw[i].rel != Relation::Equal && sign * slack_coeff == 1;
      if (!slack_is_basis) {
        ++n_art;
        art_row.push_back(i);
      }
    }

    std::size_t art_base = n_cols_;
    n_cols_ += n_art;
    is_artificial_.assign(n_cols_, false);
    blocked_.assign(n_cols_, false);
    for (std::size_t k = 0; k < n_art; ++k) is_artificial_[art_base + k] = true;

    for (std::size_t i = 0; i < n_rows_; ++i) {
      auto& row = tab_[i];
      row.assign(n_cols_ + 1, Rational(0));
      int sign = row_sign_[i];
      for (std::size_t j = 0; j < n_struct_; ++j)
        if (raw[i].a[j] != 0) row[j] = raw[i].a[j] * sign;
      row[n_cols_] = raw[i].b * sign;
      if (raw[i].rel != Relation::Equal) {
        int slack_coeff = raw[i].rel == Relation::LessEq ? 1 : -1;
        row[slack_col[i]] = Rational(slack_coeff * sign);
      }
    }
    std::size_t next_art = art_base;
    for (std::size_t i = 0; i < n_rows_; ++i) {
      int sign = row_sign_[i];
      int slack_coeff = row_rel_[i] == Relation::LessEq ? 1 : -1;
      bool slack_is_basis = row_rel_[i] != Relation::Equal && sign * slack_coeff == 1;
      if (slack_is_basis) {
        basis_[i] = slack_col[i];
        identity_col_[i] = slack_col[i];
      } else {
        tab_[i][next_art] = 1;
        basis_[i] = next_art;
        identity_col_[i] = next_art;
        ++next_art;
      }
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = tab_[r];
    Rational inv = Rational(1) / prow[c];
    for (auto& e : prow) e *= inv;
    prow[c] = 1;  // avoid drift from the loop above
    for (std::size_t i = 0; i < n_rows_; ++i) {
      if (i == r || tab_[i][c] == 0) continue;
      Rational factor = tab_[i][c];
      auto& row = tab_[i];
      for (std::size_t j = 0; j <= n_cols_; ++j)
        if (prow[j] != 0) row[j] -= factor * prow[j];
      row[c] = 0;
    }
    if (rc_[c] != 0) {
      Rational factor = rc_[c];
      for (std::size_t j = 0; j <= n_cols_; ++j)
        if (prow[j] != 0) rc_[j] -= factor * prow[j];
      rc_[c] = 0;
    }
    if (is_artificial_[basis_[r]]) blocked_[basis_[r]] = true;
    basis_[r] = c;
  }

  // Returns false when stalled unbounded (cannot happen in phase one) —
  // the entering column index is reported through `entering`.
  bool iterate(std::optional<std::size_t>* stalled_col) {
    for (;;) {
      std::size_t enter = SIZE_MAX;
      for (std::size_t j = 0; j < n_cols_; ++j) {
        if (blocked_[j]) continue;
        if (rc_[j] < 0) {
          enter = j;
          break;  // Bland: least index
        }
      }
      if (enter == SIZE_MAX) return true;

      std::size_t leave = SIZE_MAX;
      Rational best_ratio;
      for (std::size_t i = 0; i < n_rows_; ++i) {
        const Rational& a = tab_[i][enter];
        if (a <= 0) continue;
        Rational ratio = tab_[i][n_cols_] / a;
        if (leave == SIZE_MAX || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == SIZE_MAX) {
        if (stalled_col) *stalled_col = enter;
        return false;
      }
      pivot(leave, enter);
    }
  }

  bool phase_one() {
    rc_.assign(n_cols_ + 1, Rational(0));
    bool any_art = false;
    for (std::size_t j = 0; j < n_cols_; ++j)
      if (is_artificial_[j]) {
        rc_[j] = 1;
        any_art = true;
      }
    if (!any_art) return true;
    for (std::size_t i = 0; i < n_rows_; ++i) {
      if (!is_artificial_[basis_[i]]) continue;
      for (std::size_t j = 0; j <= n_cols_; ++j)
        if (tab_[i][j] != 0) rc_[j] -= tab_[i][j];
    }
    // Artificials may not re-enter once out: keeps phase one finite and
    // leaves the feasible region of the real problem intact.
    bool ok = iterate(nullptr);
    assert(ok);  // phase-one objective is bounded below by zero
    (void)ok;
    return phase_one_value() == 0;
  }

  Rational phase_one_value() const { return -rc_[n_cols_]; }

  void pivot_out_artificials() {
    for (std::size_t i = 0; i < n_rows_; ++i) {
      if (!is_artificial_[basis_[i]]) continue;
      for (std::size_t j = 0; j < n_cols_; ++j) {
        if (is_artificial_[j] || tab_[i][j] == 0) continue;
        pivot(i, j);  // basic value is zero, any nonzero entry will do
        break;
      }
      // A fully zero row is redundant; its artificial stays basic at
      // level zero and never moves again.
    }
    for (std::size_t j = 0; j < n_cols_; ++j)
      if (is_artificial_[j]) blocked_[j] = true;
  }

  std::optional<LpUnbounded> phase_two() {
    rc_.assign(n_cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < n_struct_; ++j) rc_[j] = cost_[j];
    for (std::size_t i = 0; i < n_rows_; ++i) {
      std::size_t b = basis_[i];
      if (b >= n_struct_ || cost_[b] == 0) continue;
      Rational cb = cost_[b];
      for (std::size_t j = 0; j <= n_cols_; ++j)
        if (tab_[i][j] != 0) rc_[j] -= cb * tab_[i][j];
    }
    std::optional<std::size_t> stalled;
    if (iterate(&stalled)) return std::nullopt;

    // Improving direction with no blocking row: recession ray.
    std::size_t e = *stalled;
    std::vector<Rational> dir(n_cols_, Rational(0));
    dir[e] = 1;
    for (std::size_t i = 0; i < n_rows_; ++i)
      if (tab_[i][e] != 0) dir[basis_[i]] = -tab_[i][e];

    LpUnbounded out;
    out.origin = current_primal();
    out.ray.assign(lp_.num_vars(), Rational(0));
    for (std::size_t j = 0; j < lp_.num_vars(); ++j) {
      out.ray[j] = dir[vars_[j].pos_col];
      if (vars_[j].free) out.ray[j] -= dir[vars_[j].neg_col];
    }
    return out;
  }

  std::vector<Rational> current_primal() const {
    std::vector<Rational> xt(n_cols_, Rational(0));
    for (std::size_t i = 0; i < n_rows_; ++i) xt[basis_[i]] = tab_[i][n_cols_];
    std::vector<Rational> x(lp_.num_vars());
    for (std::size_t j = 0; j < lp_.num_vars(); ++j) {
      x[j] = xt[vars_[j].pos_col];
      if (vars_[j].free) x[j] -= xt[vars_[j].neg_col];
      else x[j] += vars_[j].shift;
    }
    return x;
  }

  // Row duals of the current tableau, via the initial identity columns:
  // y_i = c_k - rc_k for the column k that started as +e_i.
  std::vector<Rational> tableau_duals(bool phase_one_costs) const {
    std::vector<Rational> y(n_rows_);
    for (std::size_t i = 0; i < n_rows_; ++i) {
      std::size_t k = identity_col_[i];
      Rational ck = 0;
      if (phase_one_costs) {
        if (is_artificial_[k]) ck = 1;
      } else {
        if (k < n_struct_) ck = cost_[k];
      }
      y[i] = ck - rc_[k];
    }
    return y;
  }

  std::vector<Rational> extract_farkas() const {
    std::vector<Rational> y = tableau_duals(true);
    std::vector<Rational> out(lp_.num_rows(), Rational(0));
    for (std::size_t i = 0; i < n_rows_; ++i) {
      if (row_bound_var_[i] != SIZE_MAX) continue;  // folded into the box
      out[i] = y[i] * row_sign_[i];
    }
    return out;
  }

  LpOptimal extract_optimal() const {
    LpOptimal out;
    out.primal = current_primal();

    std::vector<Rational> y = tableau_duals(false);
    out.dual.assign(lp_.num_rows(), Rational(0));
    for (std::size_t i = 0; i < lp_.num_rows(); ++i)
      out.dual[i] = y[i] * row_sign_[i] * sense_flip_;

    out.reduced.assign(lp_.num_vars(), Rational(0));
    for (std::size_t j = 0; j < lp_.num_vars(); ++j) {
      Rational d = lp_.objective[j];
      for (std::size_t i = 0; i < lp_.num_rows(); ++i)
        if (lp_.rows[i][j] != 0 && out.dual[i] != 0) d -= out.dual[i] * lp_.rows[i][j];
      out.reduced[j] = d;
    }
    out.value = dot(lp_.objective, out.primal);
    return out;
  }
};

}  // namespace detail

/// Deterministic exact solve: identical instances give identical
/// outcomes bit for bit (fixed pivot rule, fixed data layout).
inline LpOutcome solve(const StandardLp& lp) {
  detail::Simplex s(lp);
  return s.run();
}

/// Exact re-verification of an Optimal outcome: primal feasibility, dual
/// sign conventions, complementary slackness, reduced-cost consistency
/// and equality of primal and dual objective values. Zero residual.
inline bool verify_optimal(const StandardLp& lp, const LpOptimal& opt) {
  const std::size_t n = lp.num_vars(), m = lp.num_rows();
  if (opt.primal.size() != n || opt.dual.size() != m || opt.reduced.size() != n)
    return false;
  const int flip = lp.sense == Sense::Maximize ? -1 : 1;

  for (std::size_t j = 0; j < n; ++j) {
    if (lp.lower[j] && opt.primal[j] < *lp.lower[j]) return false;
    if (lp.upper[j] && opt.primal[j] > *lp.upper[j]) return false;
  }
  for (std::size_t i = 0; i < m; ++i) {
    Rational lhs = dot(lp.rows[i], opt.primal);
    switch (lp.relations[i]) {
      case Relation::LessEq:
        if (lhs > lp.rhs[i]) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < lp.rhs[i]) return false;
        break;
      case Relation::Equal:
        if (lhs != lp.rhs[i]) return false;
        break;
    }
    // Dual sign and complementary slackness, in minimize orientation.
    Rational y = opt.dual[i] * flip;
    if (lp.relations[i] == Relation::LessEq && y > 0) return false;
    if (lp.relations[i] == Relation::GreaterEq && y < 0) return false;
    if (y != 0 && lhs != lp.rhs[i]) return false;
  }

  Rational dual_value = dot(opt.dual, lp.rhs);
  for (std::size_t j = 0; j < n; ++j) {
    Rational d = lp.objective[j];
    for (std::size_t i = 0; i < m; ++i)
      if (lp.rows[i][j] != 0 && opt.dual[i] != 0) d -= opt.dual[i] * lp.rows[i][j];
    if (d != opt.reduced[j]) return false;
    Rational dm = d * flip;
    if (dm > 0) {
      if (!lp.lower[j] || opt.primal[j] != *lp.lower[j]) return false;
      dual_value += d * *lp.lower[j];
    } else if (dm < 0) {
      if (!lp.upper[j] || opt.primal[j] != *lp.upper[j]) return false;
      dual_value += d * *lp.upper[j];
    }
  }

  if (opt.value != dot(lp.objective, opt.primal)) return false;
  return dual_value == opt.value;
}

/// Exact Farkas check: sign conditions per row, then the aggregated
/// inequality (y'A)x >= y'b must be violated by the whole bound box.
inline bool verify_farkas(const StandardLp& lp, const std::vector<Rational>& y) {
  const std::size_t n = lp.num_vars(), m = lp.num_rows();
  if (y.size() != m) return false;
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.relations[i] == Relation::LessEq && y[i] > 0) return false;
    if (lp.relations[i] == Relation::GreaterEq && y[i] < 0) return false;
  }
  Rational box_sup = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Rational w = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (y[i] != 0 && lp.rows[i][j] != 0) w += y[i] * lp.rows[i][j];
    if (w > 0) {
      if (!lp.upper[j]) return false;
      box_sup += w * *lp.upper[j];
    } else if (w < 0) {
      if (!lp.lower[j]) return false;
      box_sup += w * *lp.lower[j];
    }
  }
  return box_sup < dot(y, lp.rhs);
}

/// Exact unboundedness check: origin feasible, ray keeps every
/// constraint and bound satisfied forever, objective strictly improves.
inline bool verify_unbounded(const StandardLp& lp, const LpUnbounded& u) {
  const std::size_t n = lp.num_vars(), m = lp.num_rows();
  if (u.origin.size() != n || u.ray.size() != n) return false;
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.lower[j] && u.origin[j] < *lp.lower[j]) return false;
    if (lp.upper[j] && u.origin[j] > *lp.upper[j]) return false;
    if (lp.lower[j] && u.ray[j] < 0) return false;
    if (lp.upper[j] && u.ray[j] > 0) return false;
  }
  for (std::size_t i = 0; i < m; ++i) {
    Rational at_origin = dot(lp.rows[i], u.origin);
    Rational along = dot(lp.rows[i], u.ray);
    switch (lp.relations[i]) {
      case Relation::LessEq:
        if (at_origin > lp.rhs[i] || along > 0) return false;
        break;
      case Relation::GreaterEq:
        if (at_origin < lp.rhs[i] || along < 0) return false;
        break;
      case Relation::Equal:
        if (at_origin != lp.rhs[i] || along != 0) return false;
        break;
    }
  }
  Rational gain = dot(lp.objective, u.ray);
  return lp.sense == Sense::Maximize ? gain > 0 : gain < 0;
}

}  // namespace fincert::lp

#endif  // FINCERT_LP_HPP
