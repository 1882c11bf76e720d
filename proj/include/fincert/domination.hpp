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

#ifndef FINCERT_DOMINATION_HPP
#define FINCERT_DOMINATION_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fincert/core.hpp"
#include "fincert/lp.hpp"

namespace fincert::domination {

/// Family F and target family G over the same point set. Target columns
/// are reordered to the family's column order on construction.
struct DominationInstance {
  FamilyMatrix family;
  FamilyMatrix targets;

  DominationInstance(FamilyMatrix f, FamilyMatrix g)
      : family(std::move(f)), targets(align(family, std::move(g))) {}

 private:
  static FamilyMatrix align(const FamilyMatrix& fam, FamilyMatrix g) {
    if (g.cols() != fam.cols())
      throw DimensionError("family and targets disagree on the point set");
    bool same_order = true;
    for (std::size_t x = 0; x < fam.cols(); ++x)
      if (fam.col_labels()[x] != g.col_labels()[x]) {
        same_order = false;
        break;
      }
    if (same_order) return g;
    std::vector<std::vector<Rational>> values(g.rows(),
                                              std::vector<Rational>(g.cols()));
    for (std::size_t x = 0; x < fam.cols(); ++x) {
      std::size_t src = g.col_index(fam.col_labels()[x]);  // throws if missing
      for (std::size_t r = 0; r < g.rows(); ++r) values[r][x] = g.at(r, src);
    }
    return FamilyMatrix(g.row_labels(), fam.col_labels(), std::move(values));
  }
};

/// One entry of a balancedness violation: a target, a finitely supported
/// probability on the points, and how many times the pair is used.
struct BalancePair {
  std::string g_label;
  DeltaElement delta;
  Integer multiplicity;
};

struct BalanceViolation {
  std::vector<BalancePair> pairs;
};

using DominationResult = std::variant<ProbabilityMeasure, BalanceViolation>;

/// The exact excess of the balancedness inequality for a finite list of
/// pairs: sum_i n_i <g_i, delta_i> - sup_f <f, sum_i n_i delta_i>.
/// Positive means the inequality is violated. Every delta must be a
/// probability on the instance's points.
inline Rational balance_margin(const DominationInstance& inst,
                               const std::vector<BalancePair>& pairs) {
  const auto& fam = inst.family;
  Rational lhs = 0;
  std::vector<Rational> total(fam.cols(), Rational(0));
  for (const auto& pair : pairs) {
    if (pair.multiplicity <= 0)
      throw std::invalid_argument("pair multiplicities must be positive");
    if (!pair.delta.is_probability())
      throw std::invalid_argument("balance pairs need probability deltas");
    std::size_t g = inst.targets.row_index(pair.g_label);
    Rational mult(pair.multiplicity);
    for (std::size_t i = 0; i < pair.delta.size(); ++i) {
      std::size_t x = fam.col_index(pair.delta.support()[i]);
      const Rational& w = pair.delta.weights()[i];
      lhs += mult * w * inst.targets.at(g, x);
      total[x] += mult * w;
    }
  }
  Rational rhs;
  for (std::size_t f = 0; f < fam.rows(); ++f) {
    Rational v = 0;
    for (std::size_t x = 0; x < fam.cols(); ++x)
      if (total[x] != 0) v += total[x] * fam.at(f, x);
    if (f == 0 || v > rhs) rhs = v;
  }
  return lhs - rhs;
}

inline bool verify_balance(const DominationInstance& inst,
                           const std::vector<BalancePair>& pairs) {
  return balance_margin(inst, pairs) <= 0;
}

/// Exact check of the domination inequality g(x) <= sum_f m(f) A[f][x].
inline bool verify_dominating(const DominationInstance& inst,
                              const ProbabilityMeasure& m) {
  if (!m.is_probability()) return false;
  auto mix = integral(m, inst.family);
  for (std::size_t g = 0; g < inst.targets.rows(); ++g)
    for (std::size_t x = 0; x < inst.family.cols(); ++x)
      if (inst.targets.at(g, x) > mix[x]) return false;
  return true;
}

namespace detail {

// Groups a Farkas ray over the (g,x) rows into paper-shaped pairs: per
// target the positive part normalises to a probability delta_g, and the
// group masses clear denominators into integer multiplicities. Both
// sides of the balance inequality are positively homogeneous under
// replication, so the strict violation survives the scaling exactly.
inline BalanceViolation farkas_to_balance(const DominationInstance& inst,
                                          const std::vector<Rational>& farkas) {
  const auto& fam = inst.family;
  const std::size_t nx = fam.cols();
  std::vector<std::pair<std::size_t, Rational>> groups;  // (g, mass)
  std::vector<DeltaElement> deltas;
  for (std::size_t g = 0; g < inst.targets.rows(); ++g) {
    Rational mass = 0;
    for (std::size_t x = 0; x < nx; ++x) mass += farkas[g * nx + x];
    if (mass == 0) continue;
    std::vector<std::string> support;
    std::vector<Rational> weights;
    for (std::size_t x = 0; x < nx; ++x) {
      const Rational& y = farkas[g * nx + x];
      if (y != 0) {
        support.push_back(fam.col_labels()[x]);
        weights.push_back(y / mass);
      }
    }
    groups.emplace_back(g, mass);
    deltas.emplace_back(std::move(support), std::move(weights));
  }
  Integer common = 1;
  for (const auto& [g, mass] : groups)
    common = boost::multiprecision::lcm(common, denominator(mass));
  BalanceViolation out;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    Rational scaled = groups[k].second * common;
    out.pairs.push_back(BalancePair{inst.targets.row_labels()[groups[k].first],
                                    deltas[k], numerator(scaled)});
  }
  return out;
}

}  // namespace detail

/// The domination dichotomy: either a probability m on F with
/// g <= integral of F against m pointwise for every target g, or a
/// finite balancedness violation extracted from the Farkas ray. Exactly
/// one branch, decided by exact LP feasibility.
inline DominationResult find_dominating_measure(const DominationInstance& inst) {
  const auto& fam = inst.family;
  const std::size_t nf = fam.rows(), nx = fam.cols(), ng = inst.targets.rows();

  auto p = lp::StandardLp::with_variables(nf);
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t x = 0; x < nx; ++x) {
      std::vector<Rational> row(nf);
      for (std::size_t f = 0; f < nf; ++f) row[f] = fam.at(f, x);
      p.add_row(std::move(row), lp::Relation::GreaterEq, inst.targets.at(g, x));
    }
  {
    std::vector<Rational> row(nf, Rational(1));
    p.add_row(std::move(row), lp::Relation::Equal, Rational(1));
  }

  lp::LpOutcome out = lp::solve(p);
  if (out.is_optimal()) {
    ProbabilityMeasure m(fam.row_labels(), out.optimal().primal);
    return m.trimmed();
  }
  if (!out.is_infeasible())
    throw std::logic_error("domination LP cannot be unbounded");
  return detail::farkas_to_balance(inst, out.infeasible().farkas);
}

struct InHull {
  ProbabilityMeasure measure;
};

/// Separating evidence: signed point weights w with <g,w> > sup_f <f,w>.
struct NotInHull {
  std::vector<Rational> weights;
};

using HullResult = std::variant<InHull, NotInHull>;

/// Decides whether g is a mixture of the family rows, i.e. a point of
/// the integral hull, which for pointwise bounded finite families equals
/// the pointwise closed convex hull.
inline HullResult hull_membership(const FamilyMatrix& a,
                                  const std::vector<Rational>& g) {
  const std::size_t nf = a.rows(), nx = a.cols();
  if (g.size() != nx)
    throw DimensionError("target vector arity does not match the point set");

  auto p = lp::StandardLp::with_variables(nf);
  for (std::size_t x = 0; x < nx; ++x) {
    std::vector<Rational> row(nf);
    for (std::size_t f = 0; f < nf; ++f) row[f] = a.at(f, x);
    p.add_row(std::move(row), lp::Relation::Equal, g[x]);
  }
  {
    std::vector<Rational> row(nf, Rational(1));
    p.add_row(std::move(row), lp::Relation::Equal, Rational(1));
  }

  lp::LpOutcome out = lp::solve(p);
  if (out.is_optimal()) {
    ProbabilityMeasure m(a.row_labels(), out.optimal().primal);
    return InHull{m.trimmed()};
  }
  if (!out.is_infeasible())
    throw std::logic_error("hull membership LP cannot be unbounded");
  const auto& y = out.infeasible().farkas;
  return NotInHull{std::vector<Rational>(y.begin(), y.begin() + nx)};
}

inline bool verify_in_hull(const FamilyMatrix& a, const std::vector<Rational>& g,
                           const ProbabilityMeasure& m) {
  if (!m.is_probability()) return false;
  auto mix = integral(m, a);
  for (std::size_t x = 0; x < a.cols(); ++x)
    if (mix[x] != g[x]) return false;
  return true;
}

inline bool verify_not_in_hull(const FamilyMatrix& a, const std::vector<Rational>& g,
                               const std::vector<Rational>& w) {
  if (w.size() != a.cols()) return false;
  Rational lhs = lp::dot(g, w);
  for (std::size_t f = 0; f < a.rows(); ++f)
    if (lp::dot(a.row(f), w) >= lhs) return false;
  return true;
}

enum class PolyNorm { L1, LInf };

inline Rational poly_norm(const std::vector<Rational>& v, PolyNorm norm) {
  Rational out = 0;
  for (const auto& e : v) {
    Rational a = rational_abs(e);
    if (norm == PolyNorm::L1) out += a;
    else if (a > out) out = a;
  }
  return out;
}

inline const char* poly_norm_name(PolyNorm n) {
  return n == PolyNorm::L1 ? "l1" : "linf";
}

struct LinearFunctional {
  std::vector<Rational> phi;  // dual-norm(phi) <= rho, g_i <= <phi, x_i>
};

struct FanViolation {
  std::vector<Rational> p;  // convex weights with sum p_i g_i > rho*norm(sum p_i x_i)
};

using FanResult = std::variant<LinearFunctional, FanViolation>;

/// Norm-domination in the polyhedral special case: either a functional
/// in the dual ball of radius rho dominating g on the sample points, or
/// convex weights witnessing the failure of the balance inequality
///   sum p_i g(x_i) <= rho * norm(sum p_i x_i).
/// `norm` is the norm on the points; phi is constrained in its dual.
inline FanResult fan_norm_domination(const std::vector<std::vector<Rational>>& points,
                                     const std::vector<Rational>& g,
                                     const Rational& rho, PolyNorm norm) {
  if (points.empty()) throw std::invalid_argument("need at least one point");
  if (points.size() != g.size())
    throw DimensionError("one g value per point required");
  if (rho <= 0) throw std::invalid_argument("rho must be positive");
  const std::size_t d = points.front().size();
  if (d == 0) throw DimensionError("points must have positive dimension");
  for (const auto& x : points)
    if (x.size() != d) throw DimensionError("points of mixed dimension");
  const std::size_t n = points.size();

  // Variables: phi (free). For the linf point norm the l1 dual-ball
  // constraint needs auxiliary absolute-value variables a_j >= 0.
  const bool aux = norm == PolyNorm::LInf;
  const std::size_t nv = aux ? 2 * d : d;
  auto p = lp::StandardLp::with_variables(nv);
  for (std::size_t j = 0; j < d; ++j) p.lower[j] = std::nullopt;

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(nv, Rational(0));
    for (std::size_t j = 0; j < d; ++j) row[j] = points[i][j];
    p.add_row(std::move(row), lp::Relation::GreaterEq, g[i]);
  }
  if (!aux) {
    // dual ball is the box |phi_j| <= rho
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Rational> row(nv, Rational(0));
      row[j] = 1;
      p.add_row(row, lp::Relation::LessEq, rho);
      row[j] = -1;
      p.add_row(std::move(row), lp::Relation::LessEq, rho);
    }
  } else {
    // dual ball is the cross-polytope sum_j |phi_j| <= rho
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Rational> row(nv, Rational(0));
      row[j] = 1;
      row[d + j] = -1;
      p.add_row(row, lp::Relation::LessEq, Rational(0));
      row[j] = -1;
      p.add_row(std::move(row), lp::Relation::LessEq, Rational(0));
    }
    std::vector<Rational> row(nv, Rational(0));
    for (std::size_t j = 0; j < d; ++j) row[d + j] = 1;
    p.add_row(std::move(row), lp::Relation::LessEq, rho);
  }

  lp::LpOutcome out = lp::solve(p);
  if (out.is_optimal()) {
    const auto& primal = out.optimal().primal;
    return LinearFunctional{std::vector<Rational>(primal.begin(), primal.begin() + d)};
  }
  if (!out.is_infeasible())
    throw std::logic_error("fan domination LP cannot be unbounded");

  const auto& y = out.infeasible().farkas;
  std::vector<Rational> weights(y.begin(), y.begin() + n);
  Rational mass = 0;
  for (const auto& w : weights) mass += w;
  // Both sides scale linearly, so normalising to total weight one keeps
  // the strict violation and lands inside the sum p_i <= 1 format.
  for (auto& w : weights) w /= mass;
  return FanViolation{std::move(weights)};
}

inline bool verify_fan_functional(const std::vector<std::vector<Rational>>& points,
                                  const std::vector<Rational>& g, const Rational& rho,
                                  PolyNorm norm, const std::vector<Rational>& phi) {
  PolyNorm dual = norm == PolyNorm::L1 ? PolyNorm::LInf : PolyNorm::L1;
  if (poly_norm(phi, dual) > rho) return false;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (lp::dot(phi, points[i]) < g[i]) return false;
  return true;
}

inline bool verify_fan_violation(const std::vector<std::vector<Rational>>& points,
                                 const std::vector<Rational>& g, const Rational& rho,
                                 PolyNorm norm, const std::vector<Rational>& p) {
  if (p.size() != points.size()) return false;
  Rational mass = 0;
  for (const auto& w : p) {
    if (w < 0) return false;
    mass += w;
  }
  if (mass > 1) return false;
  const std::size_t d = points.front().size();
  std::vector<Rational> combo(d, Rational(0));
  Rational lhs = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    lhs += p[i] * g[i];
    for (std::size_t j = 0; j < d; ++j) combo[j] += p[i] * points[i][j];
  }
  return lhs > rho * poly_norm(combo, norm);
}

/// Builds the common-extension ("marginals") instance: the point set is
/// the cartesian product of the axes, and each axis contributes one
/// target row g_alpha composed with the projection onto that axis.
/// The caller supplies the family over the product points, whose labels
/// must be the axis labels joined with '|' in row-major product order.
inline DominationInstance marginal_instance(
    const std::vector<std::vector<std::string>>& axes,
    const std::vector<std::vector<Rational>>& marginal_targets,
    const FamilyMatrix& family_over_product) {
  if (axes.empty() || axes.size() != marginal_targets.size())
    throw DimensionError("one target per axis required");
  for (std::size_t a = 0; a < axes.size(); ++a)
    if (axes[a].empty() || axes[a].size() != marginal_targets[a].size())
      throw DimensionError("axis " + std::to_string(a) + " malformed");

  std::vector<std::string> product_labels;
  std::vector<std::vector<std::size_t>> coords;
  std::vector<std::size_t> idx(axes.size(), 0);
  bool done = false;
  while (!done) {
    std::string label;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      if (a) label += '|';
      label += axes[a][idx[a]];
    }
    product_labels.push_back(label);
    coords.push_back(idx);
    done = true;  // odometer, rightmost axis fastest
    for (std::size_t a = axes.size(); a-- > 0;) {
      if (++idx[a] < axes[a].size()) {
        done = false;
        break;
      }
      idx[a] = 0;
    }
  }

  std::vector<std::string> target_names;
  std::vector<std::vector<Rational>> target_values;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    target_names.push_back("marginal_" + std::to_string(a));
    std::vector<Rational> row(product_labels.size());
    for (std::size_t k = 0; k < product_labels.size(); ++k)
      row[k] = marginal_targets[a][coords[k][a]];
    target_values.push_back(std::move(row));
  }
  FamilyMatrix targets(std::move(target_names), product_labels,
                       std::move(target_values));

  // Align to the family's column order (and implicitly validate labels).
  return DominationInstance(family_over_product, std::move(targets));
}

}  // namespace fincert::domination

#endif  // FINCERT_DOMINATION_HPP
