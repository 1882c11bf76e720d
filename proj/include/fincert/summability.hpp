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

#ifndef FINCERT_SUMMABILITY_HPP
#define FINCERT_SUMMABILITY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fincert/core.hpp"
#include "fincert/lp.hpp"

namespace fincert::summability {

/// The least C with |g| <= C * integral of |f| against some probability
/// m on the family. When finite, (C, m) re-verify pointwise with zero
/// residual; the dual point weights certify minimality by weak duality:
/// sum_x w_x |f(x)| <= 1 for every f while sum_x w_x |g(x)| = C.
/// When g demands mass at a point where the whole family vanishes, no
/// constant works: `witness_point` names such a point and finite=false.
struct SummingWitness {
  bool finite = false;
  Rational constant;                  // C_g
  ProbabilityMeasure measure;         // m_g, meaningful when C > 0
  std::vector<Rational> dual_weights; // over X, certifies minimality
  std::optional<std::string> witness_point;
};

inline SummingWitness summing_constant(const FamilyMatrix& a,
                                       const std::vector<Rational>& g) {
  const std::size_t nf = a.rows(), nx = a.cols();
  if (g.size() != nx)
    throw DimensionError("target vector arity does not match the point set");

  // Infeasibility has a one-point witness: g nonzero where every |f| is
  // zero. Scan first so the failure is reported in the paper's shape.
  for (std::size_t x = 0; x < nx; ++x) {
    if (g[x] == 0) continue;
    bool all_zero = true;
    for (std::size_t f = 0; f < nf && all_zero; ++f)
      if (a.at(f, x) != 0) all_zero = false;
    if (all_zero) {
      SummingWitness w;
      w.finite = false;
      w.witness_point = a.col_labels()[x];
      return w;
    }
  }

  // Substituting mu = C*m linearises the search: min total mass of mu
  // subject to sum_f mu(f)|A[f][x]| >= |g(x)|.
  auto p = lp::StandardLp::with_variables(nf);
  for (std::size_t f = 0; f < nf; ++f) p.objective[f] = 1;
  for (std::size_t x = 0; x < nx; ++x) {
    std::vector<Rational> row(nf);
    for (std::size_t f = 0; f < nf; ++f) row[f] = rational_abs(a.at(f, x));
    p.add_row(std::move(row), lp::Relation::GreaterEq, rational_abs(g[x]));
  }

  lp::LpOutcome out = lp::solve(p);
  if (!out.is_optimal())
    throw std::logic_error("summing LP is feasible after the witness scan");
  const auto& opt = out.optimal();

  SummingWitness w;
  w.finite = true;
  w.constant = opt.value;
  w.dual_weights = opt.dual;  // >= 0 on the >= rows
  if (opt.value == 0) {
    // g == 0; any probability pairs with C = 0.
    w.measure = ProbabilityMeasure::point_mass(a.row_labels().front());
  } else {
    std::vector<Rational> mw(nf);
    for (std::size_t f = 0; f < nf; ++f) mw[f] = opt.primal[f] / opt.value;
    w.measure = ProbabilityMeasure(a.row_labels(), std::move(mw)).trimmed();
  }
  return w;
}

/// Exact re-check of a finite witness: feasibility of (C, m) pointwise,
/// plus minimality through the dual weights when they are supplied.
inline bool verify_summing(const FamilyMatrix& a, const std::vector<Rational>& g,
                           const SummingWitness& w) {
  const std::size_t nf = a.rows(), nx = a.cols();
  if (!w.finite) {
    if (!w.witness_point) return false;
    std::size_t x = a.col_index(*w.witness_point);
    if (g[x] == 0) return false;
    for (std::size_t f = 0; f < nf; ++f)
      if (a.at(f, x) != 0) return false;
    return true;
  }
  if (w.constant < 0 || !w.measure.is_probability()) return false;
  for (std::size_t x = 0; x < nx; ++x) {
    Rational bound = 0;
    for (std::size_t i = 0; i < w.measure.size(); ++i)
      bound += w.measure.weights()[i] *
               rational_abs(a.at(a.row_index(w.measure.support()[i]), x));
    if (rational_abs(g[x]) > w.constant * bound) return false;
  }
  if (!w.dual_weights.empty()) {
    if (w.dual_weights.size() != nx) return false;
    Rational attained = 0;
    for (std::size_t x = 0; x < nx; ++x) {
      if (w.dual_weights[x] < 0) return false;
      attained += w.dual_weights[x] * rational_abs(g[x]);
    }
    for (std::size_t f = 0; f < nf; ++f) {
      Rational row = 0;
      for (std::size_t x = 0; x < nx; ++x)
        row += w.dual_weights[x] * rational_abs(a.at(f, x));
      if (row > 1) return false;
    }
    if (attained != w.constant) return false;
  }
  return true;
}

/// The norm of ell_F(X) restricted to finitely supported h:
/// sup_f sum_x |f(x) h(x)|, an exact scan on finite instances.
inline Rational ell_norm(const FamilyMatrix& a, const std::vector<Rational>& h) {
  if (h.size() != a.cols())
    throw DimensionError("vector arity does not match the point set");
  Rational best = 0;
  for (std::size_t f = 0; f < a.rows(); ++f) {
    Rational s = 0;
    for (std::size_t x = 0; x < a.cols(); ++x)
      if (h[x] != 0) s += rational_abs(a.at(f, x) * h[x]);
    if (s > best) best = s;
  }
  return best;
}

struct PietschEstimate {
  SummingWitness witness;
  FamilyMatrix family;       // |<x*, x>|^p rows over the sample points
  std::vector<Rational> g;   // ||Tx||_inf^p over the sample points
};

/// Net-relaxed Pietsch bound: builds f_{x*}(x) = |<x*,x>|^p from the
/// dual net, g(x) = ||Tx||^p over the sample (sup norm keeps powers of
/// rationals exact, which is why p must be a positive integer here),
/// and prices the summing constant of that finite instance. The value
/// is a certified lower bound for the constant over the full sphere;
/// refining the net or the sample can only raise it.
inline PietschEstimate pietsch_estimate(const std::vector<std::vector<Rational>>& op,
                                        const Rational& p,
                                        const std::vector<std::vector<Rational>>& net,
                                        const std::vector<std::vector<Rational>>& sample) {
  if (net.empty() || sample.empty())
    throw std::invalid_argument("net and sample must be non-empty");
  if (p < 1) throw std::invalid_argument("p must be at least 1");
  if (!is_integer(p))
    throw std::invalid_argument("exact mode needs integer p; use the floating oracle otherwise");
  unsigned pe = static_cast<unsigned>(numerator(p));

  if (op.empty()) throw DimensionError("operator matrix is empty");
  const std::size_t d = op.front().size();
  for (const auto& row : op)
    if (row.size() != d) throw DimensionError("operator matrix is ragged");
  for (const auto& v : net)
    if (v.size() != d) throw DimensionError("net vector of wrong dimension");
  for (const auto& v : sample)
    if (v.size() != d) throw DimensionError("sample point of wrong dimension");

  std::vector<std::string> rows;
  std::vector<std::string> cols;
  for (std::size_t i = 0; i < net.size(); ++i) rows.push_back("n" + std::to_string(i + 1));
  for (std::size_t k = 0; k < sample.size(); ++k) cols.push_back("s" + std::to_string(k + 1));

  std::vector<std::vector<Rational>> values(net.size(),
                                            std::vector<Rational>(sample.size()));
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t k = 0; k < sample.size(); ++k)
      values[i][k] = rational_pow(rational_abs(lp::dot(net[i], sample[k])), pe);
  FamilyMatrix family(std::move(rows), std::move(cols), std::move(values));

  std::vector<Rational> g(sample.size());
  for (std::size_t k = 0; k < sample.size(); ++k) {
    Rational norm = 0;  // ||T x||_inf
    for (const auto& row : op) {
      Rational v = rational_abs(lp::dot(row, sample[k]));
      if (v > norm) norm = v;
    }
    g[k] = rational_pow(norm, pe);
  }

  SummingWitness w = summing_constant(family, g);
  return {std::move(w), std::move(family), std::move(g)};
}

}  // namespace fincert::summability

#endif  // FINCERT_SUMMABILITY_HPP
