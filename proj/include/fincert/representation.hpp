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

#ifndef FINCERT_REPRESENTATION_HPP
#define FINCERT_REPRESENTATION_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fincert/core.hpp"
#include "fincert/lp.hpp"

namespace fincert::representation {

/// A family H over X together with a candidate sufficient subset Z of
/// the points. Z is stored in the column order of the matrix.
struct SufficiencyInstance {
  FamilyMatrix functions;
  std::vector<std::string> subset;

  SufficiencyInstance(FamilyMatrix h, std::vector<std::string> z)
      : functions(std::move(h)), subset(normalize(functions, std::move(z))) {}

 private:
  static std::vector<std::string> normalize(const FamilyMatrix& h,
                                            std::vector<std::string> z) {
    if (z.empty()) throw std::invalid_argument("subset Z must be non-empty");
    std::set<std::string> seen;
    for (const auto& label : z) {
      (void)h.col_index(label);
      if (!seen.insert(label).second)
        throw LabelError("duplicate subset label '" + label + "'");
    }
    std::vector<std::string> ordered;
    for (const auto& label : h.col_labels())
      if (seen.count(label)) ordered.push_back(label);
    return ordered;
  }
};

/// A point outside Z together with a mixture of the functions whose
/// value at x strictly exceeds its best value on Z. The margin is the
/// exact gap.
struct SufficiencyViolation {
  std::string x;
  DeltaElement delta;  // probability over the function labels
  Rational margin;
};

struct Sufficient {};

using SufficiencyResult = std::variant<Sufficient, SufficiencyViolation>;

inline Rational violation_margin(const SufficiencyInstance& inst,
                                 const std::string& x, const DeltaElement& delta) {
  const auto& h = inst.functions;
  std::size_t xc = h.col_index(x);
  Rational at_x = 0;
  for (std::size_t i = 0; i < delta.size(); ++i)
    at_x += delta.weights()[i] * h.at(h.row_index(delta.support()[i]), xc);
  bool first = true;
  Rational best_on_z = 0;
  for (const auto& z : inst.subset) {
    std::size_t zc = h.col_index(z);
    Rational v = 0;
    for (std::size_t i = 0; i < delta.size(); ++i)
      v += delta.weights()[i] * h.at(h.row_index(delta.support()[i]), zc);
    if (first || v > best_on_z) {
      best_on_z = v;
      first = false;
    }
  }
  return at_x - best_on_z;
}

/// Z is sufficient when every mixture of the functions attains, at some
/// point of Z, at least its value at any x in X. Decided per x by the
/// epigraph LP max_delta [ <delta,H(x)> - max_z <delta,H(z)> ].
inline SufficiencyResult check_sufficiency(const SufficiencyInstance& inst) {
  const auto& h = inst.functions;
  const std::size_t nh = h.rows();
  std::set<std::string> in_z(inst.subset.begin(), inst.subset.end());

  for (std::size_t x = 0; x < h.cols(); ++x) {
    if (in_z.count(h.col_labels()[x])) continue;
    // Variables: delta (nh, >= 0), s (free). Maximize <delta,H(x)> - s
    // subject to s >= <delta,H(z)> for all z in Z, sum delta = 1.
    auto p = lp::StandardLp::with_variables(nh + 1, lp::Sense::Maximize);
    for (std::size_t f = 0; f < nh; ++f) p.objective[f] = h.at(f, x);
    p.objective[nh] = -1;
    p.lower[nh] = std::nullopt;
    for (const auto& z : inst.subset) {
      std::size_t zc = h.col_index(z);
      std::vector<Rational> row(nh + 1);
      for (std::size_t f = 0; f < nh; ++f) row[f] = h.at(f, zc);
      row[nh] = -1;
      p.add_row(std::move(row), lp::Relation::LessEq, Rational(0));
    }
    {
      std::vector<Rational> row(nh + 1, Rational(1));
      row[nh] = 0;
      p.add_row(std::move(row), lp::Relation::Equal, Rational(1));
    }
    lp::LpOutcome out = lp::solve(p);
    if (!out.is_optimal())
      throw std::logic_error("sufficiency LP must be solvable");
    if (out.optimal().value > 0) {
      std::vector<Rational> dw(out.optimal().primal.begin(),
                               out.optimal().primal.begin() + nh);
      DeltaElement delta = DeltaElement(h.row_labels(), std::move(dw)).trimmed();
      return SufficiencyViolation{h.col_labels()[x], delta, out.optimal().value};
    }
  }
  return Sufficient{};
}

struct RepresentingMeasure {
  ProbabilityMeasure measure;  // supported inside the smallest chain member
};

struct RepresentationInfeasible {
  // The Farkas ray of the representation LP is itself a sufficiency
  // violation at x: a mixture delta whose value at x beats all of Z.
  std::optional<SufficiencyViolation> violation;
};

using RepresentationResult = std::variant<RepresentingMeasure, RepresentationInfeasible>;

namespace detail {

inline void check_chain(const std::vector<std::vector<std::string>>& chain) {
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    std::set<std::string> small(chain[i].begin(), chain[i].end());
    std::set<std::string> big(chain[i + 1].begin(), chain[i + 1].end());
    if (!std::includes(big.begin(), big.end(), small.begin(), small.end()))
      throw std::invalid_argument("chain members are not nested");
  }
}

}  // namespace detail

/// Finds m_x supported on Z (or on the smallest member of a nested
/// chain) with h(x) <= integral of h against m_x for every function h.
/// A finite chain has a minimum, so "vanishing outside every member"
/// reduces to support inside the smallest one.
inline RepresentationResult representing_measure(
    const SufficiencyInstance& inst, const std::string& x,
    const std::optional<std::vector<std::vector<std::string>>>& chain = std::nullopt) {
  const auto& h = inst.functions;
  std::vector<std::string> z = inst.subset;
  if (chain) {
    if (chain->empty()) throw std::invalid_argument("empty chain");
    auto sorted = *chain;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.size() < b.size(); });
    detail::check_chain(sorted);
    z = SufficiencyInstance(h, sorted.front()).subset;
  }
  std::size_t xc = h.col_index(x);
  for (const auto& label : z)
    if (label == x) return RepresentingMeasure{ProbabilityMeasure::point_mass(x)};

  const std::size_t nz = z.size();
  auto p = lp::StandardLp::with_variables(nz);
  for (std::size_t f = 0; f < h.rows(); ++f) {
    std::vector<Rational> row(nz);
    for (std::size_t i = 0; i < nz; ++i) row[i] = h.at(f, h.col_index(z[i]));
    p.add_row(std::move(row), lp::Relation::GreaterEq, h.at(f, xc));
  }
  {
    std::vector<Rational> row(nz, Rational(1));
    p.add_row(std::move(row), lp::Relation::Equal, Rational(1));
  }

  lp::LpOutcome out = lp::solve(p);
  if (out.is_optimal()) {
    ProbabilityMeasure m(z, out.optimal().primal);
    return RepresentingMeasure{m.trimmed()};
  }
  if (!out.is_infeasible())
    throw std::logic_error("representation LP cannot be unbounded");

  // Farkas multipliers on the h-rows normalise to the violating delta.
  const auto& y = out.infeasible().farkas;
  Rational mass = 0;
  for (std::size_t f = 0; f < h.rows(); ++f) mass += y[f];
  RepresentationInfeasible info;
  if (mass > 0) {
    std::vector<std::string> support;
    std::vector<Rational> weights;
    for (std::size_t f = 0; f < h.rows(); ++f)
      if (y[f] != 0) {
        support.push_back(h.row_labels()[f]);
        weights.push_back(y[f] / mass);
      }
    DeltaElement delta(std::move(support), std::move(weights));
    SufficiencyInstance zi(h, z);
    info.violation =
        SufficiencyViolation{x, delta, violation_margin(zi, x, delta)};
  }
  return info;
}

/// Exact representation check: m is a probability on the subset and
/// h(x) <= integral for every h.
inline bool verify_representation(const SufficiencyInstance& inst,
                                  const std::string& x,
                                  const ProbabilityMeasure& m) {
  if (!m.is_probability()) return false;
  std::set<std::string> in_z(inst.subset.begin(), inst.subset.end());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.weights()[i] != 0 && !in_z.count(m.support()[i])) return false;
  const auto& h = inst.functions;
  std::size_t xc = h.col_index(x);
  for (std::size_t f = 0; f < h.rows(); ++f) {
    Rational v = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      v += m.weights()[i] * h.at(f, h.col_index(m.support()[i]));
    if (h.at(f, xc) > v) return false;
  }
  return true;
}

/// A sublinear functional on Q^d given as the pointwise max of finitely
/// many linear generators.
struct PolyhedralSublinear {
  std::string name;
  std::vector<std::vector<Rational>> generators;

  PolyhedralSublinear(std::string n, std::vector<std::vector<Rational>> gens)
      : name(std::move(n)), generators(std::move(gens)) {
    if (generators.empty())
      throw std::invalid_argument("sublinear functional needs a generator");
    for (const auto& g : generators)
      if (g.size() != generators.front().size())
        throw DimensionError("generators of mixed dimension");
  }

  std::size_t dimension() const { return generators.front().size(); }

  Rational operator()(const std::vector<Rational>& x) const {
    Rational best = lp::dot(generators.front(), x);
    for (std::size_t j = 1; j < generators.size(); ++j) {
      Rational v = lp::dot(generators[j], x);
      if (v > best) best = v;
    }
    return best;
  }
};

struct Dominated {};

/// A direction x where phi strictly beats every generator, i.e.
/// phi(x) > sup_f f(x).
struct StrassenViolation {
  std::vector<Rational> x;
};

using StrassenCheck = std::variant<Dominated, StrassenViolation>;

/// lambda on the functionals plus one linear t_f below each f, with
/// sum_f lambda(f) t_f = phi exactly. hull_weights records the convex
/// combination of f's generators producing t_f, so every claim checks
/// by pure re-substitution.
struct StrassenDecomposition {
  ProbabilityMeasure lambda;
  std::vector<std::vector<Rational>> t;             // one vector per functional
  std::vector<std::vector<Rational>> hull_weights;  // per functional, per generator
};

using StrassenResult = std::variant<StrassenDecomposition, StrassenViolation>;

namespace detail {

struct GeneratorIndex {
  std::size_t functional;
  std::size_t generator;
};

inline std::vector<GeneratorIndex> flatten(const std::vector<PolyhedralSublinear>& fs,
                                           std::size_t d) {
  if (fs.empty()) throw std::invalid_argument("need at least one functional");
  std::vector<GeneratorIndex> idx;
  for (std::size_t f = 0; f < fs.size(); ++f) {
    if (fs[f].dimension() != d)
      throw DimensionError("functional '" + fs[f].name + "' has wrong dimension");
    for (std::size_t j = 0; j < fs[f].generators.size(); ++j) idx.push_back({f, j});
  }
  return idx;
}

// phi linear is dominated by max over the generators iff phi lies in
// their convex hull; the Farkas ray of the hull LP is the separating
// direction.
inline std::variant<std::vector<Rational>, StrassenViolation> hull_weights_or_witness(
    const std::vector<Rational>& phi, const std::vector<PolyhedralSublinear>& fs) {
  const std::size_t d = phi.size();
  auto idx = flatten(fs, d);
  const std::size_t k = idx.size();

  auto p = lp::StandardLp::with_variables(k);
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<Rational> row(k);
    for (std::size_t j = 0; j < k; ++j)
      row[j] = fs[idx[j].functional].generators[idx[j].generator][c];
    p.add_row(std::move(row), lp::Relation::Equal, phi[c]);
  }
  {
    std::vector<Rational> row(k, Rational(1));
    p.add_row(std::move(row), lp::Relation::Equal, Rational(1));
  }

  lp::LpOutcome out = lp::solve(p);
  if (out.is_optimal()) return out.optimal().primal;
  if (!out.is_infeasible())
    throw std::logic_error("hull LP cannot be unbounded");
  const auto& y = out.infeasible().farkas;
  return StrassenViolation{std::vector<Rational>(y.begin(), y.begin() + d)};
}

}  // namespace detail

inline StrassenCheck strassen_dominated(const std::vector<Rational>& phi,
                                        const std::vector<PolyhedralSublinear>& fs) {
  auto r = detail::hull_weights_or_witness(phi, fs);
  if (std::holds_alternative<StrassenViolation>(r))
    return std::get<StrassenViolation>(r);
  return Dominated{};
}

/// Splits the hull weights per functional: lambda(f) is f's total mass
/// and t_f the conditional mixture of its generators (first generator
/// when the mass vanishes, where any vector below f would do).
inline StrassenResult strassen_decompose(const std::vector<Rational>& phi,
                                         const std::vector<PolyhedralSublinear>& fs) {
  auto r = detail::hull_weights_or_witness(phi, fs);
  if (std::holds_alternative<StrassenViolation>(r))
    return std::get<StrassenViolation>(r);
  const auto& w = std::get<std::vector<Rational>>(r);
  const std::size_t d = phi.size();
  auto idx = detail::flatten(fs, d);

  StrassenDecomposition out;
  std::vector<Rational> lambda(fs.size(), Rational(0));
  out.hull_weights.resize(fs.size());
  for (std::size_t f = 0; f < fs.size(); ++f)
    out.hull_weights[f].assign(fs[f].generators.size(), Rational(0));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    lambda[idx[j].functional] += w[j];
    out.hull_weights[idx[j].functional][idx[j].generator] = w[j];
  }

  out.t.resize(fs.size());
  for (std::size_t f = 0; f < fs.size(); ++f) {
    if (lambda[f] == 0) {
      out.t[f] = fs[f].generators.front();
      out.hull_weights[f].front() = 1;  // canonical weights for t_f
      continue;
    }
    std::vector<Rational> tf(d, Rational(0));
    for (std::size_t j = 0; j < fs[f].generators.size(); ++j) {
      if (out.hull_weights[f][j] == 0) continue;
      for (std::size_t c = 0; c < d; ++c)
        tf[c] += out.hull_weights[f][j] * fs[f].generators[j][c];
      out.hull_weights[f][j] /= lambda[f];
    }
    for (std::size_t c = 0; c < d; ++c) tf[c] /= lambda[f];
    out.t[f] = std::move(tf);
  }

  std::vector<std::string> names;
  for (const auto& f : fs) names.push_back(f.name);
  out.lambda = ProbabilityMeasure(names, lambda);
  return out;
}

/// Re-substitution check of a decomposition: lambda is a probability,
/// each t_f is the recorded convex mixture of f's generators (hence
/// t_f <= f pointwise), and sum_f lambda(f) t_f reproduces phi.
inline bool verify_strassen(const std::vector<Rational>& phi,
                            const std::vector<PolyhedralSublinear>& fs,
                            const StrassenDecomposition& dec) {
  const std::size_t d = phi.size();
  if (dec.t.size() != fs.size() || dec.hull_weights.size() != fs.size()) return false;
  if (!dec.lambda.is_probability()) return false;
  std::vector<Rational> recon(d, Rational(0));
  for (std::size_t f = 0; f < fs.size(); ++f) {
    if (dec.t[f].size() != d) return false;
    const auto& hw = dec.hull_weights[f];
    if (hw.size() != fs[f].generators.size()) return false;
    Rational mass = 0;
    std::vector<Rational> mix(d, Rational(0));
    for (std::size_t j = 0; j < hw.size(); ++j) {
      if (hw[j] < 0) return false;
      mass += hw[j];
      for (std::size_t c = 0; c < d; ++c) mix[c] += hw[j] * fs[f].generators[j][c];
    }
    if (mass != 1) return false;
    for (std::size_t c = 0; c < d; ++c)
      if (mix[c] != dec.t[f][c]) return false;
    Rational lf = dec.lambda.weight_of(fs[f].name);
    for (std::size_t c = 0; c < d; ++c) recon[c] += lf * dec.t[f][c];
  }
  return recon == phi;
}

inline bool verify_strassen_violation(const std::vector<Rational>& phi,
                                      const std::vector<PolyhedralSublinear>& fs,
                                      const std::vector<Rational>& x) {
  if (x.size() != phi.size()) return false;
  Rational lhs = lp::dot(phi, x);
  for (const auto& f : fs)
    if (f(x) >= lhs) return false;
  return true;
}

}  // namespace fincert::representation

#endif  // FINCERT_REPRESENTATION_HPP
