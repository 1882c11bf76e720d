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

#ifndef FINCERT_ORACLE_HPP
#define FINCERT_ORACLE_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fincert/certificate.hpp"
#include "fincert/core.hpp"
#include "fincert/domination.hpp"

// Brute-force verifiers. Everything here is deliberately naive — no
// pruning, no cleverness — so that agreement with the LP path means
// something. Floating point is acceptable: the oracle never sits on the
// certified path.

namespace fincert::oracle {

namespace detail {

struct GridWorker {
  const std::vector<std::vector<double>>& rows;
  std::size_t nx;
  double inv;
  double best = std::numeric_limits<double>::infinity();

  void run(std::size_t f, unsigned remaining, std::vector<double>& acc) {
    const auto& row = rows[f];
    if (f + 1 == rows.size()) {
      double w = remaining * inv;
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t x = 0; x < nx; ++x) {
        double v = acc[x] + w * row[x];
        if (v > worst) worst = v;
      }
      if (worst < best) best = worst;
      return;
    }
    for (unsigned k = 0; k <= remaining; ++k) {
      if (k > 0)
        for (std::size_t x = 0; x < nx; ++x) acc[x] += inv * row[x];
      run(f + 1, remaining - k, acc);
    }
    for (std::size_t x = 0; x < nx; ++x) acc[x] -= remaining * inv * row[x];
  }
};

}  // namespace detail

/// Enumerates every measure with weights in {0, 1/N, ..., 1} summing to
/// one and returns the grid minimum of the mixture maxima. Guaranteed
/// within range(A)*|F|/N of the exact hull value. Partitioned over the
/// first row's weight across hardware threads; min is order-free, so
/// the result is deterministic.
inline double grid_minimax(const FamilyMatrix& a, unsigned resolution) {
  if (resolution == 0) throw std::invalid_argument("resolution must be positive");
  const std::size_t nf = a.rows(), nx = a.cols();
  std::vector<std::vector<double>> rows(nf, std::vector<double>(nx));
  for (std::size_t f = 0; f < nf; ++f)
    for (std::size_t x = 0; x < nx; ++x) rows[f][x] = to_double(a.at(f, x));

  if (nf == 1) {
    double worst = rows[0][0];
    for (double v : rows[0]) worst = std::max(worst, v);
    return worst;
  }

  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned workers = std::min<unsigned>(hw, resolution + 1);
  std::vector<double> results(workers);
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < workers; ++t) {
    threads.emplace_back([&, t] {
      detail::GridWorker w{rows, nx, 1.0 / resolution};
      std::vector<double> acc(nx, 0.0);
      for (unsigned k0 = t; k0 <= resolution; k0 += workers) {
        for (std::size_t x = 0; x < nx; ++x) acc[x] = k0 * w.inv * rows[0][x];
        w.run(1, resolution - k0, acc);
      }
      results[t] = w.best;
    });
  }
  for (auto& th : threads) th.join();
  double best = results[0];
  for (double v : results) best = std::min(best, v);
  return best;
}

/// Exhaustive balance scan over multisets of (target, point-mass) pairs
/// with at most `max_support` members. Returns the worst margin
/// lhs - rhs found (positive means a violation) with an achieving
/// multiset, all in exact arithmetic.
struct BalanceSearch {
  std::optional<Rational> worst_margin;
  std::vector<domination::BalancePair> worst_pairs;
};

inline BalanceSearch enumerate_balance(const domination::DominationInstance& inst,
                                       unsigned max_support,
                                       std::size_t node_cap = 2'000'000) {
  const auto& fam = inst.family;
  const std::size_t nf = fam.rows(), nx = fam.cols(), ng = inst.targets.rows();
  const std::size_t npairs = ng * nx;

  BalanceSearch out;
  std::vector<unsigned> counts(npairs, 0);
  std::vector<Rational> sums(nf, Rational(0));
  Rational lhs = 0;
  std::size_t nodes = 0;

  auto record = [&]() {
    Rational rhs = sums[0];
    for (const auto& s : sums)
      if (s > rhs) rhs = s;
    Rational margin = lhs - rhs;
    if (!out.worst_margin || margin > *out.worst_margin) {
      out.worst_margin = margin;
      out.worst_pairs.clear();
      for (std::size_t pi = 0; pi < npairs; ++pi) {
        if (counts[pi] == 0) continue;
        std::size_t g = pi / nx, x = pi % nx;
        out.worst_pairs.push_back(
            {inst.targets.row_labels()[g],
             DiscreteMeasure::point_mass(fam.col_labels()[x]),
             Integer(counts[pi])});
      }
    }
  };

  // Combinations with repetition: the next pair index never decreases.
  auto rec = [&](auto&& self, std::size_t start, unsigned depth) -> void {
    for (std::size_t pi = start; pi < npairs; ++pi) {
      if (++nodes > node_cap)
        throw std::length_error("balance enumeration exceeded its node cap");
      std::size_t g = pi / nx, x = pi % nx;
      counts[pi] += 1;
      lhs += inst.targets.at(g, x);
      for (std::size_t f = 0; f < nf; ++f) sums[f] += fam.at(f, x);
      record();
      if (depth + 1 < max_support) self(self, pi, depth + 1);
      counts[pi] -= 1;
      lhs -= inst.targets.at(g, x);
      for (std::size_t f = 0; f < nf; ++f) sums[f] -= fam.at(f, x);
    }
  };
  if (max_support > 0) rec(rec, 0, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Floating re-verification of certificates: same claims as the exact
// verifier, evaluated in double with a tolerance. Covers the paths the
// exact arithmetic cannot (euclidean norms, non-integer exponents).

namespace detail {

inline double fd(const Json& j) { return to_double(scalar_from_json(j)); }

inline std::vector<double> fdvec(const Json& j) {
  std::vector<double> out;
  for (const auto& e : j) out.push_back(fd(e));
  return out;
}

struct FloatMeasure {
  std::vector<std::string> support;
  std::vector<double> weights;
  double mass = 0;
};

inline FloatMeasure fmeasure(const Json& j) {
  FloatMeasure m;
  for (const auto& [key, value] : j.items()) {
    m.support.push_back(key);
    m.weights.push_back(fd(value));
    m.mass += m.weights.back();
  }
  return m;
}

inline std::vector<double> fmatrix_mix(const FamilyMatrix& a, const FloatMeasure& m) {
  std::vector<double> mix(a.cols(), 0.0);
  for (std::size_t i = 0; i < m.support.size(); ++i) {
    std::size_t f = a.row_index(m.support[i]);
    for (std::size_t x = 0; x < a.cols(); ++x)
      mix[x] += m.weights[i] * to_double(a.at(f, x));
  }
  return mix;
}

inline double fnorm(const std::vector<double>& v, const std::string& norm) {
  double out = 0;
  if (norm == "l1") {
    for (double e : v) out += std::fabs(e);
  } else if (norm == "linf") {
    for (double e : v) out = std::max(out, std::fabs(e));
  } else {  // l2
    for (double e : v) out += e * e;
    out = std::sqrt(out);
  }
  return out;
}

inline bool float_minimax(const Json& c, const FamilyMatrix& a, double tol) {
  double hull = fd(c.at("hull_value"));
  FloatMeasure m = fmeasure(c.at("optimal_measure"));
  FloatMeasure h = fmeasure(c.at("optimal_point_weights"));
  if (std::fabs(m.mass - 1) > tol || std::fabs(h.mass - 1) > tol) return false;
  auto mix = fmatrix_mix(a, m);
  double worst = -std::numeric_limits<double>::infinity();
  for (double v : mix) worst = std::max(worst, v);
  if (std::fabs(worst - hull) > tol) return false;
  double low = std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < a.rows(); ++f) {
    double v = 0;
    for (std::size_t i = 0; i < h.support.size(); ++i)
      v += h.weights[i] * to_double(a.at(f, a.col_index(h.support[i])));
    low = std::min(low, v);
  }
  return std::fabs(low - hull) <= tol;
}

inline bool float_domination(const Json& c, const Json& raw, double tol) {
  domination::DominationInstance inst(family_from_json(raw),
                                      family_from_json(raw, "targets"));
  if (c.at("branch") == "dominating_measure") {
    FloatMeasure m = fmeasure(c.at("measure"));
    if (std::fabs(m.mass - 1) > tol) return false;
    auto mix = fmatrix_mix(inst.family, m);
    for (std::size_t g = 0; g < inst.targets.rows(); ++g)
      for (std::size_t x = 0; x < inst.family.cols(); ++x)
        if (to_double(inst.targets.at(g, x)) - mix[x] > tol) return false;
    return true;
  }
  double lhs = 0;
  std::vector<double> total(inst.family.cols(), 0.0);
  for (const auto& e : c.at("pairs")) {
    double mult = std::strtod(e.at("multiplicity").get<std::string>().c_str(), nullptr);
    std::size_t g = inst.targets.row_index(e.at("g").get<std::string>());
    FloatMeasure delta = fmeasure(e.at("delta"));
    if (std::fabs(delta.mass - 1) > tol) return false;
    for (std::size_t i = 0; i < delta.support.size(); ++i) {
      std::size_t x = inst.family.col_index(delta.support[i]);
      lhs += mult * delta.weights[i] * to_double(inst.targets.at(g, x));
      total[x] += mult * delta.weights[i];
    }
  }
  double rhs = -std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < inst.family.rows(); ++f) {
    double v = 0;
    for (std::size_t x = 0; x < inst.family.cols(); ++x)
      v += total[x] * to_double(inst.family.at(f, x));
    rhs = std::max(rhs, v);
  }
  return lhs - rhs > -tol;
}

inline bool float_hull(const Json& c, const Json& raw, double tol) {
  FamilyMatrix a = family_from_json(raw);
  auto g = fdvec(c.at("target"));
  if (c.at("branch") == "in_hull") {
    FloatMeasure m = fmeasure(c.at("measure"));
    if (std::fabs(m.mass - 1) > tol) return false;
    auto mix = fmatrix_mix(a, m);
    for (std::size_t x = 0; x < a.cols(); ++x)
      if (std::fabs(mix[x] - g[x]) > tol) return false;
    return true;
  }
  auto w = fdvec(c.at("weights"));
  double lhs = 0;
  for (std::size_t x = 0; x < w.size(); ++x) lhs += g[x] * w[x];
  double rhs = -std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < a.rows(); ++f) {
    double v = 0;
    for (std::size_t x = 0; x < w.size(); ++x) v += to_double(a.at(f, x)) * w[x];
    rhs = std::max(rhs, v);
  }
  return lhs - rhs > -tol;
}

inline bool float_fan(const Json& c, const Json& raw, double tol) {
  FanInstance inst = fan_from_json(raw);
  double rho = fd(c.at("rho"));
  std::string norm = c.at("norm").get<std::string>();
  std::string dual = norm == "l1" ? "linf" : norm == "linf" ? "l1" : "l2";
  const std::size_t d = inst.points.front().size();
  if (c.at("branch") == "functional") {
    auto phi = fdvec(c.at("phi"));
    if (fnorm(phi, dual) > rho + tol) return false;
    for (std::size_t i = 0; i < inst.points.size(); ++i) {
      double v = 0;
      for (std::size_t j = 0; j < d; ++j) v += phi[j] * to_double(inst.points[i][j]);
      if (to_double(inst.g[i]) - v > tol) return false;
    }
    return true;
  }
  auto p = fdvec(c.at("p"));
  double lhs = 0, mass = 0;
  std::vector<double> combo(d, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < -tol) return false;
    mass += p[i];
    lhs += p[i] * to_double(inst.g[i]);
    for (std::size_t j = 0; j < d; ++j) combo[j] += p[i] * to_double(inst.points[i][j]);
  }
  if (mass > 1 + tol) return false;
  return lhs - rho * fnorm(combo, norm) > -tol;
}

inline bool float_sufficiency(const Json& c, const Json& raw, double tol) {
  FamilyMatrix h = family_from_json(raw);
  std::vector<std::string> subset = c.at("subset").get<std::vector<std::string>>();
  if (c.at("branch") == "violation") {
    FloatMeasure delta = fmeasure(c.at("delta"));
    if (std::fabs(delta.mass - 1) > tol) return false;
    std::size_t xc = h.col_index(c.at("x").get<std::string>());
    double at_x = 0;
    std::vector<double> row(h.cols(), 0.0);
    for (std::size_t i = 0; i < delta.support.size(); ++i) {
      std::size_t f = h.row_index(delta.support[i]);
      at_x += delta.weights[i] * to_double(h.at(f, xc));
      for (std::size_t x = 0; x < h.cols(); ++x)
        row[x] += delta.weights[i] * to_double(h.at(f, x));
    }
    double best_z = -std::numeric_limits<double>::infinity();
    for (const auto& z : subset) best_z = std::max(best_z, row[h.col_index(z)]);
    return at_x - best_z > -tol;
  }
  for (const auto& e : c.at("representations")) {
    std::size_t xc = h.col_index(e.at("x").get<std::string>());
    FloatMeasure m = fmeasure(e.at("measure"));
    if (std::fabs(m.mass - 1) > tol) return false;
    for (std::size_t f = 0; f < h.rows(); ++f) {
      double v = 0;
      for (std::size_t i = 0; i < m.support.size(); ++i)
        v += m.weights[i] * to_double(h.at(f, h.col_index(m.support[i])));
      if (to_double(h.at(f, xc)) - v > tol) return false;
    }
  }
  return true;
}

inline bool float_strassen(const Json& c, const Json& raw, double tol) {
  FunctionalsFile file = functionals_from_json(raw);
  auto phi = fdvec(c.at("phi"));
  const std::size_t d = phi.size();
  if (c.at("branch") == "violation") {
    auto x = fdvec(c.at("x"));
    double lhs = 0;
    for (std::size_t j = 0; j < d; ++j) lhs += phi[j] * x[j];
    for (const auto& gens : file.generators) {
      double fx = -std::numeric_limits<double>::infinity();
      for (const auto& gen : gens) {
        double v = 0;
        for (std::size_t j = 0; j < d; ++j) v += to_double(gen[j]) * x[j];
        fx = std::max(fx, v);
      }
      if (lhs - fx < -tol) return false;
    }
    return true;
  }
  FloatMeasure lambda = fmeasure(c.at("lambda"));
  if (std::fabs(lambda.mass - 1) > tol) return false;
  std::vector<double> recon(d, 0.0);
  for (std::size_t f = 0; f < file.names.size(); ++f) {
    auto t = fdvec(c.at("t").at(file.names[f]));
    auto hw = fdvec(c.at("hull_weights").at(file.names[f]));
    double mass = 0;
    std::vector<double> mix(d, 0.0);
    for (std::size_t j = 0; j < hw.size(); ++j) {
      mass += hw[j];
      for (std::size_t k = 0; k < d; ++k)
        mix[k] += hw[j] * to_double(file.generators[f][j][k]);
    }
    if (std::fabs(mass - 1) > tol) return false;
    double lf = 0;
    for (std::size_t i = 0; i < lambda.support.size(); ++i)
      if (lambda.support[i] == file.names[f]) lf = lambda.weights[i];
    for (std::size_t k = 0; k < d; ++k) {
      if (std::fabs(mix[k] - t[k]) > tol) return false;
      recon[k] += lf * t[k];
    }
  }
  for (std::size_t k = 0; k < d; ++k)
    if (std::fabs(recon[k] - phi[k]) > tol) return false;
  return true;
}

inline bool float_exhaustion(const Json& c, const Json& raw, double tol) {
  FamilyMatrix a = family_from_json(raw);
  std::vector<exhaustion::LabelledPiece> pieces;
  for (const auto& p : c.at("pieces"))
    pieces.push_back({p.at("name").get<std::string>(),
                      p.at("points").get<std::vector<std::string>>()});
  exhaustion::ExhaustionInstance inst(a, pieces);
  const Json& bounds = c.at("bounds");
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (pieces[k].points.empty()) continue;
    double value = fd(bounds[k].at("value"));
    FloatMeasure delta = fmeasure(bounds[k].at("delta"));
    FloatMeasure m = fmeasure(bounds[k].at("measure"));
    if (std::fabs(delta.mass - 1) > tol || std::fabs(m.mass - 1) > tol) return false;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < inst.family.rows(); ++f) {
      double v = 0;
      for (std::size_t i = 0; i < delta.support.size(); ++i)
        v += delta.weights[i] *
             to_double(inst.family.at(f, inst.family.col_index(delta.support[i])));
      worst = std::max(worst, v);
    }
    if (std::fabs(worst - value) > tol) return false;
    auto mix = fmatrix_mix(inst.family, m);
    double low = std::numeric_limits<double>::infinity();
    for (const auto& label : pieces[k].points)
      low = std::min(low, mix[inst.family.col_index(label)]);
    if (std::fabs(low - value) > tol) return false;
  }
  if (c.at("conditions").at("remainder_null").get<bool>()) {
    for (const auto& label : inst.remainder) {
      std::size_t x = inst.family.col_index(label);
      for (std::size_t f = 0; f < inst.family.rows(); ++f)
        if (std::fabs(to_double(inst.family.at(f, x))) > tol) return false;
    }
  }
  return true;
}

inline bool float_summing_core(const FamilyMatrix& a, const std::vector<double>& g,
                               const Json& witness, double tol) {
  if (!witness.at("finite").get<bool>()) {
    std::size_t x = a.col_index(witness.at("witness_point").get<std::string>());
    if (std::fabs(g[x]) <= tol) return false;
    for (std::size_t f = 0; f < a.rows(); ++f)
      if (std::fabs(to_double(a.at(f, x))) > tol) return false;
    return true;
  }
  double cst = fd(witness.at("constant"));
  FloatMeasure m = fmeasure(witness.at("measure"));
  if (std::fabs(m.mass - 1) > tol) return false;
  for (std::size_t x = 0; x < a.cols(); ++x) {
    double bound = 0;
    for (std::size_t i = 0; i < m.support.size(); ++i)
      bound += m.weights[i] * std::fabs(to_double(a.at(a.row_index(m.support[i]), x)));
    if (std::fabs(g[x]) - cst * bound > tol) return false;
  }
  if (witness.contains("dual_weights")) {
    auto w = fdvec(witness.at("dual_weights"));
    double attained = 0;
    for (std::size_t x = 0; x < a.cols(); ++x) attained += w[x] * std::fabs(g[x]);
    if (std::fabs(attained - cst) > tol) return false;
    for (std::size_t f = 0; f < a.rows(); ++f) {
      double row = 0;
      for (std::size_t x = 0; x < a.cols(); ++x)
        row += w[x] * std::fabs(to_double(a.at(f, x)));
      if (row > 1 + tol) return false;
    }
  }
  return true;
}

inline bool float_summing(const Json& c, const Json& raw, double tol) {
  FamilyMatrix a = family_from_json(raw);
  auto g = fdvec(c.at("target"));
  return float_summing_core(a, g, c.at("witness"), tol);
}

inline bool float_pietsch(const Json& c, const certificate::Context& ctx, double tol) {
  if (!ctx.net || !ctx.sample || !ctx.instance) return false;
  auto op = operator_from_json(*ctx.instance);
  auto net = vectors_from_json(*ctx.net);
  auto sample = vectors_from_json(*ctx.sample);
  double p = fd(c.at("p"));  // float path allows non-integer p
  const std::size_t d = op.front().size();

  std::vector<std::string> rows, cols;
  for (std::size_t i = 0; i < net.size(); ++i) rows.push_back("n" + std::to_string(i + 1));
  for (std::size_t k = 0; k < sample.size(); ++k) cols.push_back("s" + std::to_string(k + 1));
  (void)d;

  // Build the derived instance in double directly.
  std::vector<std::vector<double>> fam(net.size(), std::vector<double>(sample.size()));
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t k = 0; k < sample.size(); ++k) {
      double v = 0;
      for (std::size_t j = 0; j < net[i].size(); ++j)
        v += to_double(net[i][j]) * to_double(sample[k][j]);
      fam[i][k] = std::pow(std::fabs(v), p);
    }
  std::vector<double> g(sample.size());
  for (std::size_t k = 0; k < sample.size(); ++k) {
    double norm = 0;
    for (const auto& row : op) {
      double v = 0;
      for (std::size_t j = 0; j < row.size(); ++j)
        v += to_double(row[j]) * to_double(sample[k][j]);
      norm = std::max(norm, std::fabs(v));
    }
    g[k] = std::pow(norm, p);
  }

  const Json& witness = c.at("witness");
  if (!witness.at("finite").get<bool>()) {
    std::size_t x = 0;
    std::string wp = witness.at("witness_point").get<std::string>();
    for (; x < cols.size(); ++x)
      if (cols[x] == wp) break;
    if (x == cols.size()) return false;
    if (std::fabs(g[x]) <= tol) return false;
    for (std::size_t f = 0; f < fam.size(); ++f)
      if (std::fabs(fam[f][x]) > tol) return false;
    return true;
  }
  double cst = fd(witness.at("constant"));
  FloatMeasure m = fmeasure(witness.at("measure"));
  if (std::fabs(m.mass - 1) > tol) return false;
  for (std::size_t x = 0; x < cols.size(); ++x) {
    double bound = 0;
    for (std::size_t i = 0; i < m.support.size(); ++i) {
      for (std::size_t f = 0; f < rows.size(); ++f)
        if (rows[f] == m.support[i]) bound += m.weights[i] * std::fabs(fam[f][x]);
    }
    if (std::fabs(g[x]) - cst * bound > tol) return false;
  }
  return true;
}

}  // namespace detail

/// Floating re-verification of a certificate's defining inequalities
/// within `tolerance`. Complements `certificate::verify`: this is the
/// fallback for non-polyhedral readings (euclidean norms, fractional
/// exponents) where exact arithmetic has nothing to say.
inline bool float_check(const Json& cert, const certificate::Context& ctx,
                        double tolerance) {
  try {
    std::string kind = cert.at("kind").get<std::string>();
    if (!ctx.instance) return false;
    if (kind == "minimax_report")
      return detail::float_minimax(cert, family_from_json(*ctx.instance), tolerance);
    if (kind == "domination") return detail::float_domination(cert, *ctx.instance, tolerance);
    if (kind == "hull") return detail::float_hull(cert, *ctx.instance, tolerance);
    if (kind == "fan") return detail::float_fan(cert, *ctx.instance, tolerance);
    if (kind == "sufficiency")
      return detail::float_sufficiency(cert, *ctx.instance, tolerance);
    if (kind == "strassen") return detail::float_strassen(cert, *ctx.instance, tolerance);
    if (kind == "exhaustion")
      return detail::float_exhaustion(cert, *ctx.instance, tolerance);
    if (kind == "summing") return detail::float_summing(cert, *ctx.instance, tolerance);
    if (kind == "pietsch") return detail::float_pietsch(cert, ctx, tolerance);
    return false;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace fincert::oracle

#endif  // FINCERT_ORACLE_HPP
