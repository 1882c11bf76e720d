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

#ifndef FINCERT_CORE_HPP
#define FINCERT_CORE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fincert/rational.hpp"

namespace fincert {

class LabelError : public std::runtime_error {
 public:
  explicit LabelError(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public std::runtime_error {
 public:
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

/// A finite family of functions on a finite point set, stored as the
/// rational matrix values[f][x]. Rows are the functions, columns the
/// points; labels are opaque strings and all lookups go through them.
class FamilyMatrix {
 public:
  FamilyMatrix(std::vector<std::string> row_labels,
               std::vector<std::string> col_labels,
               std::vector<std::vector<Rational>> values)
      : row_labels_(std::move(row_labels)),
        col_labels_(std::move(col_labels)),
        values_(std::move(values)) {
    if (row_labels_.empty() || col_labels_.empty())
      throw DimensionError("family matrix must have at least one row and one column");
    if (values_.size() != row_labels_.size())
      throw DimensionError("row count does not match row labels");
    for (const auto& row : values_)
      if (row.size() != col_labels_.size())
        throw DimensionError("ragged row in family matrix");
    index_labels(row_labels_, row_index_, "function");
    index_labels(col_labels_, col_index_, "point");
  }

  std::size_t rows() const { return row_labels_.size(); }
  std::size_t cols() const { return col_labels_.size(); }

  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  const Rational& at(std::size_t f, std::size_t x) const { return values_[f][x]; }
  const std::vector<Rational>& row(std::size_t f) const { return values_[f]; }
  const std::vector<std::vector<Rational>>& values() const { return values_; }

  std::size_t row_index(const std::string& label) const {
    auto it = row_index_.find(label);
    if (it == row_index_.end()) throw LabelError("unknown function label '" + label + "'");
    return it->second;
  }
  std::size_t col_index(const std::string& label) const {
    auto it = col_index_.find(label);
    if (it == col_index_.end()) throw LabelError("unknown point label '" + label + "'");
    return it->second;
  }

  bool has_row(const std::string& label) const { return row_index_.count(label) != 0; }
  bool has_col(const std::string& label) const { return col_index_.count(label) != 0; }

  std::vector<Rational> column(std::size_t x) const {
    std::vector<Rational> col(rows());
    for (std::size_t f = 0; f < rows(); ++f) col[f] = values_[f][x];
    return col;
  }

  FamilyMatrix transposed() const {
    std::vector<std::vector<Rational>> t(cols(), std::vector<Rational>(rows()));
    for (std::size_t f = 0; f < rows(); ++f)
      for (std::size_t x = 0; x < cols(); ++x) t[x][f] = values_[f][x];
    return FamilyMatrix(col_labels_, row_labels_, std::move(t));
  }

  FamilyMatrix scaled(const Rational& c) const {
    auto v = values_;
    for (auto& row : v)
      for (auto& e : row) e *= c;
    return FamilyMatrix(row_labels_, col_labels_, std::move(v));
  }

 private:
  static void index_labels(const std::vector<std::string>& labels,
                           std::map<std::string, std::size_t>& index,
                           const char* what) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!index.emplace(labels[i], i).second)
        throw LabelError(std::string("duplicate ") + what + " label '" + labels[i] + "'");
    }
  }

  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  std::vector<std::vector<Rational>> values_;
  std::map<std::string, std::size_t> row_index_;
  std::map<std::string, std::size_t> col_index_;
};

/// Finitely supported nonnegative weights on labelled atoms. With total
/// mass one this is a finitely additive probability; on a finite set the
/// two notions coincide, which is what makes everything here computable.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;

  DiscreteMeasure(std::vector<std::string> support, std::vector<Rational> weights)
      : support_(std::move(support)), weights_(std::move(weights)) {
    if (support_.size() != weights_.size())
      throw DimensionError("measure support and weights differ in length");
    for (std::size_t i = 0; i < support_.size(); ++i) {
      if (weights_[i] < 0)
        throw std::invalid_argument("negative weight at '" + support_[i] + "'");
      if (!index_.emplace(support_[i], i).second)
        throw LabelError("duplicate atom '" + support_[i] + "'");
    }
  }

  static DiscreteMeasure point_mass(const std::string& label) {
    return DiscreteMeasure({label}, {Rational(1)});
  }

  static DiscreteMeasure uniform(const std::vector<std::string>& labels) {
    if (labels.empty()) throw DimensionError("uniform measure needs at least one atom");
    std::vector<Rational> w(labels.size(), Rational(1, labels.size()));
    return DiscreteMeasure(labels, std::move(w));
  }

  const std::vector<std::string>& support() const { return support_; }
  const std::vector<Rational>& weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }

  Rational total_mass() const {
    Rational m = 0;
    for (const auto& w : weights_) m += w;
    return m;
  }

  bool is_probability() const { return total_mass() == 1; }

  Rational weight_of(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? Rational(0) : weights_[it->second];
  }

  /// Drops zero-weight atoms; keeps support order otherwise.
  DiscreteMeasure trimmed() const {
    std::vector<std::string> s;
    std::vector<Rational> w;
    for (std::size_t i = 0; i < support_.size(); ++i) {
      if (weights_[i] != 0) {
        s.push_back(support_[i]);
        w.push_back(weights_[i]);
      }
    }
    if (s.empty() && !support_.empty()) {
      s.push_back(support_.front());
      w.push_back(Rational(0));
    }
    return DiscreteMeasure(std::move(s), std::move(w));
  }

  DiscreteMeasure scaled(const Rational& c) const {
    if (c < 0) throw std::invalid_argument("negative scale for measure");
    auto w = weights_;
    for (auto& x : w) x *= c;
    return DiscreteMeasure(support_, std::move(w));
  }

  static DiscreteMeasure convex_combination(const DiscreteMeasure& a,
                                            const DiscreteMeasure& b,
                                            const Rational& t) {
    if (t < 0 || t > 1) throw std::invalid_argument("mixing weight outside [0,1]");
    std::map<std::string, Rational> acc;
    for (std::size_t i = 0; i < a.size(); ++i) acc[a.support_[i]] += t * a.weights_[i];
    for (std::size_t i = 0; i < b.size(); ++i) acc[b.support_[i]] += (1 - t) * b.weights_[i];
    std::vector<std::string> s;
    std::vector<Rational> w;
    for (auto& [label, weight] : acc) {
      s.push_back(label);
      w.push_back(weight);
    }
    return DiscreteMeasure(std::move(s), std::move(w));
  }

 private:
  std::vector<std::string> support_;
  std::vector<Rational> weights_;
  std::map<std::string, std::size_t> index_;
};

using ProbabilityMeasure = DiscreteMeasure;
using DeltaElement = DiscreteMeasure;

/// The weighted sum x -> sum_f m(f) A[f][x]: the integral of the family
/// against a measure on its rows. For a probability m the result is a
/// point of the integral hull of the family.
inline std::vector<Rational> integral(const DiscreteMeasure& m, const FamilyMatrix& a) {
  std::vector<Rational> out(a.cols(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::size_t f = a.row_index(m.support()[i]);
    const Rational& w = m.weights()[i];
    if (w == 0) continue;
    for (std::size_t x = 0; x < a.cols(); ++x) out[x] += w * a.at(f, x);
  }
  return out;
}

/// Same contraction on the other side: x-weights against columns,
/// producing a vector indexed by rows (the value <f, h> for each f).
inline std::vector<Rational> pairing(const FamilyMatrix& a, const DiscreteMeasure& h) {
  std::vector<Rational> out(a.rows(), Rational(0));
  for (std::size_t i = 0; i < h.size(); ++i) {
    std::size_t x = a.col_index(h.support()[i]);
    const Rational& w = h.weights()[i];
    if (w == 0) continue;
    for (std::size_t f = 0; f < a.rows(); ++f) out[f] += w * a.at(f, x);
  }
  return out;
}

struct FiniteApproximation {
  std::vector<std::string> points;
  std::vector<Rational> weights;
};

/// At finite support a probability is its own finite approximation: the
/// support points with their weights reproduce every integral with zero
/// error, so the usual approximation statement holds exactly here.
inline FiniteApproximation finite_approximation(const DiscreteMeasure& m,
                                                const FamilyMatrix& a) {
  if (!m.is_probability())
    throw std::invalid_argument("finite approximation expects a probability measure");
  for (const auto& label : m.support()) (void)a.col_index(label);
  return {m.support(), m.weights()};
}

}  // namespace fincert

#endif  // FINCERT_CORE_HPP
