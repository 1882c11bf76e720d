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

// Command line front end: every theorem as a subcommand over the shared
// JSON instance format, emitting machine-checkable certificates.
//
// Exit codes: 0 success; 1 when the mathematical answer is the negative
// branch (violation, infeasibility, failed verification); 2 on malformed
// input or mismatched certificate/instance pairs.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "fincert/certificate.hpp"
#include "fincert/core.hpp"
#include "fincert/domination.hpp"
#include "fincert/exhaustion.hpp"
#include "fincert/json_io.hpp"
#include "fincert/minimax.hpp"
#include "fincert/oracle.hpp"
#include "fincert/representation.hpp"
#include "fincert/summability.hpp"

namespace {

using fincert::Json;
using fincert::Rational;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  bool oracle = false;
  bool transpose = false;
  std::string output;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_flag("--oracle", flags.oracle,
                "append an independent brute-force or floating check");
  cmd->add_flag("--transpose", flags.transpose,
                "swap functions and points before computing");
  cmd->add_option("--output", flags.output, "also write the certificate to a file");
}

void emit(const Json& cert, const CommonFlags& flags) {
  std::cout << cert.dump(2) << '\n';
  if (!flags.output.empty()) fincert::write_json_file(flags.output, cert);
}

fincert::FamilyMatrix load_family(const std::string& path, bool transpose,
                                  Json* raw_out) {
  Json raw = fincert::load_json_file(path);
  fincert::FamilyMatrix a = fincert::family_from_json(raw);
  if (transpose) {
    a = a.transposed();
    raw = fincert::family_to_json(a);
  }
  if (raw_out) *raw_out = raw;
  return a;
}

std::vector<Rational> vector_from_inline(const std::string& text) {
  return fincert::vector_from_json(Json::parse(text));
}

void attach_float_oracle(Json& cert, const fincert::certificate::Context& ctx) {
  Json o;
  o["kind"] = "float_check";
  o["tolerance"] = 1e-9;
  o["ok"] = fincert::oracle::float_check(cert, ctx, 1e-9);
  cert["oracle"] = std::move(o);
}

int run_minimax(const std::string& path, const CommonFlags& flags,
                const std::string& subfamilies_json, bool check_concave,
                unsigned resolution) {
  Json raw;
  fincert::FamilyMatrix a = load_family(path, flags.transpose, &raw);
  auto report = fincert::minimax::analyze(a);
  Json cert = fincert::certificate::make_minimax(raw, a, report, check_concave);
  if (!subfamilies_json.empty()) {
    auto subs = Json::parse(subfamilies_json)
                    .get<std::vector<std::vector<std::string>>>();
    auto local = fincert::minimax::local_minimax(a, subs);
    fincert::certificate::attach_local(cert, subs, local);
  }
  if (flags.oracle) {
    Json o;
    o["kind"] = "grid_minimax";
    o["resolution"] = resolution;
    double grid = fincert::oracle::grid_minimax(a, resolution);
    o["value"] = grid;
    Rational lo = a.at(0, 0), hi = a.at(0, 0);
    for (std::size_t f = 0; f < a.rows(); ++f)
      for (std::size_t x = 0; x < a.cols(); ++x) {
        if (a.at(f, x) < lo) lo = a.at(f, x);
        if (a.at(f, x) > hi) hi = a.at(f, x);
      }
    double bound = fincert::to_double(hi - lo) * static_cast<double>(a.rows()) /
                   resolution;
    o["bound"] = bound;
    o["agrees"] =
        std::fabs(grid - fincert::to_double(report.hull_value)) <= bound + 1e-9;
    cert["oracle"] = std::move(o);
  }
  emit(cert, flags);
  return kExitOk;
}

int run_dominate(const std::string& path, const CommonFlags& flags,
                 unsigned max_support) {
  if (flags.transpose)
    throw fincert::ParseError("--transpose is not meaningful for dominate");
  Json raw = fincert::load_json_file(path);
  fincert::domination::DominationInstance inst(
      fincert::family_from_json(raw), fincert::family_from_json(raw, "targets"));
  auto result = fincert::domination::find_dominating_measure(inst);
  Json cert = fincert::certificate::make_domination(raw, result);
  bool violation = std::holds_alternative<fincert::domination::BalanceViolation>(result);
  if (flags.oracle) {
    Json o;
    o["kind"] = "enumerate_balance";
    o["max_support"] = max_support;
    auto search = fincert::oracle::enumerate_balance(inst, max_support);
    if (search.worst_margin) {
      o["worst_margin"] = fincert::format_rational(*search.worst_margin);
      bool found = *search.worst_margin > 0;
      o["violation_found"] = found;
      // A found violation must agree with the LP branch; absence is
      // inconclusive for supports beyond the enumerated bound.
      o["consistent"] = !found || violation;
    }
    cert["oracle"] = std::move(o);
  }
  emit(cert, flags);
  return violation ? kExitNegative : kExitOk;
}

int run_hull(const std::string& path, const CommonFlags& flags,
             const std::string& target_json) {
  Json raw;
  fincert::FamilyMatrix a = load_family(path, flags.transpose, &raw);
  auto g = vector_from_inline(target_json);
  auto result = fincert::domination::hull_membership(a, g);
  Json cert = fincert::certificate::make_hull(raw, g, result);
  if (flags.oracle)
    attach_float_oracle(cert, fincert::certificate::Context{raw, {}, {}});
  emit(cert, flags);
  return std::holds_alternative<fincert::domination::NotInHull>(result)
             ? kExitNegative
             : kExitOk;
}

int run_fan(const std::string& path, const CommonFlags& flags, const std::string& rho,
            const std::string& norm) {
  if (flags.transpose)
    throw fincert::ParseError("--transpose is not meaningful for fan");
  Json raw = fincert::load_json_file(path);
  fincert::FanInstance inst = fincert::fan_from_json(raw);
  Rational r = fincert::parse_rational(rho);
  fincert::domination::PolyNorm n;
  if (norm == "l1") n = fincert::domination::PolyNorm::L1;
  else if (norm == "linf") n = fincert::domination::PolyNorm::LInf;
  else throw fincert::ParseError("norm must be l1 or linf (l2 runs only in --oracle float checks)");
  auto result = fincert::domination::fan_norm_domination(inst.points, inst.g, r, n);
  Json cert = fincert::certificate::make_fan(raw, r, n, result);
  if (flags.oracle)
    attach_float_oracle(cert, fincert::certificate::Context{raw, {}, {}});
  emit(cert, flags);
  return std::holds_alternative<fincert::domination::FanViolation>(result)
             ? kExitNegative
             : kExitOk;
}

int run_suffice(const std::string& path, const CommonFlags& flags,
                const std::vector<std::string>& subset) {
  Json raw;
  fincert::FamilyMatrix h = load_family(path, flags.transpose, &raw);
  fincert::representation::SufficiencyInstance inst(h, subset);
  auto result = fincert::representation::check_sufficiency(inst);
  Json cert;
  bool negative = false;
  if (std::holds_alternative<fincert::representation::SufficiencyViolation>(result)) {
    cert = fincert::certificate::make_sufficiency_violation(
        raw, inst.subset,
        std::get<fincert::representation::SufficiencyViolation>(result));
    negative = true;
  } else {
    // Sufficiency is constructive here: one representing measure per
    // point outside Z is the certificate.
    std::vector<std::pair<std::string, fincert::ProbabilityMeasure>> reps;
    std::set<std::string> in_z(inst.subset.begin(), inst.subset.end());
    for (const auto& x : h.col_labels()) {
      if (in_z.count(x)) continue;
      auto rep = fincert::representation::representing_measure(inst, x);
      if (!std::holds_alternative<fincert::representation::RepresentingMeasure>(rep))
        throw std::logic_error("sufficient subset must represent every point");
      reps.emplace_back(
          x, std::get<fincert::representation::RepresentingMeasure>(rep).measure);
    }
    cert = fincert::certificate::make_sufficiency_proof(raw, inst.subset, reps);
  }
  if (flags.oracle)
    attach_float_oracle(cert, fincert::certificate::Context{raw, {}, {}});
  emit(cert, flags);
  return negative ? kExitNegative : kExitOk;
}

int run_strassen(const std::string& path, const CommonFlags& flags,
                 const std::string& phi_json) {
  if (flags.transpose)
    throw fincert::ParseError("--transpose is not meaningful for strassen");
  Json raw = fincert::load_json_file(path);
  fincert::FunctionalsFile file = fincert::functionals_from_json(raw);
  std::vector<fincert::representation::PolyhedralSublinear> fs;
  for (std::size_t i = 0; i < file.names.size(); ++i)
    fs.emplace_back(file.names[i], file.generators[i]);
  auto phi = vector_from_inline(phi_json);
  auto result = fincert::representation::strassen_decompose(phi, fs);
  Json cert = fincert::certificate::make_strassen(raw, phi, fs, result);
  if (flags.oracle)
    attach_float_oracle(cert, fincert::certificate::Context{raw, {}, {}});
  emit(cert, flags);
  return std::holds_alternative<fincert::representation::StrassenViolation>(result)
             ? kExitNegative
             : kExitOk;
}

int run_exhaust(const std::string& path, const CommonFlags& flags,
                const std::string& pieces_json) {
  Json raw;
  fincert::FamilyMatrix a = load_family(path, flags.transpose, &raw);
  std::vector<fincert::exhaustion::LabelledPiece> pieces;
  Json spec_pieces;
  if (!pieces_json.empty()) {
    spec_pieces = Json::parse(pieces_json);
  } else if (raw.contains("pieces")) {
    spec_pieces = raw.at("pieces");
  } else {
    throw fincert::ParseError(
        "exhaust needs pieces: pass --pieces or add a 'pieces' field");
  }
  std::size_t counter = 0;
  for (const auto& p : spec_pieces) {
    fincert::exhaustion::LabelledPiece piece;
    if (p.is_array()) {
      piece.name = "X" + std::to_string(++counter);
      piece.points = p.get<std::vector<std::string>>();
    } else {
      piece.name = p.at("name").get<std::string>();
      piece.points = p.at("points").get<std::vector<std::string>>();
      ++counter;
    }
    pieces.push_back(std::move(piece));
  }
  // The hash must pin the family data only; strip any pieces field.
  Json family_raw = raw;
  family_raw.erase("pieces");

  fincert::exhaustion::ExhaustionInstance inst(a, pieces);
  auto report = fincert::exhaustion::verify_exhaustion(inst);
  Json cert = fincert::certificate::make_exhaustion(family_raw, inst, report);
  if (flags.oracle)
    attach_float_oracle(cert, fincert::certificate::Context{family_raw, {}, {}});
  emit(cert, flags);
  return report.ok ? kExitOk : kExitNegative;
}

int run_summing(const std::string& path, const CommonFlags& flags,
                const std::string& target_json) {
  Json raw;
  fincert::FamilyMatrix a = load_family(path, flags.transpose, &raw);
  auto g = vector_from_inline(target_json);
  auto witness = fincert::summability::summing_constant(a, g);
  Json cert = fincert::certificate::make_summing(raw, g, witness);
  if (flags.oracle)
    attach_float_oracle(cert, fincert::certificate::Context{raw, {}, {}});
  emit(cert, flags);
  return witness.finite ? kExitOk : kExitNegative;
}

int run_pietsch(const std::string& path, const CommonFlags& flags,
                const std::string& p_text, const std::string& net_path,
                const std::string& sample_path) {
  if (flags.transpose)
    throw fincert::ParseError("--transpose is not meaningful for pietsch");
  Json raw_op = fincert::load_json_file(path);
  Json raw_net = fincert::load_json_file(net_path);
  Json raw_sample = fincert::load_json_file(sample_path);
  auto op = fincert::operator_from_json(raw_op);
  auto net = fincert::vectors_from_json(raw_net);
  auto sample = fincert::vectors_from_json(raw_sample);
  Rational p = fincert::parse_rational(p_text);
  auto est = fincert::summability::pietsch_estimate(op, p, net, sample);
  Json cert = fincert::certificate::make_pietsch(raw_op, raw_net, raw_sample, p, est);
  if (flags.oracle)
    attach_float_oracle(cert,
                        fincert::certificate::Context{raw_op, raw_net, raw_sample});
  emit(cert, flags);
  return est.witness.finite ? kExitOk : kExitNegative;
}

int run_verify(const std::string& cert_path, const CommonFlags& flags,
               const std::string& instance_path, const std::string& net_path,
               const std::string& sample_path) {
  Json cert = fincert::load_json_file(cert_path);
  fincert::certificate::Context ctx;
  ctx.instance = fincert::load_json_file(instance_path);
  if (!net_path.empty()) ctx.net = fincert::load_json_file(net_path);
  if (!sample_path.empty()) ctx.sample = fincert::load_json_file(sample_path);

  auto outcome = fincert::certificate::verify(cert, ctx);
  Json report;
  report["kind"] = "verification";
  report["certificate_kind"] = cert.contains("kind") ? cert.at("kind") : Json(nullptr);
  report["ok"] = outcome.ok();
  report["message"] = outcome.message;
  if (flags.oracle) {
    Json o;
    o["kind"] = "float_check";
    o["tolerance"] = 1e-9;
    o["ok"] = fincert::oracle::float_check(cert, ctx, 1e-9);
    report["oracle"] = std::move(o);
  }
  emit(report, flags);
  switch (outcome.status) {
    case fincert::certificate::Status::Ok:
      return kExitOk;
    case fincert::certificate::Status::Failed:
      return kExitNegative;
    default:
      return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certificates for finite minimax, domination,"
               " representation, exhaustion and summability instances"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string instance, target, rho, norm = "l1", phi, pieces, subfam, p_text = "1";
  std::string net_path, sample_path, verify_instance;
  std::vector<std::string> subset;
  bool check_concave = false;
  unsigned resolution = 50, max_support = 4;

  auto* minimax = app.add_subcommand("minimax", "minimax values and optimal mixture");
  minimax->add_option("instance", instance)->required();
  minimax->add_option("--subfamilies", subfam, "JSON array of row-label arrays");
  minimax->add_flag("--check-concave", check_concave,
                    "include the interval-covering analysis");
  minimax->add_option("--resolution", resolution, "grid resolution for --oracle");
  add_common(minimax, flags);

  auto* dominate = app.add_subcommand("dominate", "dominating measure or balance violation");
  dominate->add_option("instance", instance)->required();
  dominate->add_option("--max-support", max_support, "oracle enumeration support bound");
  add_common(dominate, flags);

  auto* hull = app.add_subcommand("hull", "integral hull membership");
  hull->add_option("instance", instance)->required();
  hull->add_option("--target", target, "JSON array of scalars")->required();
  add_common(hull, flags);

  auto* fan = app.add_subcommand("fan", "norm domination in the polyhedral case");
  fan->add_option("instance", instance)->required();
  fan->add_option("--rho", rho, "dual ball radius, e.g. 3/2")->required();
  fan->add_option("--norm", norm, "l1 or linf");
  add_common(fan, flags);

  auto* suffice = app.add_subcommand("suffice", "sufficient subset check");
  suffice->add_option("instance", instance)->required();
  suffice->add_option("--subset", subset, "point labels forming Z")->required();
  add_common(suffice, flags);

  auto* strassen = app.add_subcommand("strassen", "decomposition against sublinear majorants");
  strassen->add_option("instance", instance)->required();
  strassen->add_option("--phi", phi, "JSON array of scalars")->required();
  add_common(strassen, flags);

  auto* exhaust = app.add_subcommand("exhaust", "exhaustion verification");
  exhaust->add_option("instance", instance)->required();
  exhaust->add_option("--pieces", pieces, "JSON array of point-label arrays");
  add_common(exhaust, flags);

  auto* summing = app.add_subcommand("summing", "least summing constant with witness");
  summing->add_option("instance", instance)->required();
  summing->add_option("--target", target, "JSON array of scalars")->required();
  add_common(summing, flags);

  auto* pietsch = app.add_subcommand("pietsch", "net-relaxed summing bound for an operator");
  pietsch->add_option("instance", instance)->required();
  pietsch->add_option("--p", p_text, "exponent (positive integer)")->required();
  pietsch->add_option("--net", net_path, "dual net vectors file")->required();
  pietsch->add_option("--sample", sample_path, "sample points file")->required();
  add_common(pietsch, flags);

  auto* verify = app.add_subcommand("verify", "re-check an emitted certificate");
  verify->add_option("certificate", instance)->required();
  verify->add_option("--instance", verify_instance, "instance the certificate refers to")
      ->required();
  verify->add_option("--net", net_path, "net file (pietsch only)");
  verify->add_option("--sample", sample_path, "sample file (pietsch only)");
  add_common(verify, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (minimax->parsed())
      return run_minimax(instance, flags, subfam, check_concave, resolution);
    if (dominate->parsed()) return run_dominate(instance, flags, max_support);
    if (hull->parsed()) return run_hull(instance, flags, target);
    if (fan->parsed()) return run_fan(instance, flags, rho, norm);
    if (suffice->parsed()) return run_suffice(instance, flags, subset);
    if (strassen->parsed()) return run_strassen(instance, flags, phi);
    if (exhaust->parsed()) return run_exhaust(instance, flags, pieces);
    if (summing->parsed()) return run_summing(instance, flags, target);
    if (pietsch->parsed())
      return run_pietsch(instance, flags, p_text, net_path, sample_path);
    if (verify->parsed())
      return run_verify(instance, flags, verify_instance, net_path, sample_path);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
