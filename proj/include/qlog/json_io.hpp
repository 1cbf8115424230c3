#pragma once

// JSON serialization. Schemas are stable and key order is fixed
// (ordered_json), so identical runs produce byte-identical output.
//
//   subspace:    { "ambient": n, "basis": [[ [re,im] x n ] x d] }
//   environment: { "ambient": n, "bindings": { name: subspace, ... } }
//
// Subspace writers emit orthonormalized bases; the reader re-orthonormalizes
// and rejects input whose claimed dimension collapses under the rank cutoff.

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "qlog/construct.hpp"
#include "qlog/dbar.hpp"
#include "qlog/formula.hpp"
#include "qlog/subspace.hpp"
#include "qlog/valuation.hpp"

namespace qlog {

using Json = nlohmann::ordered_json;

inline Json subspace_to_json(const Subspace& s) {
  Json basis = Json::array();
  for (long i = 0; i < s.dim(); ++i) {
    Json row = Json::array();
    for (long j = 0; j < s.ambient(); ++j) {
      Complex c = s.basis()(j, i);
      row.push_back(Json::array({c.real(), c.imag()}));
    }
    basis.push_back(std::move(row));
  }
  return Json{{"ambient", s.ambient()}, {"basis", std::move(basis)}};
}

inline Subspace subspace_from_json(const Json& j, const Tolerance& tol = {}) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("basis"))
    throw std::runtime_error("subspace JSON: expected {ambient, basis}");
  long n = j.at("ambient").get<long>();
  if (n < 1) throw std::runtime_error("subspace JSON: ambient must be positive");
  const Json& rows = j.at("basis");
  if (!rows.is_array()) throw std::runtime_error("subspace JSON: basis must be an array");
  std::vector<Vector> vectors;
  vectors.reserve(rows.size());
  for (const Json& row : rows) {
    if (!row.is_array() || static_cast<long>(row.size()) != n)
      throw std::runtime_error("subspace JSON: basis row length != ambient");
    Vector v(n);
    for (long k = 0; k < n; ++k) {
      const Json& pair = row.at(static_cast<std::size_t>(k));
      if (!pair.is_array() || pair.size() != 2)
        throw std::runtime_error("subspace JSON: entries must be [re, im] pairs");
      v(k) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    vectors.push_back(std::move(v));
  }
  Subspace s = from_spanning(vectors, n, tol);
  if (s.dim() < static_cast<long>(vectors.size()))
    throw std::runtime_error("subspace JSON: claimed dimension " +
                             std::to_string(vectors.size()) +
                             " collapsed to " + std::to_string(s.dim()) +
                             " on re-orthonormalization");
  return s;
}

inline Json environment_to_json(const Environment& env) {
  Json bindings = Json::object();
  for (const auto& [name, sub] : env.bindings()) bindings[name] = subspace_to_json(sub);
  return Json{{"ambient", env.ambient()}, {"bindings", std::move(bindings)}};
}

inline Environment environment_from_json(const Json& j, const Tolerance& tol = {}) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("bindings"))
    throw std::runtime_error("environment JSON: expected {ambient, bindings}");
  Environment env(j.at("ambient").get<long>());
  for (const auto& [name, sub] : j.at("bindings").items())
    env.bind(name, subspace_from_json(sub, tol));
  return env;
}

inline Json witness_to_json(const WitnessRecord& w) {
  return Json{{"formula", print(w.formula)},
              {"ambient", w.ambient},
              {"achieved_dim", w.achieved},
              {"trace", w.trace},
              {"environment", environment_to_json(w.env)}};
}

inline WitnessRecord witness_from_json(const Json& j, const Tolerance& tol = {}) {
  return WitnessRecord(parse(j.at("formula").get<std::string>()),
                       j.at("ambient").get<long>(),
                       environment_from_json(j.at("environment"), tol),
                       j.at("achieved_dim").get<long>(),
                       j.value("trace", std::string()));
}

inline Json certificate_to_json(const Certificate& cert) {
  Json stages = Json::array();
  for (const auto& s : cert.stages) {
    Json stage{{"kind", s.kind == StageKind::alpha ? "alpha" : "beta"}};
    if (s.kind == StageKind::beta) stage["l"] = s.l;
    stage["suffix"] = s.suffix;
    stage["pair_after"] = Json::array({s.a_after, s.b_after});
    stages.push_back(std::move(stage));
  }
  return Json{{"m", cert.m},
              {"n", cert.n},
              {"stages", std::move(stages)},
              {"claims", Json{{"dbar_at_m", cert.final_a}, {"dbar_at_n", cert.final_b}}},
              {"formula", print(cert.formula)}};
}

inline Json estimate_to_json(const EstimateResult& est) {
  Json j{{"max_dim_found", est.max_dim},
         {"trials", est.trials},
         {"rejected_samples", est.rejected},
         {"seed", est.seed},
         {"dims_strategy", est.exhaustive_dims ? "exhaustive" : "uniform"}};
  if (est.best) j["witness"] = witness_to_json(*est.best);
  return j;
}

inline Json zero_test_to_json(const ZeroTestSummary& z) {
  return Json{{"ambient", z.ambient},
              {"trials", z.trials},
              {"seed", z.seed},
              {"max_dim_seen", z.max_dim_seen},
              {"rejected_samples", z.rejected},
              {"dims_strategy", z.exhaustive_dims ? "exhaustive" : "uniform"}};
}

inline Json separation_to_json(const SeparationReport& rep) {
  return Json{{"m", rep.m},
              {"n", rep.n},
              {"certificate", certificate_to_json(rep.certificate)},
              {"witness", witness_to_json(rep.witness)},
              {"zero_test", zero_test_to_json(rep.zero_test)}};
}

inline Json tautology_to_json(const TautologyReport& rep) {
  Json j{{"verdict", to_string(rep.verdict)},
         {"n", rep.n},
         {"observed_max", rep.observed_max},
         {"trials", rep.trials},
         {"seed", rep.seed},
         {"note", rep.note}};
  if (rep.predicted) j["predicted"] = *rep.predicted;
  if (rep.witness) j["witness"] = witness_to_json(*rep.witness);
  return j;
}

}  // namespace qlog
