#pragma once

// Named verification suites over randomized inputs. Each check returns one
// pass/fail row; the CLI and the acceptance harness both run these. All
// randomness is seeded through the config, so a failing row is replayable.

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qlog/construct.hpp"
#include "qlog/dbar.hpp"
#include "qlog/formula.hpp"
#include "qlog/subspace.hpp"
#include "qlog/valuation.hpp"

namespace qlog {

struct RunConfig {
  std::uint64_t seed = 0;
  long trials = 10000;
  Tolerance tol;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

using CheckList = std::vector<CheckResult>;

inline bool all_pass(const CheckList& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

// Random formula with at most max_nodes nodes over the given variables.
inline Formula random_formula(std::mt19937_64& rng, long max_nodes,
                              const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> pct(0, 99);
  std::uniform_int_distribution<std::size_t> pick_var(0, vars.empty() ? 0 : vars.size() - 1);
  if (max_nodes <= 1) {
    int r = pct(rng);
    if (vars.empty() || r >= 90) return r % 2 ? Formula::top() : Formula::bot();
    return Formula::var(vars[pick_var(rng)]);
  }
  int r = pct(rng);
  if (max_nodes == 2 || r < 25) return !random_formula(rng, max_nodes - 1, vars);
  std::uniform_int_distribution<long> split(1, max_nodes - 2);
  long left = split(rng);
  Formula l = random_formula(rng, left, vars);
  Formula rgt = random_formula(rng, max_nodes - 1 - left, vars);
  return (r < 62) ? (l & rgt) : (l | rgt);
}

inline Environment random_environment(long n, const std::vector<std::string>& vars,
                                      std::mt19937_64& rng) {
  std::uniform_int_distribution<long> pick_dim(0, n);
  Environment env(n);
  for (std::size_t j = 0; j < vars.size(); ++j)
    env.bind(vars[j], random_subspace(n, pick_dim(rng), rng()));
  return env;
}

namespace verify {

namespace detail_verify {

struct Counter {
  long failures = 0;
  long total = 0;
  std::string first_failure;

  void tally(bool ok, const std::string& what) {
    ++total;
    if (!ok) {
      ++failures;
      if (first_failure.empty()) first_failure = what;
    }
  }
  CheckResult result(const std::string& name) const {
    std::ostringstream os;
    os << (total - failures) << "/" << total << " trials";
    if (failures > 0) os << "; first failure: " << first_failure;
    return CheckResult{name, failures == 0, os.str()};
  }
};

}  // namespace detail_verify

// Ortholattice and modular laws plus the dimension formula, on random
// subspaces of C^4 and C^5.
inline CheckList ortholattice(const RunConfig& cfg) {
  using detail_verify::Counter;
  Counter idem, excl, invol, demorgan, modular, dimform;
  const Tolerance& tol = cfg.tol;
  for (long i = 0; i < cfg.trials; ++i) {
    long n = (i % 2 == 0) ? 4 : 5;
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i), 0xA));
    std::uniform_int_distribution<long> pick_dim(0, n);
    Subspace s = random_subspace(n, pick_dim(rng), rng());
    Subspace t = random_subspace(n, pick_dim(rng), rng());
    Subspace u = random_subspace(n, pick_dim(rng), rng());
    std::string tag = "trial " + std::to_string(i);

    idem.tally(equal(meet(s, s, tol), s, tol) && equal(join(s, s, tol), s, tol), tag);
    excl.tally(join(s, complement(s), tol).dim() == n &&
                   meet(s, complement(s), tol).dim() == 0,
               tag);
    invol.tally(equal(complement(complement(s)), s, tol), tag);
    demorgan.tally(equal(complement(join(s, t, tol)),
                         meet(complement(s), complement(t), tol), tol),
                   tag);
    // S <= U by construction
    Subspace small = meet(s, u, tol);
    modular.tally(equal(join(small, meet(t, u, tol), tol),
                        meet(join(small, t, tol), u, tol), tol),
                  tag);
    dimform.tally(join(s, t, tol).dim() + meet(s, t, tol).dim() == s.dim() + t.dim(),
                  tag);
  }
  return {idem.result("ortholattice/idempotence"),
          excl.result("ortholattice/excluded-middle"),
          invol.result("ortholattice/involution"),
          demorgan.result("ortholattice/de-morgan"),
          modular.result("ortholattice/modular-law"),
          dimform.result("ortholattice/dimension-formula")};
}

// The P lemma: dim P(S,T) = dim P(T,S) <= min(dim S, dim T), the meet
// identities, and agreement of the formula with the projector composition.
inline CheckList p_lemma(const RunConfig& cfg) {
  using detail_verify::Counter;
  Counter dims, meets, proj;
  const Tolerance& tol = cfg.tol;
  Formula pab = mk_P("a", "b");
  Formula pba = mk_P("b", "a");
  long proj_trials = std::min<long>(cfg.trials, 50);
  for (long i = 0; i < cfg.trials; ++i) {
    long n = (i % 2 == 0) ? 5 : 4;
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i), 0xB));
    std::uniform_int_distribution<long> pick_dim(0, n);
    Subspace s = random_subspace(n, pick_dim(rng), rng());
    Subspace t = random_subspace(n, pick_dim(rng), rng());
    Environment env(n);
    env.bind("a", s);
    env.bind("b", t);
    Subspace pst = evaluate(pab, env, tol);
    Subspace pts = evaluate(pba, env, tol);
    std::string tag = "trial " + std::to_string(i);

    dims.tally(pst.dim() == pts.dim() &&
                   pst.dim() <= std::min(s.dim(), t.dim()),
               tag);
    Subspace st = meet(s, t, tol);
    meets.tally(equal(meet(s, pst, tol), st, tol) &&
                    equal(meet(t, pts, tol), st, tol) &&
                    equal(meet(pst, pts, tol), st, tol),
                tag);
    if (i < proj_trials) {
      // independent route: the image of P_b . P_a as an operator product
      Matrix prod = t.projector() * s.projector();
      Subspace image = span_of_columns(prod, n, tol);
      proj.tally(equal(image, pst, tol), tag);
    }
  }
  return {dims.result("p-lemma/dim-symmetry-and-bound"),
          meets.result("p-lemma/meet-identities"),
          proj.result("p-lemma/projector-composition-image")};
}

// alpha attainment: witnesses reach floor(n/2) for n in 2..8, sampling never
// exceeds it, and at even n attainment is equivalent to the four conditions
// (with alpha(S,T) = P(T,S) at attainment).
inline CheckList alpha_lemma(const RunConfig& cfg) {
  using detail_verify::Counter;
  Counter attain, bound, cond_fwd, cond_bwd, coro;
  const Tolerance& tol = cfg.tol;
  Formula alpha = mk_alpha("a", "b");
  Formula pba = mk_P("b", "a");

  for (long n = 2; n <= 8; ++n) {
    WitnessRecord w = witness_alpha_any(n, "a", "b", tol);
    attain.tally(w.achieved == n / 2 && verify_witness(w, tol), "n=" + std::to_string(n));
    long est_trials = std::min<long>(cfg.trials, 2000);
    EstimateResult est = estimate_dbar(alpha, n, est_trials, DimsStrategy::automatic,
                                       derive_seed(cfg.seed, static_cast<std::uint64_t>(n)), tol);
    bound.tally(est.max_dim <= n / 2, "n=" + std::to_string(n) + " max " +
                                          std::to_string(est.max_dim));
  }

  for (long n : {2L, 4L, 6L}) {
    long sample_trials = std::min<long>(cfg.trials, 400);
    for (long i = 0; i < sample_trials; ++i) {
      std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(n * 1000 + i), 0xC));
      std::uniform_int_distribution<long> pick_dim(0, n);
      Subspace s = random_subspace(n, pick_dim(rng), rng());
      Subspace t = random_subspace(n, pick_dim(rng), rng());
      Environment env(n);
      env.bind("a", s);
      env.bind("b", t);
      long d = evaluate(alpha, env, tol).dim();
      std::string tag = "n=" + std::to_string(n) + " trial " + std::to_string(i);
      if (d == n / 2) cond_fwd.tally(alpha_conditions(s, t, tol).all(), tag);
      if (alpha_conditions(s, t, tol).all()) {
        Subspace av = evaluate(alpha, env, tol);
        cond_bwd.tally(av.dim() == n / 2, tag);
        coro.tally(projector_distance(av, evaluate(pba, env, tol)) < 1e-8, tag);
      }
    }
    // structured pair is a guaranteed condition-satisfying instance
    auto [s, t] = alpha_witness_pair(n, n);
    Environment env(n);
    env.bind("a", s);
    env.bind("b", t);
    Subspace av = evaluate(alpha, env, tol);
    cond_bwd.tally(av.dim() == n / 2, "structured n=" + std::to_string(n));
    coro.tally(projector_distance(av, evaluate(pba, env, tol)) < 1e-8,
               "structured n=" + std::to_string(n));
  }
  return {attain.result("alpha-lemma/witness-attains-floor-half"),
          bound.result("alpha-lemma/sampling-never-exceeds"),
          cond_fwd.result("alpha-lemma/attainment-implies-conditions"),
          cond_bwd.result("alpha-lemma/conditions-imply-attainment"),
          coro.result("alpha-lemma/corollary-alpha-equals-P")};
}

// Restriction lemma: random alphas against beta = alpha(v1,v2) in C^6, plus
// the two degenerate cases (beta = top, alpha a single variable).
inline CheckList restriction_lemma(const RunConfig& cfg) {
  using detail_verify::Counter;
  Counter random_cases, top_case, var_case;
  const Tolerance& tol = cfg.tol;
  const long n = 6;
  Formula beta = mk_alpha("v1", "v2");
  std::vector<std::string> uvars = {"u1", "u2", "u3"};
  std::vector<std::string> all_vars = {"u1", "u2", "u3", "v1", "v2"};

  long cases = std::min<long>(cfg.trials, 100);
  for (long i = 0; i < cases; ++i) {
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i), 0xD));
    Formula alpha = random_formula(rng, 10, uvars);
    Environment env = random_environment(n, all_vars, rng);
    RestrictionCheck rc = check_restriction_lemma(alpha, beta, env, tol);
    random_cases.tally(rc.equal, "case " + std::to_string(i) + ": dims " +
                                     std::to_string(rc.lhs.dim()) + "/" +
                                     std::to_string(rc.rhs.dim()) + ", dist " +
                                     std::to_string(rc.distance));
  }
  {
    std::mt19937_64 rng(derive_seed(cfg.seed, 0xE));
    for (long i = 0; i < 10; ++i) {
      Formula alpha = random_formula(rng, 8, uvars);
      Environment env = random_environment(n, uvars, rng);
      RestrictionCheck rc = check_restriction_lemma(alpha, Formula::top(), env, tol);
      top_case.tally(rc.equal && rc.rhs.dim() == evaluate(alpha, env, tol).dim(),
                     "i=" + std::to_string(i));
    }
    for (long i = 0; i < 10; ++i) {
      Environment env = random_environment(n, all_vars, rng);
      RestrictionCheck rc =
          check_restriction_lemma(Formula::var("u1"), beta, env, tol);
      Subspace expect = meet(*env.lookup("u1"), evaluate(beta, env, tol), tol);
      var_case.tally(rc.equal && equal(rc.lhs, expect, tol), "i=" + std::to_string(i));
    }
  }
  return {random_cases.result("restriction-lemma/random-instances"),
          top_case.result("restriction-lemma/beta-top"),
          var_case.result("restriction-lemma/alpha-single-variable")};
}

// beta_l attainment at 2l and 2l+1 and the statistical upper bound at 2l.
inline CheckList beta_lemma(const RunConfig& cfg) {
  using detail_verify::Counter;
  Counter attain_even, attain_odd, bound;
  const Tolerance& tol = cfg.tol;
  for (long l : {1L, 2L, 3L}) {
    WitnessRecord we = witness_beta(l, 2 * l, tol);
    attain_even.tally(we.achieved == l && verify_witness(we, tol),
                      "l=" + std::to_string(l));
    WitnessRecord wo = witness_beta(l, 2 * l + 1, tol);
    attain_odd.tally(wo.achieved == l + 1 && verify_witness(wo, tol),
                     "l=" + std::to_string(l));
    EstimateResult est =
        estimate_dbar(mk_beta(l).formula, 2 * l, cfg.trials, DimsStrategy::automatic,
                      derive_seed(cfg.seed, static_cast<std::uint64_t>(l), 0xF), tol);
    bound.tally(est.max_dim <= l, "l=" + std::to_string(l) + " max " +
                                      std::to_string(est.max_dim));
  }
  return {attain_even.result("beta-lemma/attains-l-at-2l"),
          attain_odd.result("beta-lemma/attains-l+1-at-2l+1"),
          bound.result("beta-lemma/statistical-bound-at-2l")};
}

// Formula-level properties: printer/parser round trip and NNF soundness.
inline CheckList formula_properties(const RunConfig& cfg) {
  using detail_verify::Counter;
  Counter roundtrip, nnf_sound;
  const Tolerance& tol = cfg.tol;
  std::vector<std::string> vars = {"x", "y", "z", "w"};
  long cases = std::min<long>(cfg.trials, 200);
  for (long i = 0; i < cases; ++i) {
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i), 0x10));
    Formula f = random_formula(rng, 12, vars);
    roundtrip.tally(parse(print(f)) == f, "'" + print(f) + "'");
    Environment env = random_environment(4, vars, rng);
    nnf_sound.tally(equal(evaluate(f, env, tol), evaluate(nnf(f), env, tol), tol),
                    "'" + print(f) + "'");
  }
  return {roundtrip.result("formula/print-parse-round-trip"),
          nnf_sound.result("formula/nnf-semantic-equality")};
}

}  // namespace verify
}  // namespace qlog
