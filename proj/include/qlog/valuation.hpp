#pragma once

// Evaluation of formulas on environments: Var -> bound subspace, top -> the
// full ambient space, bot -> the zero subspace, !/&/| -> complement/meet/join.
// Shared subterms are evaluated once per call, so restriction chains (which
// are DAGs, not trees) evaluate in time linear in the number of distinct
// nodes.

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qlog/formula.hpp"
#include "qlog/subspace.hpp"

namespace qlog {

struct UnboundVariableError : std::runtime_error {
  explicit UnboundVariableError(const std::string& var)
      : std::runtime_error("unbound variable '" + var + "'"), name(var) {}
  std::string name;
};

// An ordered binding of variable names to subspaces of a shared ambient
// space. Rebinding a name is an error; stage constructions always introduce
// fresh names, so a collision signals accidental capture.
class Environment {
 public:
  explicit Environment(long ambient) : ambient_(ambient) {
    if (ambient < 1)
      throw std::invalid_argument("environment ambient must be positive");
  }

  long ambient() const { return ambient_; }

  void bind(const std::string& name, Subspace s) {
    if (s.ambient() != ambient_)
      throw AmbientMismatchError("bind: subspace ambient " +
                                 std::to_string(s.ambient()) +
                                 " != environment ambient " +
                                 std::to_string(ambient_));
    if (index_.count(name))
      throw std::invalid_argument("environment already binds '" + name + "'");
    index_.emplace(name, bindings_.size());
    bindings_.emplace_back(name, std::move(s));
  }

  const Subspace* lookup(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &bindings_[it->second].second;
  }

  const std::vector<std::pair<std::string, Subspace>>& bindings() const {
    return bindings_;
  }
  std::size_t size() const { return bindings_.size(); }

 private:
  long ambient_;
  std::vector<std::pair<std::string, Subspace>> bindings_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline Subspace evaluate(const Formula& f, const Environment& env,
                         const Tolerance& tol = {}, RankStats* stats = nullptr) {
  std::unordered_map<const void*, Subspace> memo;
  struct Rec {
    const Environment& env;
    const Tolerance& tol;
    RankStats* stats;
    std::unordered_map<const void*, Subspace>& memo;

    Subspace go(const Formula& g) {
      auto it = memo.find(g.id());
      if (it != memo.end()) return it->second;
      Subspace out = Subspace::zero(env.ambient());
      switch (g.kind()) {
        case Kind::var: {
          const Subspace* s = env.lookup(g.name());
          if (!s) throw UnboundVariableError(g.name());
          out = *s;
          break;
        }
        case Kind::top: out = Subspace::full(env.ambient()); break;
        case Kind::bot: out = Subspace::zero(env.ambient()); break;
        case Kind::neg: out = complement(go(g.child())); break;
        case Kind::conj: out = meet(go(g.left()), go(g.right()), tol, stats); break;
        case Kind::disj: out = join(go(g.left()), go(g.right()), tol, stats); break;
      }
      memo.emplace(g.id(), out);
      return out;
    }
  } rec{env, tol, stats, memo};
  return rec.go(f);
}

// ---------------------------------------------------------------------------
// Restriction lemma check. The left side evaluates the restricted formula
// directly in C^n. The right side evaluates alpha inside the subspace
// W = Xi(beta): each binding S_i is cut down to P_i = S_i /\ W, pulled back
// through the isometry C^dim(W) -> W, alpha is evaluated in the abstract
// space, and the result is pushed forward again. The lemma asserts both
// sides are the same subspace.

struct RestrictionCheck {
  Subspace lhs;
  Subspace rhs;
  long restricted_dim = 0;   // dim of Xi(beta)
  double distance = 0.0;     // Frobenius distance between the projectors
  bool dims_equal = false;
  bool equal = false;        // dims_equal && distance < eq_threshold
};

inline RestrictionCheck check_restriction_lemma(const Formula& alpha,
                                                const Formula& beta,
                                                const Environment& env,
                                                const Tolerance& tol = {},
                                                double eq_threshold = 1e-8) {
  Formula restricted = restrict_to(alpha, beta);  // also rejects overlap
  Subspace lhs = evaluate(restricted, env, tol);

  Subspace w = evaluate(beta, env, tol);
  Subspace rhs = Subspace::zero(env.ambient());
  if (w.dim() > 0) {
    Isometry iso = isometry_onto(w);
    Environment inner(w.dim());
    for (const auto& name : variables(alpha)) {
      const Subspace* s = env.lookup(name);
      if (!s) throw UnboundVariableError(name);
      Subspace cut = meet(*s, w, tol);
      inner.bind(name, pullback(iso, cut, tol));
    }
    rhs = pushforward(iso, evaluate(alpha, inner, tol));
  }

  RestrictionCheck out{lhs, rhs};
  out.restricted_dim = w.dim();
  out.distance = projector_distance(lhs, rhs);
  out.dims_equal = lhs.dim() == rhs.dim();
  out.equal = out.dims_equal && out.distance < eq_threshold;
  return out;
}

}  // namespace qlog
