#pragma once

// The staged formula constructions: gamma (iterated self-restriction of
// alpha), beta_l, and the dimension-separating formula for a pair m < n
// together with its certificate chain.

#include <stdexcept>
#include <string>
#include <vector>

#include "qlog/formula.hpp"
#include "qlog/profile.hpp"

namespace qlog {

// ---------------------------------------------------------------------------
// gamma: alpha restricted to itself `depth` times, chosen so that the top
// dimension is exactly 1 at both 2l and 2l+1. Layer i (innermost first) is
// alpha over the variables c<2i+1>, c<2i+2>.

struct Gamma {
  Formula formula;
  int depth = 0;                     // number of self-restrictions
  std::vector<Formula> layers;       // layers[i] is the alpha applied at step i
  DimProfile profile;                // k -> floor(k / 2^(depth+1))
};

// Smallest t with floor(2l / 2^(t+1)) == floor((2l+1) / 2^(t+1)) == 1.
inline int gamma_depth(long l) {
  if (l < 1) throw std::invalid_argument("gamma_depth: l must be >= 1");
  for (int t = 0;; ++t) {
    long p = 1L << (t + 1);
    if ((2 * l) / p == 1 && (2 * l + 1) / p == 1) return t;
    if (p > 2 * l + 1) throw std::logic_error("gamma_depth: no depth found");
  }
}

inline Gamma mk_gamma(long l) {
  int t = gamma_depth(l);
  Gamma g;
  g.depth = t;
  g.profile = DimProfile::floor_half_power(t + 1);
  auto layer_alpha = [](int i) {
    return mk_alpha("c" + std::to_string(2 * i + 1), "c" + std::to_string(2 * i + 2));
  };
  g.layers.push_back(layer_alpha(0));
  g.formula = g.layers.back();
  for (int i = 1; i <= t; ++i) {
    g.layers.push_back(layer_alpha(i));
    g.formula = restrict_to(g.layers.back(), g.formula);
  }
  return g;
}

// ---------------------------------------------------------------------------
// beta_l(a,b,c...) = (!(P(b,a) | P(a,b)) & gamma(c...)) | alpha(a,b).
// Top dimension is l at 2l and l+1 at 2l+1; the profile records exactly
// those two points.

struct Beta {
  long l = 0;
  Formula formula;
  Formula alpha_part;   // alpha(a,b)
  Formula guard_part;   // !(P(b,a) | P(a,b))
  Gamma gamma;
  DimProfile profile;   // point table {2l: l, 2l+1: l+1}
};

inline Beta mk_beta(long l) {
  if (l < 1) throw std::invalid_argument("mk_beta: l must be >= 1");
  Beta b;
  b.l = l;
  b.gamma = mk_gamma(l);
  b.alpha_part = mk_alpha("a", "b");
  b.guard_part = !(mk_P("b", "a") | mk_P("a", "b"));
  Formula beta_tilde = b.guard_part & b.gamma.formula;
  b.formula = beta_tilde | b.alpha_part;
  b.profile = DimProfile::point_table({{2 * l, l}, {2 * l + 1, l + 1}});
  return b;
}

// ---------------------------------------------------------------------------
// Separator construction. Starting from phi_0 = top and the tracked pair
// (a,b) = (m,n), each stage restricts a fresh copy of alpha or beta_l to the
// previous formula:
//
//   if a is even and b == a+1:  phi_s = beta_{a/2} | phi_{s-1},
//                               pair becomes (a/2, a/2+1)
//   otherwise:                  phi_s = alpha | phi_{s-1},
//                               pair becomes (floor(a/2), floor(b/2))
//
// The loop keeps a < b and stops at a == 0 with b >= 1, so the final formula
// has top dimension 0 at m and b_final >= 1 at n.

enum class StageKind { alpha, beta };

struct Stage {
  StageKind kind = StageKind::alpha;
  long l = 0;              // beta stages only
  std::string suffix;      // variable suffix used for this stage's formula
  Formula formula;         // freshened stage formula
  long a_after = 0;        // tracked pair after this stage
  long b_after = 0;
};

struct Certificate {
  long m = 0;
  long n = 0;
  std::vector<Stage> stages;
  Formula formula;         // the final separator phi
  long final_a = 0;        // claimed top dimension at m (always 0)
  long final_b = 0;        // claimed top dimension at n
};

inline DimProfile stage_profile(const Stage& s) {
  if (s.kind == StageKind::alpha) return DimProfile::floor_half_power(1);
  return DimProfile::point_table({{2 * s.l, s.l}, {2 * s.l + 1, s.l + 1}});
}

// Folds the stage profiles over a starting dimension k. Throws
// std::out_of_range if a beta stage's point table does not cover the
// intermediate value.
inline long certificate_predict(const Certificate& cert, long k) {
  long v = k;
  for (const auto& s : cert.stages) v = stage_profile(s).eval(v);
  return v;
}

// Recomputes the chain and checks every claimed pair, the a < b invariant,
// and the final claims. Throws std::logic_error on any mismatch.
inline void validate_certificate(const Certificate& cert) {
  if (cert.m < 1 || cert.m >= cert.n)
    throw std::logic_error("certificate: requires 1 <= m < n");
  long a = cert.m, b = cert.n;
  for (std::size_t i = 0; i < cert.stages.size(); ++i) {
    const Stage& s = cert.stages[i];
    if (s.kind == StageKind::beta && (a % 2 != 0 || b != a + 1 || s.l != a / 2))
      throw std::logic_error("certificate: beta stage does not match pair");
    DimProfile p = stage_profile(s);
    a = p.eval(a);
    b = p.eval(b);
    if (a != s.a_after || b != s.b_after)
      throw std::logic_error("certificate: stage " + std::to_string(i + 1) +
                             " pair mismatch");
    if (a >= b) throw std::logic_error("certificate: a < b violated");
  }
  if (cert.stages.empty() || a != 0 || b < 1 || a != cert.final_a || b != cert.final_b)
    throw std::logic_error("certificate: final claims mismatch");
}

inline Certificate mk_separator(long m, long n) {
  if (m < 1 || m >= n)
    throw std::invalid_argument("mk_separator: requires 1 <= m < n");
  Certificate cert;
  cert.m = m;
  cert.n = n;
  Formula phi = Formula::top();
  long a = m, b = n;
  int s = 0;
  while (a > 0) {
    ++s;
    Stage stage;
    stage.suffix = "_s" + std::to_string(s);
    Formula base;
    if (a % 2 == 0 && b == a + 1) {
      stage.kind = StageKind::beta;
      stage.l = a / 2;
      base = mk_beta(stage.l).formula;
      a = stage.l;
      b = stage.l + 1;
    } else {
      stage.kind = StageKind::alpha;
      base = mk_alpha("a", "b");
      a /= 2;
      b /= 2;
    }
    stage.formula = freshen(base, stage.suffix);
    stage.a_after = a;
    stage.b_after = b;
    phi = restrict_to(stage.formula, phi);
    cert.stages.push_back(std::move(stage));
  }
  cert.formula = phi;
  cert.final_a = a;
  cert.final_b = b;
  validate_certificate(cert);
  return cert;
}

}  // namespace qlog
