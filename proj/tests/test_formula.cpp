#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "qlog/construct.hpp"
#include "qlog/formula.hpp"
#include "qlog/subspace.hpp"
#include "qlog/valuation.hpp"
#include "qlog/verify.hpp"

using namespace qlog;

TEST_CASE("parse produces the expected trees") {
  Formula p = parse("(a | !b) & b");
  REQUIRE(p.kind() == Kind::conj);
  REQUIRE(p.left().kind() == Kind::disj);
  REQUIRE(p.left().left().name() == "a");
  REQUIRE(p.left().right().kind() == Kind::neg);
  REQUIRE(p.left().right().child().name() == "b");
  REQUIRE(p.right().name() == "b");
  REQUIRE(p == mk_P("a", "b"));

  REQUIRE(parse("top").kind() == Kind::top);
  REQUIRE(parse("bot").kind() == Kind::bot);
  REQUIRE(parse("1") == Formula::top());
  REQUIRE(parse("0") == Formula::bot());

  // precedence: ! > & > |, left-associative
  Formula q = parse("a & b | c");
  REQUIRE(q.kind() == Kind::disj);
  REQUIRE(q.left().kind() == Kind::conj);
  REQUIRE(q.right().name() == "c");
  REQUIRE(parse(print(q)) == q);

  Formula assoc = parse("a | b | c");
  REQUIRE(assoc.left().kind() == Kind::disj);  // (a | b) | c
  REQUIRE(parse("!a & b") == (!Formula::var("a") & Formula::var("b")));
  REQUIRE(parse("!!a") == !!Formula::var("a"));
}

TEST_CASE("parse accepts the unicode forms") {
  REQUIRE(parse("a ∧ ¬b") == (Formula::var("a") & !Formula::var("b")));
  REQUIRE(parse("a ∨ ⊤") == (Formula::var("a") | Formula::top()));
  REQUIRE(parse("⊥") == Formula::bot());
}

TEST_CASE("keyword-prefixed identifiers are plain variables") {
  REQUIRE(parse("topx").name() == "topx");
  REQUIRE(parse("bot_1").name() == "bot_1");
  REQUIRE(parse("top1").name() == "top1");
}

TEST_CASE("parse errors carry byte offsets") {
  REQUIRE_THROWS_AS(parse(""), ParseError);
  REQUIRE_THROWS_AS(parse("   "), ParseError);
  REQUIRE_THROWS_AS(parse("(a"), ParseError);
  REQUIRE_THROWS_AS(parse("a &"), ParseError);
  REQUIRE_THROWS_AS(parse("a b"), ParseError);
  REQUIRE_THROWS_AS(parse(")"), ParseError);
  REQUIRE_THROWS_AS(parse("a @ b"), ParseError);
  try {
    parse("a | | b");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.offset == 4);
  }
}

TEST_CASE("printer emits canonical ASCII with minimal parentheses") {
  Formula a = Formula::var("a"), b = Formula::var("b"), c = Formula::var("c");
  REQUIRE(print(a & b) == "a & b");
  REQUIRE(print(!(a & b)) == "!(a & b)");
  REQUIRE(print(mk_P("a", "b")) == "(a | !b) & b");
  REQUIRE(print((a & b) | c) == "a & b | c");
  REQUIRE(print(a & (b | c)) == "a & (b | c)");
  REQUIRE(print((a | b) | c) == "a | b | c");
  REQUIRE(print(a | (b | c)) == "a | (b | c)");
  REQUIRE(print(!!a) == "!!a");
  REQUIRE(print(Formula::top() & a) == "top & a");
}

TEST_CASE("print/parse round trip on random formulas") {
  std::mt19937_64 rng(7);
  std::vector<std::string> vars = {"x", "y1", "z_2", "w"};
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, 40, vars);
    REQUIRE(parse(print(f)) == f);
  }
}

TEST_CASE("nnf pushes negations to variables") {
  Formula a = Formula::var("a"), b = Formula::var("b");
  REQUIRE(nnf(!(a & b)) == (!a | !b));
  REQUIRE(nnf(!!a) == a);
  REQUIRE(nnf(!Formula::top()) == Formula::bot());
  REQUIRE(nnf(!Formula::bot()) == Formula::top());

  // no negation applied to anything but a variable
  std::mt19937_64 rng(11);
  std::vector<std::string> vars = {"x", "y", "z"};
  for (int i = 0; i < 100; ++i) {
    Formula f = nnf(random_formula(rng, 25, vars));
    std::unordered_set<const void*> seen;
    bool ok = true;
    detail::visit_dag(f, seen, [&](const Formula& g) {
      if (g.is(Kind::neg) && !g.child().is(Kind::var)) ok = false;
    });
    REQUIRE(ok);
  }
}

TEST_CASE("nnf preserves the valuation") {
  Formula f = parse("!(a | !(b & top))");
  Formula expected = parse("!a & b");
  for (int i = 0; i < 50; ++i) {
    std::mt19937_64 rng(100 + i);
    Environment env = random_environment(4, {"a", "b"}, rng);
    REQUIRE(equal(evaluate(nnf(f), env), evaluate(expected, env)));
    REQUIRE(equal(evaluate(f, env), evaluate(nnf(f), env)));
  }
}

TEST_CASE("freshen appends suffixes") {
  Formula a = Formula::var("a");
  REQUIRE(freshen(a, "_1") == Formula::var("a_1"));
  Formula al = mk_alpha("a", "b");
  REQUIRE(freshen(al, "_s2") == mk_alpha("a_s2", "b_s2"));
  REQUIRE(freshen(freshen(a, "_x"), "_y") == Formula::var("a_x_y"));
  REQUIRE_THROWS_AS(freshen(a, ""), std::invalid_argument);
  REQUIRE_THROWS_AS(freshen(a, "bad suffix"), std::invalid_argument);
}

TEST_CASE("variables are listed in first-occurrence order") {
  Formula f = parse("(b | !a) & a & c");
  std::vector<std::string> vs = variables(f);
  REQUIRE(vs == std::vector<std::string>{"b", "a", "c"});
  REQUIRE(variables(Formula::top()).empty());
}

TEST_CASE("restriction substitutes leaves per the definition") {
  Formula u = Formula::var("u"), v = Formula::var("v");
  REQUIRE(restrict_to(u, v) == (u & v));
  REQUIRE(restrict_to(!u, v) == (!(u & v) & v));
  // top inside alpha becomes beta, bot stays bot
  REQUIRE(restrict_to(Formula::top() & u, v) == (v & (u & v)));
  REQUIRE(restrict_to(Formula::bot() | u, v) == (Formula::bot() | (u & v)));
  // restricting to the literal top gives nnf(alpha)
  REQUIRE(restrict_to(!(u & v), Formula::top()) == (!u | !v));
  REQUIRE_THROWS_AS(restrict_to(u & v, v), VariableOverlapError);
}

namespace {

// every alpha variable must occur only as the left side of (u & beta)
bool restrict_shape_ok(const Formula& r, const Formula& beta,
                       const std::set<std::string>& avars) {
  if (r.id() == beta.id()) return true;  // inserted beta copy
  switch (r.kind()) {
    case Kind::var: return avars.count(r.name()) == 0;
    case Kind::top:
    case Kind::bot: return true;
    case Kind::neg: return restrict_shape_ok(r.child(), beta, avars);
    case Kind::conj:
      if (r.left().is(Kind::var) && avars.count(r.left().name()) &&
          r.right().id() == beta.id())
        return true;
      return restrict_shape_ok(r.left(), beta, avars) &&
             restrict_shape_ok(r.right(), beta, avars);
    case Kind::disj:
      return restrict_shape_ok(r.left(), beta, avars) &&
             restrict_shape_ok(r.right(), beta, avars);
  }
  return false;
}

}  // namespace

TEST_CASE("restriction structural property on random formulas") {
  std::mt19937_64 rng(23);
  std::vector<std::string> uvars = {"u1", "u2", "u3"};
  Formula beta = mk_alpha("v1", "v2");
  std::set<std::string> avars(uvars.begin(), uvars.end());
  for (int i = 0; i < 100; ++i) {
    Formula alpha = random_formula(rng, 14, uvars);
    Formula r = restrict_to(alpha, beta);
    REQUIRE(restrict_shape_ok(r, beta, avars));
  }
}

TEST_CASE("named constructions") {
  REQUIRE(print(mk_P("a", "b")) == "(a | !b) & b");
  REQUIRE(mk_alpha("a", "b") == (mk_P("b", "a") & !(Formula::var("a") & Formula::var("b"))));

  // P(a,a) evaluates to the binding of a
  for (int i = 0; i < 20; ++i) {
    std::mt19937_64 rng(300 + i);
    Environment env = random_environment(4, {"a"}, rng);
    REQUIRE(equal(evaluate(mk_P("a", "a"), env), *env.lookup("a")));
  }
}

TEST_CASE("gamma self-restriction depth is adaptive") {
  REQUIRE(gamma_depth(1) == 0);
  REQUIRE(gamma_depth(2) == 1);
  REQUIRE(gamma_depth(3) == 1);
  REQUIRE(gamma_depth(4) == 2);
  REQUIRE(gamma_depth(8) == 3);

  Gamma g1 = mk_gamma(1);
  REQUIRE(g1.formula == mk_alpha("c1", "c2"));
  REQUIRE(g1.profile.eval(2) == 1);
  REQUIRE(g1.profile.eval(3) == 1);

  Gamma g2 = mk_gamma(2);
  REQUIRE(g2.depth == 1);
  REQUIRE(g2.profile.eval(4) == 1);
  REQUIRE(g2.profile.eval(5) == 1);
  // alpha(a,b) opens with P(b,a), so b leads; the inner gamma's variables
  // appear when the first beta copy is reached
  REQUIRE(variables(g2.formula) ==
          std::vector<std::string>{"c4", "c2", "c1", "c3"});

  Gamma g4 = mk_gamma(4);
  REQUIRE(g4.depth == 2);
  REQUIRE(g4.profile.eval(8) == 1);
  REQUIRE(g4.profile.eval(9) == 1);
}

TEST_CASE("beta formula and point profile") {
  Beta b2 = mk_beta(2);
  REQUIRE(b2.profile.eval(4) == 2);
  REQUIRE(b2.profile.eval(5) == 3);
  REQUIRE_THROWS_AS(b2.profile.eval(6), std::out_of_range);
  auto vs = variables(b2.formula);
  REQUIRE(std::set<std::string>(vs.begin(), vs.end()) ==
          std::set<std::string>{"a", "b", "c1", "c2", "c3", "c4"});
  REQUIRE_THROWS_AS(mk_beta(0), std::invalid_argument);
}

TEST_CASE("separator stage chains") {
  Certificate c23 = mk_separator(2, 3);
  REQUIRE(c23.stages.size() == 2);
  REQUIRE(c23.stages[0].kind == StageKind::beta);
  REQUIRE(c23.stages[0].l == 1);
  REQUIRE(c23.stages[0].a_after == 1);
  REQUIRE(c23.stages[0].b_after == 2);
  REQUIRE(c23.stages[1].kind == StageKind::alpha);
  REQUIRE(c23.final_a == 0);
  REQUIRE(c23.final_b == 1);

  Certificate c45 = mk_separator(4, 5);
  REQUIRE(c45.stages.size() == 3);
  REQUIRE(c45.stages[0].kind == StageKind::beta);
  REQUIRE(c45.stages[0].l == 2);
  REQUIRE(c45.stages[1].kind == StageKind::beta);
  REQUIRE(c45.stages[1].l == 1);
  REQUIRE(c45.stages[2].kind == StageKind::alpha);

  Certificate c48 = mk_separator(4, 8);
  REQUIRE(c48.stages.size() == 3);
  for (const auto& s : c48.stages) REQUIRE(s.kind == StageKind::alpha);
  REQUIRE(certificate_predict(c48, 8) == 1);
  REQUIRE(certificate_predict(c48, 4) == 0);
  REQUIRE(certificate_predict(c48, 16) == 2);

  Certificate c46 = mk_separator(4, 6);
  REQUIRE(c46.stages.size() == 3);
  REQUIRE(c46.stages[0].kind == StageKind::alpha);
  REQUIRE(c46.stages[1].kind == StageKind::beta);
  REQUIRE(c46.stages[1].l == 1);

  REQUIRE_THROWS_AS(mk_separator(3, 3), std::invalid_argument);
  REQUIRE_THROWS_AS(mk_separator(5, 2), std::invalid_argument);
}

TEST_CASE("separator certificates maintain a < b with decreasing b") {
  for (long m = 1; m <= 7; ++m)
    for (long n = m + 1; n <= 9; ++n) {
      Certificate cert = mk_separator(m, n);
      long a = m, b = n;
      for (const auto& s : cert.stages) {
        REQUIRE(s.a_after < s.b_after);
        REQUIRE(s.b_after < b);
        a = s.a_after;
        b = s.b_after;
      }
      REQUIRE(a == 0);
      REQUIRE(b >= 1);
      REQUIRE_NOTHROW(validate_certificate(cert));
      // stage formulas use disjoint variables
      std::set<std::string> seen;
      for (const auto& s : cert.stages)
        for (const auto& v : variables(s.formula)) REQUIRE(seen.insert(v).second);
      // the separator formula itself survives a print/parse round trip
      REQUIRE(parse(print(cert.formula)) == cert.formula);
    }
}

TEST_CASE("profile evaluation") {
  REQUIRE(DimProfile::floor_half_power(1).eval(5) == 2);
  REQUIRE(DimProfile::composition({DimProfile::floor_half_power(1),
                                   DimProfile::floor_half_power(1)})
              .eval(8) == 2);
  REQUIRE(DimProfile::point_table({{4, 2}, {5, 3}}).eval(5) == 3);
  REQUIRE_THROWS_AS(DimProfile::point_table({{4, 2}}).eval(7), std::out_of_range);
  REQUIRE(DimProfile::floor_half_power(3).eval(9) == 1);
}
