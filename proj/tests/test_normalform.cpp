#include <doctest.h>

#include "concat/normalform.hpp"
#include "concat/syntax.hpp"
#include "gen.hpp"

using namespace concat;

namespace {

Term bits(const char* s) { return biteral(BitString(s)); }
Term v(const char* n) { return Term::var(n); }
Formula p(const char* text) { return parse_formula(text); }

Verdict run(const PrenexNormalForm& nf, Structure s, std::size_t budget = 8) {
  return evaluate(nf.to_formula(), s, {}, {budget, 2000000}).verdict;
}

// Shape invariants of a normal form.
void check_shape(const PrenexNormalForm& nf, Structure s, const Formula& input) {
  for (const auto& e : nf.prefix)
    if (e.bound) CHECK_FALSE(e.bound->contains_var(e.var));
  SigmaClass c = nf.shape();
  if (s == Structure::B) {
    CHECK(c.n <= 1);
    if (c.n == 1) CHECK(nf.prefix.front().kind == PrefixEntry::Kind::Exists);
  } else if (classify(input).k == 0) {
    CHECK(c.m == 0);
    CHECK(c.k == 0);
  }
  CHECK(is_sentence(nf.to_formula()) == is_sentence(input));
}

}  // namespace

TEST_CASE("merge_conj shape and truth") {
  Formula m = merge_conj(Formula::eq(v("x"), v("y")), Formula::eq(v("u"), v("w")));
  CHECK(m.lhs() == concat_all({v("x"), Term::zero(), v("u"), v("x"), Term::one(), v("u")}));
  CHECK(m.rhs() == concat_all({v("y"), Term::zero(), v("w"), v("y"), Term::one(), v("w")}));
  Formula ee = Formula::eq(Term::empty(), Term::empty());
  Formula trivial = merge_conj(ee, ee);
  CHECK(eval_term(trivial.lhs(), {}) == BitString("01"));
  for (Structure s : {Structure::B, Structure::D}) {
    CHECK(eval(trivial, s, {}, 0).is_true());
    CHECK(eval(merge_conj(Formula::eq(bits("0"), bits("1")), ee), s, {}, 0).is_false());
  }
}

TEST_CASE("zero gadget") {
  // u = ε, w = 101 satisfies ψ with y1 = y3 = ε, y2 = 0, y4 = 1
  FreshNames names({"u", "w"});
  Formula psi = zero_gadget(v("u"), v("w"), names);
  Assignment a{{"u", BitString()}, {"w", BitString("101")}};
  CHECK(eval(psi, Structure::D, a, 3).is_true());
  // both nonempty with uw = wu: no y's up to length 3
  CHECK(eval(psi, Structure::D, {{"u", BitString("0")}, {"w", BitString("0")}}, 3).is_unknown());
}

TEST_CASE("or_prefix_to_eq") {
  auto nf = or_prefix_to_eq(bits("1"), bits("10"), bits("1"), bits("01"));
  CHECK(nf.shape() == SigmaClass{true, 10, 0, 0});
  CHECK(nf.prefix.size() == 10);
  CHECK(eval(p("\"1\" <: \"10\" | \"1\" <: \"01\""), Structure::D, {}, 0).is_true());
  Verdict r = run(nf, Structure::D, 4);
  CHECK_FALSE(r.is_false());
}

TEST_CASE("prefix and substring constructions") {
  auto pre = prefix_to_eq(bits("1"), bits("10"));
  CHECK(to_string(pre.to_formula()) == "E v1 . \"1\" * v1 = \"10\"");
  CHECK(run(pre, Structure::D).is_true());
  auto sub = substr_to_eq(bits("1"), bits("010"));
  auto r = evaluate(sub.to_formula(), Structure::B, {}, {4, 0});
  CHECK(r.verdict.is_true());
  CHECK(r.witness == Assignment{{"v1", BitString("0")}, {"v2", BitString("0")}});
  // nonsubstr: bounded universal survives
  auto ns = nonsubstr_to_formula(bits("00"), bits("0110"));
  CHECK(ns.prefix.front().kind == PrefixEntry::Kind::BoundedForall);
  CHECK(ns.shape().k == 1);
}

TEST_CASE("negated equation and disjunction constructions are equation-only") {
  auto ne = neq_to_eq(Formula::eq(bits("0"), bits("1")));
  CHECK(ne.shape().m == 0);
  CHECK(ne.shape().k == 0);
  CHECK(ne.shape().n > 3);
  auto oe = or_eq_to_eq(Formula::eq(bits("0"), bits("0")), Formula::eq(bits("1"), bits("0")));
  CHECK(oe.shape() == SigmaClass{true, 40, 0, 0});
  // never wrongly false
  for (Structure s : {Structure::B, Structure::D}) {
    CHECK_FALSE(run(ne, s, 3).is_false());
    CHECK_FALSE(run(oe, s, 3).is_false());
  }
}

TEST_CASE("commutation schemata") {
  FreshNames names({"x", "y"});
  auto f = p("A x <: \"01\" . E y . y = x * 0");
  auto g = commute_forall_exists(f, names);
  CHECK(to_string(g) == "E v1 . A x <: \"01\" . E y <: v1 . y = x * 0");
  auto h = commute_bounded_exists(p("E x <: \"01\" . E y . y = x"));
  CHECK(to_string(h) == "E y . E x <: \"01\" . y = x");
  auto k = merge_exists(p("E x . E y . x * y = \"01\""), names);
  CHECK(to_string(k) == "E v2 . E x <: v2 . E y <: v2 . x * y = \"01\"");
  CHECK_THROWS_AS(merge_exists(p("E x . x = e"), names), std::invalid_argument);
  for (const auto& [a, b] : {std::pair{f, g}, {p("E x <: \"01\" . E y . y = x"), h}})
    CHECK(eval(a, Structure::B, {}, 4) == eval(b, Structure::B, {}, 4));
  CHECK(eval(k, Structure::B, {}, 4).is_true());
}

TEST_CASE("normalize examples") {
  auto atom = normalize_D(p("x = \"01\""));
  CHECK(atom.prefix.empty());
  CHECK(atom.to_formula() == p("x = \"01\""));
  CHECK(normalize_B(p("x = \"01\"")).to_formula() == p("x = \"01\""));
  auto both = normalize_D(p("0 = 0 & 1 = 1"));
  CHECK(both.prefix.empty());
  CHECK(run(both, Structure::D).is_true());
  auto s110 = normalize_D(p("E x . E y <: x . x * y = \"0101\""));
  CHECK(s110.shape().m == 0);
  CHECK(s110.shape().k == 0);
  CHECK(run(s110, Structure::D).is_true());
  auto b = normalize_B(p("E x . E y . x * y = \"01\""));
  CHECK(b.shape() == SigmaClass{true, 1, 2, 0});
  CHECK(run(b, Structure::B).is_true());
  CHECK_THROWS_AS(normalize_D(p("A x . x = x")), std::invalid_argument);
}

TEST_CASE("normal forms keep shape invariants and never contradict the input") {
  gen::Rng r(21);
  gen::SigmaShape shape;
  shape.max_bits = 2;
  int decided = 0;
  for (int i = 0; i < 150; ++i) {
    Formula f = gen::sigma_sentence(r, shape);
    for (Structure s : {Structure::B, Structure::D}) {
      auto nf = normalize(f, s);
      check_shape(nf, s, f);
      auto names = all_vars(f);
      for (const auto& e : nf.prefix) CHECK((names.count(e.var) == 0 || classify(f).n + classify(f).m + classify(f).k > 0));
      Verdict a = evaluate(f, s, {}, {4, 200000}).verdict;
      Verdict b = evaluate(nf.to_formula(), s, {}, {4, 200000}).verdict;
      if (!a.is_unknown() && !b.is_unknown()) {
        ++decided;
        CHECK_MESSAGE(a == b, to_string(f));
      }
    }
  }
  CHECK(decided > 0);
}
