#include <doctest.h>

#include "concat/semantics.hpp"
#include "concat/syntax.hpp"
#include "gen.hpp"

using namespace concat;

namespace {

// Direct recursive reading of the three-valued semantics, one quantifier at a time.
using V = Verdict::Value;

V naive(const Formula& f, Structure s, Assignment a, std::size_t budget) {
  using K = Formula::Kind;
  auto lift = [](bool b) { return b ? V::True : V::False; };
  auto neg = [](V v) { return v == V::True ? V::False : v == V::False ? V::True : V::Unknown; };
  auto join = [](V x, V y) {
    if (x == V::True || y == V::True) return V::True;
    if (x == V::Unknown || y == V::Unknown) return V::Unknown;
    return V::False;
  };
  switch (f.kind()) {
    case K::Eq: return lift(eval_term(f.lhs(), a) == eval_term(f.rhs(), a));
    case K::Rel: return lift(holds(s, eval_term(f.lhs(), a), eval_term(f.rhs(), a)));
    case K::Not: return neg(naive(f.body(), s, a, budget));
    case K::And: return neg(join(neg(naive(f.left(), s, a, budget)), neg(naive(f.right(), s, a, budget))));
    case K::Or: return join(naive(f.left(), s, a, budget), naive(f.right(), s, a, budget));
    case K::Implies: return join(neg(naive(f.left(), s, a, budget)), naive(f.right(), s, a, budget));
    case K::Iff: {
      V l = naive(f.left(), s, a, budget), r = naive(f.right(), s, a, budget);
      if (l == V::Unknown || r == V::Unknown) return V::Unknown;
      return lift(l == r);
    }
    default: break;
  }
  bool universal = f.is(K::Forall) || f.is(K::BoundedForall);
  std::optional<Term> bound;
  if (f.is_bounded()) bound = f.bound();
  // a conjunct x ⊑ t of the body (an antecedent conjunct or negated disjunct for ∀) pins an
  // unbounded quantifier like a bound
  if (!bound) {
    std::vector<Formula> guards, todo;
    const Formula& body = f.body();
    auto split = [](const Formula& g, K k, std::vector<Formula>& out) {
      std::vector<Formula> stack{g};
      while (!stack.empty()) {
        Formula h = stack.back();
        stack.pop_back();
        if (h.is(k)) {
          stack.push_back(h.right());
          stack.push_back(h.left());
        } else {
          out.push_back(h);
        }
      }
    };
    if (!universal) {
      split(body, K::And, guards);
    } else if (body.is(K::Implies)) {
      split(body.left(), K::And, guards);
    } else {
      split(body, K::Or, todo);
      for (const auto& d : todo)
        if (d.is(K::Not)) guards.push_back(d.body());
    }
    for (const auto& g : guards) {
      if (g.is(K::Rel) && g.lhs() == Term::var(f.var()) && !g.rhs().contains_var(f.var())) {
        bound = g.rhs();
        break;
      }
    }
  }
  std::vector<BitString> dom = bound ? below(s, eval_term(*bound, a)) : all_strings(budget);
  V acc = universal ? V::True : V::False;
  for (const auto& v : dom) {
    a[f.var()] = v;
    V r = naive(f.body(), s, a, budget);
    acc = universal ? neg(join(neg(acc), neg(r))) : join(acc, r);
  }
  if (!bound) {
    if (!universal && acc != V::True) return V::Unknown;
    if (universal && acc != V::False) return V::Unknown;
  }
  return acc;
}

Formula p(const char* text) { return parse_formula(text); }

}  // namespace

TEST_CASE("eval_term") {
  CHECK(eval_term(biteral(BitString("0110")), {}) == BitString("0110"));
  CHECK(eval_term(parse_term("x * 0"), {{"x", BitString("1")}}) == BitString("10"));
  CHECK_THROWS_AS(eval_term(Term::var("y"), {}), UnboundVariable);
}

TEST_CASE("eval examples") {
  CHECK(eval(p("\"01\" <: \"0110\""), Structure::B, {}, 4).is_true());
  CHECK(eval(p("\"1\" <: \"01\""), Structure::D, {}, 4).is_false());
  auto r = evaluate(p("E x . x * \"0\" = \"10\""), Structure::D, {}, {4, 0});
  CHECK(r.verdict.is_true());
  CHECK(r.witness == Assignment{{"x", BitString("1")}});
  CHECK(eval(p("E x . x * \"0\" = \"1\""), Structure::D, {}, 4) == Verdict::unknown(4));
  CHECK(eval(p("E x . x * \"0\" = \"1\""), Structure::D, {}, 4).to_string() == "unknown(budget=4)");
  CHECK_THROWS_AS(eval(p("x = e"), Structure::B, {}, 2), UnboundVariable);
}

TEST_CASE("unbounded universal") {
  CHECK(eval(p("A x . x = x"), Structure::B, {}, 3).is_unknown());
  CHECK(eval(p("A x . x * 0 = 0 * x"), Structure::B, {}, 3).is_false());
  // pinned by its antecedent, so exact
  CHECK(eval(p("A x . x <: \"01\" -> x <: \"101\""), Structure::B, {}, 0).is_true());
}

TEST_CASE("decide examples") {
  CHECK(decide_sigma_0mk(p("A x <: \"00\" . x <: \"000\""), Structure::B));
  CHECK_FALSE(decide_sigma_0mk(p("E x <: \"1\" . x = \"0\""), Structure::B));
  // x = 0 needs y = 1, a substring but not a prefix of 01
  auto f = p("A x <: \"01\" . E y <: \"01\" . x * y = \"01\" | y * x = \"01\"");
  CHECK(decide_sigma_0mk(f, Structure::B));
  CHECK_FALSE(decide_sigma_0mk(f, Structure::D));
  CHECK_THROWS_AS(decide_sigma_0mk(p("E x . x = e"), Structure::B), std::invalid_argument);
  CHECK_THROWS_AS(decide_sigma_0mk(p("~~e = e"), Structure::B), std::invalid_argument);
}

TEST_CASE("evaluator matches the naive semantics") {
  gen::Rng r(11);
  gen::SigmaShape shape;
  shape.max_bits = 3;
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    Formula f = gen::sigma_sentence(r, shape);
    for (Structure s : {Structure::B, Structure::D}) {
      for (std::size_t budget : {0u, 2u}) {
        V expect = naive(f, s, {}, budget);
        CHECK_MESSAGE(eval(f, s, {}, budget).value == expect, to_string(f));
        CHECK_MESSAGE(eval(expand_bounded(f), s, {}, budget).value == expect, to_string(f));
        ++checked;
      }
    }
  }
  CHECK(checked == 1600);
}

TEST_CASE("evaluation agrees with the bounded-expanded form on a 500-sentence corpus") {
  gen::Rng r(12);
  gen::SigmaShape shape;
  for (int i = 0; i < 500; ++i) {
    Formula f = gen::sigma_sentence(r, shape);
    Structure s = i % 2 ? Structure::B : Structure::D;
    for (std::size_t budget : {1u, 3u, 5u})
      CHECK_MESSAGE(eval(f, s, {}, budget) == eval(expand_bounded(f), s, {}, budget), to_string(f));
  }
}

TEST_CASE("monotone in the budget") {
  gen::Rng r(13);
  gen::SigmaShape shape;
  for (int i = 0; i < 300; ++i) {
    Formula f = gen::sigma_sentence(r, shape);
    Structure s = i % 2 ? Structure::B : Structure::D;
    std::optional<V> decided;
    for (std::size_t budget = 0; budget <= 6; ++budget) {
      Verdict v = eval(f, s, {}, budget);
      if (decided) CHECK_MESSAGE(v.value == *decided, to_string(f));
      if (!v.is_unknown()) decided = v.value;
    }
  }
}

TEST_CASE("complete candidate domains") {
  EvalOptions o{4, 0, true};
  CHECK(evaluate(p("E x . x * \"0\" = \"1\""), Structure::D, {}, o).verdict.is_false());
  CHECK(evaluate(p("E x . E y . x * y = \"01\" & y = \"0\""), Structure::B, {}, o).verdict.is_false());
  CHECK(evaluate(p("E x . x * 0 = 0 * x & ~x = e"), Structure::D, {}, o).verdict.is_true());
  CHECK(evaluate(p("E x . E y . x * y = y * \"0\" * x"), Structure::D, {}, o).verdict.is_false());
  // the only candidate is longer than the budget
  CHECK(evaluate(p("E x . x = \"000001\""), Structure::D, {}, o).verdict.is_unknown());

  // never decides differently from the default reading once that one is decided,
  // and a False verdict stays False at larger budgets
  gen::Rng r(16);
  gen::SigmaShape shape;
  int extra = 0;
  for (int i = 0; i < 300; ++i) {
    Formula f = gen::sigma_sentence(r, shape);
    Structure s = i % 2 ? Structure::B : Structure::D;
    Verdict plain = eval(f, s, {}, 3);
    Verdict full = evaluate(f, s, {}, {3, 0, true}).verdict;
    if (!plain.is_unknown()) CHECK_MESSAGE(plain.value == full.value, to_string(f));
    if (full.is_false()) {
      CHECK_FALSE(eval(f, s, {}, 6).is_true());
      if (plain.is_unknown()) ++extra;
    }
  }
  CHECK(extra > 0);
}

TEST_CASE("bounded fragment: exact and dual") {
  gen::Rng r(14);
  gen::SigmaShape shape;
  shape.unbounded_exists = false;
  for (int i = 0; i < 300; ++i) {
    Formula f = gen::sigma_sentence(r, shape);
    for (Structure s : {Structure::B, Structure::D}) {
      bool d = decide_sigma_0mk(f, s);
      Formula dual = negate_sigma(f);
      CHECK(classify(dual).sigma);
      CHECK(d == !decide_sigma_0mk(dual, s));
      CHECK(Verdict::of(d) == eval(f, s, {}, 3));
    }
  }
}

TEST_CASE("witnesses verify") {
  gen::Rng r(15);
  gen::SigmaShape shape;
  int found = 0;
  for (int i = 0; i < 300; ++i) {
    Formula f = gen::sigma_sentence(r, shape);
    if (!f.is(Formula::Kind::Exists) && !f.is(Formula::Kind::BoundedExists)) continue;
    auto res = evaluate(f, Structure::D, {}, {4, 0});
    if (!res.verdict.is_true()) continue;
    ++found;
    // substituting the witness for the leading variable keeps the sentence true
    const Formula* cur = &f;
    Assignment a;
    while ((cur->is(Formula::Kind::Exists) || cur->is(Formula::Kind::BoundedExists)) && res.witness.count(cur->var())) {
      if (cur->is_bounded()) CHECK(holds(Structure::D, res.witness.at(cur->var()), eval_term(cur->bound(), a)));
      a[cur->var()] = res.witness.at(cur->var());
      cur = &cur->body();
    }
    CHECK(eval(*cur, Structure::D, a, 4).is_true());
  }
  CHECK(found > 20);
}
