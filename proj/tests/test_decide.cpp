#include <doctest.h>

#include "concat/decide.hpp"
#include "concat/syntax.hpp"
#include "gen.hpp"

using namespace concat;

TEST_CASE("decide_D_nm0 examples") {
  CHECK(decide_D_nm0(parse_formula("E x . x * \"0\" = \"10\""), 6).is_true());
  CHECK(decide_D_nm0(parse_formula("\"0\" = \"1\""), 6).is_false());
  CHECK(decide_D_nm0(parse_formula("E x <: \"10\" . x * x = \"1010\""), 6).is_true());
  CHECK(decide_D_nm0(parse_formula("E x . x * 0 = x * 1"), 6).is_false());
  CHECK(decide_D_nm0(parse_formula("~ \"0\" = \"1\""), 6).is_true());
  CHECK(decide_D_nm0(parse_formula("~ \"01\" <: \"0\" & \"0\" <: \"01\""), 6).is_true());
  CHECK_THROWS_AS(decide_D_nm0(parse_formula("A x <: \"1\" . x = x"), 6), std::invalid_argument);
  CHECK_THROWS_AS(decide_D_nm0(parse_formula("x = x"), 6), std::invalid_argument);
}

TEST_CASE("decide routes by fragment") {
  auto d = decide(parse_formula("A x <: \"01\" . x <: \"011\""), Structure::B, 4);
  CHECK(d.route == "sigma-0mk");
  CHECK(d.verdict.is_true());
  d = decide(parse_formula("E x . x * \"1\" = \"1\" * x & ~ x = e"), Structure::D, 4);
  CHECK(d.route == "word-equations");
  CHECK(d.verdict.is_true());
  d = decide(parse_formula("E x . A y <: x . y = y"), Structure::B, 4);
  CHECK(d.route == "budgeted-eval");
}

TEST_CASE("decide_D_nm0 agrees with exact evaluation on Σ(0,m,0) sentences") {
  gen::Rng r(5);
  gen::SigmaShape shape;
  shape.unbounded_exists = false;
  shape.bounded_forall = false;
  int decided = 0, total = 0;
  for (int i = 0; i < 200; ++i) {
    Formula f = gen::sigma_sentence(r, shape);
    if (classify(f).k > 0 || classify(f).n > 0) continue;
    ++total;
    bool exact = decide_sigma_0mk(f, Structure::D);
    Verdict v = decide_D_nm0(f, 4);
    if (v.is_unknown()) continue;
    ++decided;
    CHECK_MESSAGE(v.is_true() == exact, to_string(f));
  }
  MESSAGE("decided " << decided << " of " << total);
  CHECK(decided * 2 > total);
}
