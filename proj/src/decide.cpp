#include "concat/decide.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "concat/normalform.hpp"

namespace concat {

namespace {

using Eqn = std::pair<Term, Term>;
using Case = std::vector<Eqn>;

constexpr std::size_t kMaxCases = 4096;

struct TooManyCases {};

class Splitter {
 public:
  explicit Splitter(FreshNames& names) : names_(names) {}

  std::vector<Case> cases(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Eq:
        return {{{f.lhs(), f.rhs()}}};
      case K::Rel: {
        Term v = fresh();
        return {{{f.rhs(), Term::concat(f.lhs(), v)}}};
      }
      case K::Not:
        return f.body().is(K::Eq) ? differ(f.body().lhs(), f.body().rhs())
                                  : not_prefix(f.body().lhs(), f.body().rhs());
      case K::And:
        return product(cases(f.left()), cases(f.right()));
      case K::Or: {
        auto a = cases(f.left());
        auto b = cases(f.right());
        a.insert(a.end(), b.begin(), b.end());
        check(a.size());
        return a;
      }
      case K::Exists:
        return cases(f.body());
      case K::BoundedExists:
        return product({{{f.bound(), Term::concat(Term::var(f.var()), fresh())}}}, cases(f.body()));
      default:
        throw std::invalid_argument("decide_D_nm0: unexpected connective");
    }
  }

 private:
  Term fresh() { return Term::var(names_.next()); }

  static void check(std::size_t n) {
    if (n > kMaxCases) throw TooManyCases{};
  }

  static std::vector<Case> product(const std::vector<Case>& a, const std::vector<Case>& b) {
    check(a.size() * b.size());
    std::vector<Case> out;
    for (const auto& x : a)
      for (const auto& y : b) {
        Case c = x;
        c.insert(c.end(), y.begin(), y.end());
        out.push_back(std::move(c));
      }
    return out;
  }

  // s ≠ t: one extends the other, or they split at some position.
  std::vector<Case> differ(const Term& s, const Term& t) {
    std::vector<Case> out;
    for (const auto& [a, b] : {std::pair{s, t}, {t, s}})
      for (Term bit : {Term::zero(), Term::one()})
        out.push_back({{a, concat_all({b, bit, fresh()})}});
    for (const auto& [x, y] : {std::pair{Term::zero(), Term::one()}, {Term::one(), Term::zero()}}) {
      Term p = fresh();
      out.push_back({{s, concat_all({p, x, fresh()})}, {t, concat_all({p, y, fresh()})}});
    }
    return out;
  }

  // ¬(s ⪯ t): s runs past the end of t, or they split.
  std::vector<Case> not_prefix(const Term& s, const Term& t) {
    std::vector<Case> out;
    for (Term bit : {Term::zero(), Term::one()}) out.push_back({{s, concat_all({t, bit, fresh()})}});
    for (const auto& [x, y] : {std::pair{Term::zero(), Term::one()}, {Term::one(), Term::zero()}}) {
      Term p = fresh();
      out.push_back({{s, concat_all({p, x, fresh()})}, {t, concat_all({p, y, fresh()})}});
    }
    return out;
  }

  FreshNames& names_;
};

}  // namespace

Verdict decide_D_nm0(const Formula& f, std::size_t budget) {
  if (!is_sentence(f)) throw std::invalid_argument("decide_D_nm0: not a sentence");
  SigmaClass c = classify(f);
  if (!c.sigma) throw std::invalid_argument("decide_D_nm0: not a Σ-formula");
  if (c.k > 0) throw std::invalid_argument("decide_D_nm0: bounded universal quantifiers present");

  FreshNames names(all_vars(f));
  Formula g = rename_apart(f, names);
  std::vector<Case> cases;
  try {
    cases = Splitter(names).cases(g);
  } catch (const TooManyCases&) {
    return Verdict::unknown(budget);
  }

  bool all_unsat = true;
  for (const auto& cs : cases) {
    std::vector<Formula> eqs;
    for (const auto& [s, t] : cs) eqs.push_back(Formula::eq(s, t));
    WordEquation e = flatten(merge_conj_all(eqs));
    SolveLimits lim;
    lim.max_total_len = budget * std::max<std::size_t>(1, e.vars().size());
    EqVerdict r = solve(e, lim);
    if (r.kind == EqVerdict::Kind::Sat) return Verdict::of(true);
    if (r.kind != EqVerdict::Kind::Unsat) all_unsat = false;
  }
  return all_unsat ? Verdict::of(false) : Verdict::unknown(budget);
}

Decision decide(const Formula& f, Structure s, std::size_t budget) {
  SigmaClass c = classify(f);
  if (is_sentence(f) && c.sigma && c.n == 0)
    return {Verdict::of(decide_sigma_0mk(f, s)), "sigma-0mk",
            "Σ(0,m,k) sentence: all quantifiers bounded, decided by exhaustive evaluation"};
  if (is_sentence(f) && c.sigma && c.k == 0 && s == Structure::D)
    return {decide_D_nm0(f, budget), "word-equations",
            "Σ(n,m,0) sentence over D: reduced to word equations and solved"};
  return {eval(f, s, {}, budget), "budgeted-eval",
          "outside the decidable fragments handled here: evaluated with unbounded quantifiers "
          "limited to length " + std::to_string(budget)};
}

}  // namespace concat
