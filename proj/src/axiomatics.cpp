#include "concat/axiomatics.hpp"

#include <functional>

#include "concat/syntax.hpp"

namespace concat {

namespace {

using K = Formula::Kind;

const char* const kAxiomsB[] = {
    "A x . x = e * x & x = x * e",
    "A x . A y . A z . (x * y) * z = x * (y * z)",
    "A x . A y . ~ x = y -> ~ x * 0 = y * 0 & ~ x * 1 = y * 1",
    "A x . A y . ~ x * 0 = y * 1",
    "A x . x <: e <-> x = e",
    "A x . x <: 0 <-> x = e | x = 0",
    "A x . x <: 1 <-> x = e | x = 1",
    "A x . A y . x <: 0 * y * 0 <-> x = 0 * y * 0 | x <: 0 * y | x <: y * 0",
    "A x . A y . x <: 0 * y * 1 <-> x = 0 * y * 1 | x <: 0 * y | x <: y * 1",
    "A x . A y . x <: 1 * y * 0 <-> x = 1 * y * 0 | x <: 1 * y | x <: y * 0",
    "A x . A y . x <: 1 * y * 1 <-> x = 1 * y * 1 | x <: 1 * y | x <: y * 1",
};

const char* const kAxiomsD[] = {
    "A x . x <: e <-> x = e",
    "A x . A y . x <: y * 0 <-> x = y * 0 | x <: y",
    "A x . A y . x <: y * 1 <-> x = y * 1 | x <: y",
};

Term bit(char c) { return c == '0' ? Term::zero() : Term::one(); }
Term cat(const Term& a, const Term& b) { return Term::concat(a, b); }
Formula canon(const Formula& f) { return expand_bounded(f); }
bool same(const Formula& a, const Formula& b) { return canon(a) == canon(b); }

std::string key(const Formula& f) { return to_string(f); }

// ---------------------------------------------------------------------------------------------
// Checker

struct StepError {
  std::string reason;
};

[[noreturn]] void fail(const std::string& reason) { throw StepError{reason}; }

void need(bool ok, const char* reason) {
  if (!ok) fail(reason);
}

const Term& term_arg(const StepArgs& a, std::size_t i) {
  need(a.terms.size() > i, "missing argument");
  return a.terms[i];
}

void check_step(Structure theory, const ProofStep& s, const std::vector<Formula>& prem) {
  const Formula& c = s.formula;
  auto arity = [&](std::size_t n) { need(prem.size() == n, "bad premise count"); };
  auto conclude = [&](const Formula& expected) { need(same(c, expected), "conclusion mismatch"); };
  const std::string& r = s.rule;

  if (r == "AxiomInstance") {
    arity(0);
    need(s.args.axiom.has_value(), "missing argument");
    need(s.args.axiom->theory == theory, "axiom not in theory");
    Formula f = axiom(*s.args.axiom);
    std::size_t outer = 0;
    for (Formula g = f; g.is(K::Forall); g = g.body()) ++outer;
    need(s.args.terms.size() == outer, "wrong substitution");
    conclude(instantiate(f, s.args.terms));
  } else if (r == "Refl") {
    arity(0);
    const Term& t = term_arg(s.args, 0);
    conclude(Formula::eq(t, t));
  } else if (r == "Sym") {
    arity(1);
    const Formula& p = prem[0];
    if (p.is(K::Eq)) {
      conclude(Formula::eq(p.rhs(), p.lhs()));
    } else {
      need(p.is(K::Not) && p.body().is(K::Eq), "bad premise shape");
      conclude(Formula::negation(Formula::eq(p.body().rhs(), p.body().lhs())));
    }
  } else if (r == "Trans") {
    arity(2);
    need(prem[0].is(K::Eq) && prem[1].is(K::Eq), "bad premise shape");
    need(prem[0].rhs() == prem[1].lhs(), "bad premise shape");
    conclude(Formula::eq(prem[0].lhs(), prem[1].rhs()));
  } else if (r == "CongL" || r == "CongR") {
    arity(1);
    need(prem[0].is(K::Eq), "bad premise shape");
    const Term& u = term_arg(s.args, 0);
    const Formula& p = prem[0];
    conclude(r == "CongL" ? Formula::eq(cat(u, p.lhs()), cat(u, p.rhs()))
                          : Formula::eq(cat(p.lhs(), u), cat(p.rhs(), u)));
  } else if (r == "AndIntro") {
    arity(2);
    conclude(Formula::conj(prem[0], prem[1]));
  } else if (r == "AndElimL" || r == "AndElimR") {
    arity(1);
    Formula p = canon(prem[0]);
    need(p.is(K::And), "bad premise shape");
    conclude(r == "AndElimL" ? p.left() : p.right());
  } else if (r == "OrIntroL" || r == "OrIntroR") {
    arity(1);
    need(s.args.formula.has_value(), "missing argument");
    conclude(r == "OrIntroL" ? Formula::disj(prem[0], *s.args.formula)
                             : Formula::disj(*s.args.formula, prem[0]));
  } else if (r == "ModusPonens") {
    arity(2);
    need(same(prem[1], Formula::implies(prem[0], c)), "bad premise shape");
  } else if (r == "IffToImpL" || r == "IffToImpR") {
    arity(1);
    Formula p = canon(prem[0]);
    need(p.is(K::Iff), "bad premise shape");
    conclude(r == "IffToImpL" ? Formula::implies(p.left(), p.right())
                              : Formula::implies(p.right(), p.left()));
  } else if (r == "Contrapose") {
    arity(2);
    Formula p = canon(prem[0]);
    need(p.is(K::Implies), "bad premise shape");
    need(same(prem[1], Formula::negation(p.right())), "bad premise shape");
    conclude(Formula::negation(p.left()));
  } else if (r == "NegOrIntro") {
    arity(2);
    need(prem[0].is(K::Not) && prem[1].is(K::Not), "bad premise shape");
    conclude(Formula::negation(Formula::disj(prem[0].body(), prem[1].body())));
  } else if (r == "ExistsIntro") {
    arity(1);
    need(s.args.var.has_value(), "missing argument");
    Formula g = canon(c);
    need(g.is(K::Exists) && g.var() == *s.args.var, "conclusion mismatch");
    need(same(prem[0], substitute(g.body(), g.var(), term_arg(s.args, 0))), "wrong substitution");
  } else if (r == "Subst" || r == "Distinguish") {
    arity(2);
    need(s.args.var.has_value() && s.args.formula.has_value(), "missing argument");
    const std::string& z = *s.args.var;
    const Formula& theta = *s.args.formula;
    if (r == "Subst") {
      need(prem[0].is(K::Eq), "bad premise shape");
      need(same(prem[1], substitute(theta, z, prem[0].lhs())), "wrong substitution");
      conclude(substitute(theta, z, prem[0].rhs()));
    } else {
      need(c.is(K::Not) && c.body().is(K::Eq), "conclusion mismatch");
      need(same(prem[0], substitute(theta, z, c.body().lhs())), "wrong substitution");
      need(same(prem[1], Formula::negation(substitute(theta, z, c.body().rhs()))), "wrong substitution");
    }
  } else if (r == "BoundedCover") {
    need(s.args.axiom.has_value(), "missing argument");
    const AxiomRef& ax = *s.args.axiom;
    need(ax.theory == theory, "axiom not in theory");
    Formula g = canon(c);
    need(g.is(K::Forall) && g.body().is(K::Implies), "conclusion mismatch");
    const std::string& x = g.var();
    const Formula& guard = g.body().left();
    need(guard.is(K::Rel) && guard.lhs() == Term::var(x), "conclusion mismatch");
    const Term& bound = guard.rhs();
    const Formula& body = g.body().right();
    auto at = [&](const Term& t) { return substitute(body, x, t); };
    auto below = [&](const Term& t) {
      return Formula::forall(x, Formula::implies(Formula::rel(Term::var(x), t), body));
    };
    std::vector<Formula> expected;
    Term want = Term::empty();
    int i = ax.index;
    if (i == 5) {
      expected = {at(Term::empty())};
    } else if (theory == Structure::B && (i == 6 || i == 7)) {
      want = i == 6 ? Term::zero() : Term::one();
      expected = {at(Term::empty()), at(want)};
    } else if (theory == Structure::B && i >= 8) {
      const Term& y = term_arg(s.args, 0);
      need(!y.contains_var(x), "wrong substitution");
      Term a = (i - 8) / 2 ? Term::one() : Term::zero();
      Term b = (i - 8) % 2 ? Term::one() : Term::zero();
      want = cat(cat(a, y), b);
      expected = {below(cat(a, y)), below(cat(y, b)), at(want)};
    } else if (theory == Structure::D && (i == 6 || i == 7)) {
      const Term& y = term_arg(s.args, 0);
      need(!y.contains_var(x), "wrong substitution");
      want = cat(y, i == 6 ? Term::zero() : Term::one());
      expected = {below(y), at(want)};
    } else {
      fail("axiom not allowed");
    }
    need(bound == want, "conclusion mismatch");
    arity(expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k)
      need(same(prem[k], expected[k]), "bad premise shape");
  } else {
    fail("unknown rule");
  }
}

// ---------------------------------------------------------------------------------------------
// Synthesis

class Synth {
 public:
  Synth(ProofBuilder& b, std::size_t budget) : b_(b), th_(b.theory()), budget_(budget) {}

  int term_eq(const Term& t) {
    if (!t.is_closed()) throw std::invalid_argument("term has variables");
    if (as_biteral(t)) return refl(t);
    if (t.is(Term::Kind::Zero) || t.is(Term::Kind::One)) return elim(ax(1, {t}), true);
    // t = l r
    const Term& l = t.left();
    const Term& r = t.right();
    BitString vl = eval_term(l, {}), vr = eval_term(r, {});
    int a = cong(term_eq(l), r, false);
    int c = cong(term_eq(r), biteral(vl), true);
    return trans(trans(a, c), join(vl, vr));
  }

  int eq(const Term& s, const Term& t) {
    if (s == t) return refl(s);
    if (eval_term(s, {}) != eval_term(t, {})) refuse(Formula::eq(s, t));
    if (as_biteral(s)) return sym(term_eq(t));
    if (as_biteral(t)) return term_eq(s);
    return trans(term_eq(s), sym(term_eq(t)));
  }

  int neq(const Term& s, const Term& t) {
    BitString u = eval_term(s, {}), v = eval_term(t, {});
    if (u == v) refuse(Formula::negation(Formula::eq(s, t)));
    int p = neq_bits(u, v);
    p = replace(p, biteral(u), s, [&](const Term& z) { return Formula::negation(Formula::eq(z, biteral(v))); });
    return replace(p, biteral(v), t, [&](const Term& z) { return Formula::negation(Formula::eq(s, z)); });
  }

  int rel(const Term& s, const Term& t, bool positive) {
    BitString u = eval_term(s, {}), v = eval_term(t, {});
    if (holds(th_, u, v) != positive) {
      Formula f = Formula::rel(s, t);
      refuse(positive ? f : Formula::negation(f));
    }
    auto wrap = [&](Formula f) { return positive ? f : Formula::negation(f); };
    int p = th_ == Structure::B ? (positive ? rel_b(u, v) : nrel_b(u, v))
                                : (positive ? rel_d(u, v) : nrel_d(u, v));
    p = replace(p, biteral(u), s, [&](const Term& z) { return wrap(Formula::rel(z, biteral(v))); });
    return replace(p, biteral(v), t, [&](const Term& z) { return wrap(Formula::rel(s, z)); });
  }

  int literal(const Formula& f) {
    if (!f.is_literal() || !is_sentence(f)) throw std::invalid_argument("not a variable-free literal");
    if (f.is(K::Eq)) return eq(f.lhs(), f.rhs());
    if (f.is(K::Rel)) return rel(f.lhs(), f.rhs(), true);
    const Formula& a = f.body();
    return a.is(K::Eq) ? neq(a.lhs(), a.rhs()) : rel(a.lhs(), a.rhs(), false);
  }

  int sentence(const Formula& f) {
    if (auto id = b_.find(f)) return *id;
    switch (f.kind()) {
      case K::Eq:
      case K::Rel:
      case K::Not:
        return literal(f);
      case K::And:
        return add("AndIntro", {}, {sentence(f.left()), sentence(f.right())}, f);
      case K::Or:
        if (truth(f.left())) return or_intro(sentence(f.left()), f.right(), true);
        return or_intro(sentence(f.right()), f.left(), false);
      case K::Exists:
        for (const BitString& w : all_strings(budget_)) {
          Formula inst = substitute(f.body(), f.var(), biteral(w));
          if (truth(inst)) return exists_intro(sentence(inst), f, biteral(w));
        }
        throw ProofRefused(ProofRefused::Reason::Unknown,
                           "no witness of length <= " + std::to_string(budget_) + " for " + to_string(f));
      case K::BoundedExists:
        for (const BitString& w : below(th_, eval_term(f.bound(), {}))) {
          Formula inst = substitute(f.body(), f.var(), biteral(w));
          if (!truth(inst)) continue;
          int p = add("AndIntro", {}, {rel(biteral(w), f.bound(), true), sentence(inst)},
                      Formula::conj(Formula::rel(biteral(w), f.bound()), inst));
          return exists_intro(p, f, biteral(w));
        }
        refuse(f);
      case K::BoundedForall: {
        BitString v = eval_term(f.bound(), {});
        int p = cover(f.var(), f.body(), v);
        return replace(p, biteral(v), f.bound(),
                       [&](const Term& z) { return Formula::bounded_forall(f.var(), z, f.body()); });
      }
      default:
        throw std::invalid_argument("not a Σ-formula: " + to_string(f));
    }
  }

 private:
  // -- step constructors

  int add(std::string rule, StepArgs args, std::vector<int> premises, Formula f) {
    return b_.add(std::move(rule), std::move(args), std::move(premises), std::move(f));
  }

  const Formula& at(int id) const { return b_.formula(id); }

  int ax(int index, std::vector<Term> terms) {
    AxiomRef ref{th_, index};
    Formula f = instantiate(axiom(ref), terms);
    StepArgs a;
    a.axiom = ref;
    a.terms = std::move(terms);
    return add("AxiomInstance", std::move(a), {}, f);
  }

  int refl(const Term& t) {
    StepArgs a;
    a.terms = {t};
    return add("Refl", std::move(a), {}, Formula::eq(t, t));
  }

  int sym(int p) {
    const Formula& f = at(p);
    if (f.is(K::Eq)) return add("Sym", {}, {p}, Formula::eq(f.rhs(), f.lhs()));
    return add("Sym", {}, {p}, Formula::negation(Formula::eq(f.body().rhs(), f.body().lhs())));
  }

  int trans(int p, int q) {
    if (at(p).lhs() == at(p).rhs()) return q;
    if (at(q).lhs() == at(q).rhs()) return p;
    return add("Trans", {}, {p, q}, Formula::eq(at(p).lhs(), at(q).rhs()));
  }

  // left: u∘s = u∘t, otherwise s∘u = t∘u
  int cong(int p, const Term& u, bool left) {
    StepArgs a;
    a.terms = {u};
    const Formula& f = at(p);
    if (left) return add("CongL", std::move(a), {p}, Formula::eq(cat(u, f.lhs()), cat(u, f.rhs())));
    return add("CongR", std::move(a), {p}, Formula::eq(cat(f.lhs(), u), cat(f.rhs(), u)));
  }

  int elim(int p, bool left) {
    const Formula& f = at(p);
    return add(left ? "AndElimL" : "AndElimR", {}, {p}, left ? f.left() : f.right());
  }

  // left: φ ∨ ψ, otherwise ψ ∨ φ
  int or_intro(int p, const Formula& other, bool left) {
    StepArgs a;
    a.formula = other;
    Formula f = left ? Formula::disj(at(p), other) : Formula::disj(other, at(p));
    return add(left ? "OrIntroL" : "OrIntroR", std::move(a), {p}, f);
  }

  int mp(int p, int imp) { return add("ModusPonens", {}, {p, imp}, at(imp).right()); }

  int iff(int p, bool forward) {
    const Formula& f = at(p);
    return add(forward ? "IffToImpL" : "IffToImpR", {}, {p},
               forward ? Formula::implies(f.left(), f.right()) : Formula::implies(f.right(), f.left()));
  }

  int contrapose(int imp, int neg) {
    return add("Contrapose", {}, {imp, neg}, Formula::negation(at(imp).left()));
  }

  int neg_or(int p, int q) {
    return add("NegOrIntro", {}, {p, q}, Formula::negation(Formula::disj(at(p).body(), at(q).body())));
  }

  int exists_intro(int p, const Formula& f, const Term& w) {
    StepArgs a;
    a.var = f.var();
    a.terms = {w};
    return add("ExistsIntro", std::move(a), {p}, f);
  }

  std::string fresh(const Formula& ctx) {
    std::set<std::string> avoid = all_vars(ctx);
    return fresh_var(avoid);
  }

  // From a proof of ctx(from), a proof of ctx(to).
  int replace(int p, const Term& from, const Term& to, const std::function<Formula(const Term&)>& ctx) {
    if (from == to) return p;
    int e = eq(from, to);
    std::string z = fresh(ctx(Term::empty()));
    StepArgs a;
    a.var = z;
    a.formula = ctx(Term::var(z));
    return add("Subst", std::move(a), {e, p}, ctx(to));
  }

  [[noreturn]] void refuse(const Formula& f) {
    throw ProofRefused(ProofRefused::Reason::False, "not true: " + to_string(f));
  }

  bool truth(const Formula& f) { return eval(f, th_, {}, budget_).is_true(); }

  // -- equalities

  // biteral(u)∘biteral(v) = biteral(uv)
  int join(const BitString& u, const BitString& v) {
    Term bu = biteral(u);
    if (v.empty()) return sym(elim(ax(1, {bu}), false));
    BitString w = v.slice(0, v.size() - 1);
    Term c = bit(v[v.size() - 1]);
    int assoc = sym(ax(2, {bu, biteral(w), c}));
    return trans(assoc, cong(join(u, w), c, false));
  }

  // -- inequalities

  // e ≠ biteral(v) for nonempty v, from B1, B2 and B4
  int empty_neq(const BitString& v) {
    Term b = biteral(v.slice(0, v.size() - 1));
    char c = v[v.size() - 1];
    Term d = bit(c == '0' ? '1' : '0');
    Term bc = cat(b, bit(c));
    Term ed = cat(Term::empty(), d);
    int n = c == '0' ? ax(4, {cat(d, b), Term::empty()}) : sym(ax(4, {Term::empty(), cat(d, b)}));
    StepArgs a1;
    a1.var = "z";
    a1.formula = Formula::negation(Formula::eq(Term::var("z"), ed));
    int n2 = add("Subst", std::move(a1), {ax(2, {d, b, bit(c)}), n},
                 Formula::negation(Formula::eq(cat(d, bc), ed)));
    int one = ax(1, {d});
    int de = trans(sym(elim(one, false)), elim(one, true));
    StepArgs a2;
    a2.var = "z";
    a2.formula = Formula::eq(cat(d, Term::var("z")), ed);
    return add("Distinguish", std::move(a2), {de, n2}, Formula::negation(Formula::eq(Term::empty(), bc)));
  }

  // biteral(u) ≠ biteral(v) for u ≠ v
  int neq_bits(const BitString& u, const BitString& v) {
    if (u.empty()) return empty_neq(v);
    if (v.empty()) return sym(empty_neq(u));
    BitString a = u.slice(0, u.size() - 1), b = v.slice(0, v.size() - 1);
    char c = u[u.size() - 1], d = v[v.size() - 1];
    if (c == d) return elim(mp(neq_bits(a, b), ax(3, {biteral(a), biteral(b)})), c == '0');
    if (c == '0') return ax(4, {biteral(a), biteral(b)});
    return sym(ax(4, {biteral(b), biteral(a)}));
  }

  // -- substring (B)

  struct Split {
    Term first, middle, last, whole;
  };
  static Split split(const BitString& v) {
    Term first = bit(v[0]), last = bit(v[v.size() - 1]);
    Term middle = biteral(v.slice(1, v.size() - 2));
    return {first, middle, last, cat(cat(first, middle), last)};
  }
  static int cover_axiom(const BitString& v) { return 8 + 2 * (v[0] - '0') + (v[v.size() - 1] - '0'); }

  int rel_b(const BitString& u, const BitString& v) {
    Term bu = biteral(u);
    auto into = [&](const Term& z) { return Formula::rel(bu, z); };
    if (v.empty()) return mp(refl(Term::empty()), iff(ax(5, {bu}), false));
    if (v.size() == 1) {
      Term c = bit(v[0]);
      int inst = ax(v[0] == '0' ? 6 : 7, {bu});
      Formula d1 = Formula::eq(bu, Term::empty()), d2 = Formula::eq(bu, c);
      int p = u.empty() ? or_intro(refl(bu), d2, true) : or_intro(eq(bu, c), d1, false);
      return replace(mp(p, iff(inst, false)), c, biteral(v), into);
    }
    Split s = split(v);
    int inst = ax(cover_axiom(v), {bu, s.middle});
    Formula d1 = Formula::eq(bu, s.whole);
    Formula d2 = Formula::rel(bu, cat(s.first, s.middle));
    Formula d3 = Formula::rel(bu, cat(s.middle, s.last));
    int p;
    BitString head = v.slice(0, v.size() - 1), tail = v.slice(1);
    if (u == v) {
      p = or_intro(or_intro(eq(bu, s.whole), d2, true), d3, true);
    } else if (is_substring(u, head)) {
      int q = replace(rel_b(u, head), biteral(head), cat(s.first, s.middle), into);
      p = or_intro(or_intro(q, d1, false), d3, true);
    } else {
      p = or_intro(rel_b(u, tail), Formula::disj(d1, d2), false);
    }
    return replace(mp(p, iff(inst, false)), s.whole, biteral(v), into);
  }

  int nrel_b(const BitString& u, const BitString& v) {
    Term bu = biteral(u);
    auto into = [&](const Term& z) { return Formula::negation(Formula::rel(bu, z)); };
    auto noteq = [&](const Term& z) { return Formula::negation(Formula::eq(bu, z)); };
    if (v.empty()) return contrapose(iff(ax(5, {bu}), true), neq_bits(u, v));
    if (v.size() == 1) {
      Term c = bit(v[0]);
      int inst = ax(v[0] == '0' ? 6 : 7, {bu});
      int n2 = replace(neq_bits(u, v), biteral(v), c, noteq);
      int n = neg_or(neq_bits(u, BitString()), n2);
      return replace(contrapose(iff(inst, true), n), c, biteral(v), into);
    }
    Split s = split(v);
    int inst = ax(cover_axiom(v), {bu, s.middle});
    BitString head = v.slice(0, v.size() - 1), tail = v.slice(1);
    int n1 = replace(neq_bits(u, v), biteral(v), s.whole, noteq);
    int n2 = replace(nrel_b(u, head), biteral(head), cat(s.first, s.middle), into);
    int n3 = nrel_b(u, tail);
    int n = neg_or(neg_or(n1, n2), n3);
    return replace(contrapose(iff(inst, true), n), s.whole, biteral(v), into);
  }

  // -- prefix (D)

  int rel_d(const BitString& u, const BitString& v) {
    Term bu = biteral(u);
    if (v.empty()) return mp(refl(Term::empty()), iff(ax(5, {bu}), false));
    BitString w = v.slice(0, v.size() - 1);
    int inst = ax(v[v.size() - 1] == '0' ? 6 : 7, {bu, biteral(w)});
    Formula d1 = Formula::eq(bu, biteral(v)), d2 = Formula::rel(bu, biteral(w));
    int p = u == v ? or_intro(refl(bu), d2, true) : or_intro(rel_d(u, w), d1, false);
    return mp(p, iff(inst, false));
  }

  int nrel_d(const BitString& u, const BitString& v) {
    Term bu = biteral(u);
    if (v.empty()) return contrapose(iff(ax(5, {bu}), true), neq_bits(u, v));
    BitString w = v.slice(0, v.size() - 1);
    int inst = ax(v[v.size() - 1] == '0' ? 6 : 7, {bu, biteral(w)});
    return contrapose(iff(inst, true), neg_or(neq_bits(u, v), nrel_d(u, w)));
  }

  // -- bounded universal: (∀x ⊑ biteral(v)) φ

  int bounded_cover(int index, std::vector<Term> y, std::vector<int> premises, const Formula& conclusion) {
    StepArgs a;
    a.axiom = AxiomRef{th_, index};
    a.terms = std::move(y);
    return add("BoundedCover", std::move(a), std::move(premises), conclusion);
  }

  int cover(const std::string& x, const Formula& body, const BitString& v) {
    auto all_below = [&](const Term& t) { return Formula::bounded_forall(x, t, body); };
    if (auto id = b_.find(all_below(biteral(v)))) return *id;
    auto inst = [&](const Term& t) { return sentence(substitute(body, x, t)); };
    int p;
    if (v.empty()) {
      p = bounded_cover(5, {}, {inst(Term::empty())}, all_below(Term::empty()));
    } else if (th_ == Structure::D) {
      BitString w = v.slice(0, v.size() - 1);
      int below_w = cover(x, body, w);
      p = bounded_cover(v[v.size() - 1] == '0' ? 6 : 7, {biteral(w)}, {below_w, inst(biteral(v))},
                        all_below(biteral(v)));
    } else if (v.size() == 1) {
      Term c = bit(v[0]);
      int q = bounded_cover(v[0] == '0' ? 6 : 7, {}, {inst(Term::empty()), inst(c)}, all_below(c));
      p = replace(q, c, biteral(v), all_below);
    } else {
      Split s = split(v);
      BitString head = v.slice(0, v.size() - 1), tail = v.slice(1);
      int h = replace(cover(x, body, head), biteral(head), cat(s.first, s.middle), all_below);
      int t = cover(x, body, tail);
      int q = bounded_cover(cover_axiom(v), {s.middle}, {h, t, inst(s.whole)}, all_below(s.whole));
      p = replace(q, s.whole, biteral(v), all_below);
    }
    return p;
  }

  ProofBuilder& b_;
  Structure th_;
  std::size_t budget_;
};

void require_closed_literal(const Formula& f) {
  if (!f.is_literal() || !is_sentence(f)) throw std::invalid_argument("not a variable-free literal");
}

}  // namespace

std::string AxiomRef::to_string() const {
  return (theory == Structure::B ? "B" : "D") + std::to_string(index);
}

AxiomRef AxiomRef::parse(const std::string& text) {
  if (text.size() < 2 || (text[0] != 'B' && text[0] != 'D'))
    throw std::invalid_argument("bad axiom reference '" + text + "'");
  Structure th = text[0] == 'B' ? Structure::B : Structure::D;
  int max = th == Structure::B ? 11 : 7;
  int i = 0;
  for (std::size_t k = 1; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9' || i > max) throw std::invalid_argument("bad axiom reference '" + text + "'");
    i = i * 10 + (text[k] - '0');
  }
  if (i < 1 || i > max) throw std::invalid_argument("bad axiom reference '" + text + "'");
  return {th, i};
}

Formula axiom(const AxiomRef& ref) {
  static const std::vector<Formula> b = [] {
    std::vector<Formula> v;
    for (const char* s : kAxiomsB) v.push_back(parse_formula(s));
    return v;
  }();
  static const std::vector<Formula> d = [] {
    std::vector<Formula> v;
    for (const char* s : kAxiomsD) v.push_back(parse_formula(s));
    return v;
  }();
  if (ref.index < 1) throw std::invalid_argument("bad axiom reference");
  if (ref.theory == Structure::D && ref.index > 4) {
    if (ref.index > 7) throw std::invalid_argument("bad axiom reference");
    return d[ref.index - 5];
  }
  if (ref.index > 11) throw std::invalid_argument("bad axiom reference");
  return b[ref.index - 1];
}

std::vector<AxiomRef> axioms(Structure theory) {
  std::vector<AxiomRef> out;
  for (int i = 1; i <= (theory == Structure::B ? 11 : 7); ++i) out.push_back({theory, i});
  return out;
}

Formula instantiate(const Formula& f, const std::vector<Term>& terms) {
  Formula g = f;
  for (const Term& t : terms) {
    if (!g.is(K::Forall)) throw std::invalid_argument("too many instantiation terms");
    g = substitute(g.body(), g.var(), t);
  }
  return g;
}

CheckResult check_proof(const Proof& p) {
  std::map<int, Formula> proved;
  int last = 0;
  for (const ProofStep& s : p.steps) {
    if (s.id <= last) return CheckResult::failure(s.id, "bad step id");
    last = s.id;
    std::vector<Formula> prem;
    for (int id : s.premises) {
      auto it = proved.find(id);
      if (it == proved.end()) return CheckResult::failure(s.id, "bad premise");
      prem.push_back(it->second);
    }
    try {
      check_step(p.theory, s, prem);
    } catch (const StepError& e) {
      return CheckResult::failure(s.id, e.reason);
    } catch (const std::invalid_argument& e) {
      return CheckResult::failure(s.id, std::string("wrong substitution: ") + e.what());
    }
    proved.emplace(s.id, s.formula);
  }
  if (p.steps.empty() || !same(p.steps.back().formula, p.goal))
    return CheckResult::failure(p.steps.empty() ? 0 : p.steps.back().id, "goal mismatch");
  return {};
}

int ProofBuilder::add(std::string rule, StepArgs args, std::vector<int> premises, Formula formula) {
  std::string k = key(formula);
  if (auto it = index_.find(k); it != index_.end()) return it->second;
  int id = static_cast<int>(steps_.size()) + 1;
  steps_.push_back({id, std::move(rule), std::move(args), std::move(premises), std::move(formula)});
  index_.emplace(std::move(k), id);
  return id;
}

std::optional<int> ProofBuilder::find(const Formula& f) const {
  if (auto it = index_.find(key(f)); it != index_.end()) return it->second;
  return std::nullopt;
}

Proof ProofBuilder::finish(const Formula& goal) const {
  Proof p{theory_, goal, steps_};
  // an earlier step may already carry the goal; restate it at the end
  if (auto id = find(goal); id && *id != static_cast<int>(steps_.size())) {
    int n = static_cast<int>(steps_.size());
    p.steps.push_back({n + 1, "AndIntro", {}, {*id, *id}, Formula::conj(goal, goal)});
    p.steps.push_back({n + 2, "AndElimL", {}, {n + 1}, goal});
  }
  return p;
}

nlohmann::json to_json(const Proof& p) {
  nlohmann::json steps = nlohmann::json::array();
  for (const ProofStep& s : p.steps) {
    nlohmann::json args = nlohmann::json::object();
    if (s.args.axiom) args["axiom"] = s.args.axiom->to_string();
    if (!s.args.terms.empty()) {
      args["terms"] = nlohmann::json::array();
      for (const Term& t : s.args.terms) args["terms"].push_back(to_string(t));
    }
    if (s.args.var) args["var"] = *s.args.var;
    if (s.args.formula) args["formula"] = to_string(*s.args.formula);
    steps.push_back({{"id", s.id},
                     {"rule", s.rule},
                     {"args", args},
                     {"premises", s.premises},
                     {"formula", to_string(s.formula)}});
  }
  return {{"theory", to_string(p.theory)}, {"goal", to_string(p.goal)}, {"steps", steps}};
}

Proof proof_from_json(const nlohmann::json& j) {
  try {
    Proof p;
    p.theory = parse_structure(j.at("theory").get<std::string>());
    p.goal = parse_formula(j.at("goal").get<std::string>());
    for (const auto& s : j.at("steps")) {
      ProofStep step;
      step.id = s.at("id").get<int>();
      step.rule = s.at("rule").get<std::string>();
      step.premises = s.value("premises", std::vector<int>{});
      step.formula = parse_formula(s.at("formula").get<std::string>());
      const nlohmann::json args = s.value("args", nlohmann::json::object());
      if (args.contains("axiom")) step.args.axiom = AxiomRef::parse(args["axiom"].get<std::string>());
      if (args.contains("terms"))
        for (const auto& t : args["terms"]) step.args.terms.push_back(parse_term(t.get<std::string>()));
      if (args.contains("var")) step.args.var = args["var"].get<std::string>();
      if (args.contains("formula")) step.args.formula = parse_formula(args["formula"].get<std::string>());
      p.steps.push_back(std::move(step));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed proof: ") + e.what());
  }
}

Proof prove_term_eq_biteral(const Term& t, Structure theory) {
  if (!t.is_closed()) throw std::invalid_argument("term has variables");
  ProofBuilder b(theory);
  Synth(b, 0).term_eq(t);
  return b.finish(Formula::eq(t, biteral(eval_term(t, {}))));
}

Proof prove_atomic(const Formula& literal, Structure theory) {
  require_closed_literal(literal);
  ProofBuilder b(theory);
  Synth(b, 0).literal(literal);
  return b.finish(literal);
}

Proof prove_sigma(const Formula& f, Structure theory, std::size_t budget) {
  if (!classify(f).sigma) throw std::invalid_argument("not a Σ-formula");
  if (!is_sentence(f)) throw std::invalid_argument("not a sentence");
  Verdict v = eval(f, theory, {}, budget);
  if (v.is_false()) throw ProofRefused(ProofRefused::Reason::False, "false in " + to_string(theory));
  if (v.is_unknown())
    throw ProofRefused(ProofRefused::Reason::Unknown, "unknown within budget " + std::to_string(budget));
  ProofBuilder b(theory);
  Synth(b, budget).sentence(f);
  return b.finish(f);
}

}  // namespace concat
