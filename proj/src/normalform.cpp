#include "concat/normalform.hpp"

#include <cstdint>
#include <stdexcept>

namespace concat {

namespace {

using K = Formula::Kind;
using PK = PrefixEntry::Kind;

Term zero() { return Term::zero(); }
Term one() { return Term::one(); }
Term var(const std::string& n) { return Term::var(n); }
Term cat(std::initializer_list<Term> parts) { return concat_all(std::vector<Term>(parts)); }

PrefixEntry exists(const std::string& x) { return {PK::Exists, x, std::nullopt}; }

PrenexNormalForm equation(const Formula& eq) {
  if (!eq.is(K::Eq)) throw std::invalid_argument("expected an equation");
  return {{}, eq.lhs(), eq.rhs()};
}

Formula matrix(const PrenexNormalForm& p) { return Formula::eq(p.lhs, p.rhs); }

PrenexNormalForm with_prefix(std::vector<PrefixEntry> front, PrenexNormalForm p) {
  front.insert(front.end(), p.prefix.begin(), p.prefix.end());
  p.prefix = std::move(front);
  return p;
}

PrenexNormalForm conj(const PrenexNormalForm& a, const PrenexNormalForm& b) {
  PrenexNormalForm out;
  out.prefix = a.prefix;
  out.prefix.insert(out.prefix.end(), b.prefix.begin(), b.prefix.end());
  Formula m = merge_conj(matrix(a), matrix(b));
  out.lhs = m.lhs();
  out.rhs = m.rhs();
  return out;
}

PrenexNormalForm disj(const PrenexNormalForm& a, const PrenexNormalForm& b, FreshNames& names) {
  PrenexNormalForm joined = or_eq_to_eq(matrix(a), matrix(b), names);
  std::vector<PrefixEntry> front = a.prefix;
  front.insert(front.end(), b.prefix.begin(), b.prefix.end());
  return with_prefix(std::move(front), std::move(joined));
}

template <class Combine>
PrenexNormalForm balanced(const std::vector<PrenexNormalForm>& parts, std::size_t lo, std::size_t hi,
                          Combine combine) {
  if (hi - lo == 1) return parts[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  PrenexNormalForm l = balanced(parts, lo, mid, combine);
  PrenexNormalForm r = balanced(parts, mid, hi, combine);
  return combine(l, r);
}

PrenexNormalForm conj_all(const std::vector<PrenexNormalForm>& parts) {
  return balanced(parts, 0, parts.size(), [](const auto& a, const auto& b) { return conj(a, b); });
}

PrenexNormalForm disj_all(const std::vector<PrenexNormalForm>& parts, FreshNames& names) {
  return balanced(parts, 0, parts.size(), [&](const auto& a, const auto& b) { return disj(a, b, names); });
}

FreshNames names_avoiding(std::initializer_list<Term> terms) {
  std::set<std::string> used;
  for (const auto& t : terms) t.collect_vars(used);
  return FreshNames(std::move(used));
}

}  // namespace

Formula PrenexNormalForm::to_formula() const {
  Formula f = Formula::eq(lhs, rhs);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    switch (it->kind) {
      case PK::Exists: f = Formula::exists(it->var, f); break;
      case PK::BoundedExists: f = Formula::bounded_exists(it->var, *it->bound, f); break;
      case PK::BoundedForall: f = Formula::bounded_forall(it->var, *it->bound, f); break;
    }
  }
  return f;
}

SigmaClass PrenexNormalForm::shape() const {
  SigmaClass c;
  c.sigma = true;
  for (const auto& e : prefix) {
    if (e.kind == PK::Exists) ++c.n;
    if (e.kind == PK::BoundedExists) ++c.m;
    if (e.kind == PK::BoundedForall) ++c.k;
  }
  return c;
}

std::size_t PrenexNormalForm::size() const {
  std::size_t a = lhs.symbols(), b = rhs.symbols();
  return a > SIZE_MAX - b ? SIZE_MAX : a + b;
}

// ---------------------------------------------------------------- building blocks

Formula merge_conj(const Formula& e1, const Formula& e2) {
  if (!e1.is(K::Eq) || !e2.is(K::Eq)) throw std::invalid_argument("merge_conj: expected two equations");
  const Term &s1 = e1.lhs(), &t1 = e1.rhs(), &s2 = e2.lhs(), &t2 = e2.rhs();
  return Formula::eq(cat({s1, zero(), s2, s1, one(), s2}), cat({t1, zero(), t2, t1, one(), t2}));
}

Formula merge_conj_all(const std::vector<Formula>& eqs) {
  if (eqs.empty()) throw std::invalid_argument("merge_conj_all: empty list");
  std::vector<PrenexNormalForm> parts;
  for (const auto& e : eqs) parts.push_back(equation(e));
  return matrix(conj_all(parts));
}

Formula zero_gadget(const Term& u, const Term& w, FreshNames& names) {
  std::string y1 = names.next(), y2 = names.next(), y3 = names.next(), y4 = names.next();
  Term Y1 = var(y1), Y2 = var(y2), Y3 = var(y3), Y4 = var(y4);
  Formula body = conj_all({Formula::eq(cat({Y1, Y2}), zero()), Formula::eq(cat({Y3, Y4}), one()),
                           Formula::eq(cat({u, Y1, w, Y2}), cat({w, Y2, u, Y1})),
                           Formula::eq(cat({u, Y3, w, Y4}), cat({w, Y4, u, Y3}))});
  return Formula::exists(y1, Formula::exists(y2, Formula::exists(y3, Formula::exists(y4, body))));
}

PrenexNormalForm or_prefix_to_eq(const Term& s1, const Term& t1, const Term& s2, const Term& t2, FreshNames& names) {
  std::vector<std::string> x, y;
  for (int i = 0; i < 6; ++i) x.push_back(names.next());
  for (int i = 0; i < 4; ++i) y.push_back(names.next());
  auto X = [&](int i) { return var(x[static_cast<std::size_t>(i - 1)]); };
  auto Y = [&](int i) { return var(y[static_cast<std::size_t>(i - 1)]); };
  std::vector<Formula> eqs = {
      Formula::eq(s1, cat({X(1), X(2)})),
      Formula::eq(t1, cat({X(1), X(3)})),
      Formula::eq(s2, cat({X(4), X(5)})),
      Formula::eq(t2, cat({X(4), X(6)})),
      // x2 = e ∨ x5 = e, as x2 x5 = x5 x2 ∧ ψ(x2, x5)
      Formula::eq(cat({X(2), X(5)}), cat({X(5), X(2)})),
      Formula::eq(cat({Y(1), Y(2)}), zero()),
      Formula::eq(cat({Y(3), Y(4)}), one()),
      Formula::eq(cat({X(2), Y(1), X(5), Y(2)}), cat({X(5), Y(2), X(2), Y(1)})),
      Formula::eq(cat({X(2), Y(3), X(5), Y(4)}), cat({X(5), Y(4), X(2), Y(3)})),
  };
  PrenexNormalForm out = equation(merge_conj_all(eqs));
  for (const auto& v : x) out.prefix.push_back(exists(v));
  for (const auto& v : y) out.prefix.push_back(exists(v));
  return out;
}

PrenexNormalForm or_eq_to_eq(const Formula& e1, const Formula& e2, FreshNames& names) {
  if (!e1.is(K::Eq) || !e2.is(K::Eq)) throw std::invalid_argument("or_eq_to_eq: expected two equations");
  const Term &s1 = e1.lhs(), &t1 = e1.rhs(), &s2 = e2.lhs(), &t2 = e2.rhs();
  // s1 = t1 ∨ s2 = t2 as a conjunction of four prefix disjunctions
  return conj_all({or_prefix_to_eq(s1, t1, s2, t2, names), or_prefix_to_eq(s1, t1, t2, s2, names),
                   or_prefix_to_eq(t1, s1, s2, t2, names), or_prefix_to_eq(t1, s1, t2, s2, names)});
}

PrenexNormalForm neq_to_eq(const Formula& e, FreshNames& names) {
  if (!e.is(K::Eq)) throw std::invalid_argument("neq_to_eq: expected an equation");
  const Term &s = e.lhs(), &t = e.rhs();
  std::string x = names.next(), y = names.next(), z = names.next();
  Term X = var(x), Y = var(y), Z = var(z);
  std::vector<PrenexNormalForm> cases = {
      equation(Formula::eq(s, cat({t, zero(), X}))),
      equation(Formula::eq(s, cat({t, one(), X}))),
      equation(Formula::eq(t, cat({s, zero(), X}))),
      equation(Formula::eq(t, cat({s, one(), X}))),
      equation(merge_conj(Formula::eq(s, cat({X, one(), Y})), Formula::eq(t, cat({X, zero(), Z})))),
      equation(merge_conj(Formula::eq(s, cat({X, zero(), Y})), Formula::eq(t, cat({X, one(), Z})))),
  };
  return with_prefix({exists(x), exists(y), exists(z)}, disj_all(cases, names));
}

PrenexNormalForm prefix_to_eq(const Term& s, const Term& t, FreshNames& names) {
  std::string v = names.next();
  return {{exists(v)}, cat({s, var(v)}), t};
}

namespace {

// ∃xyz [(t = x0y ∧ s = x1z) ∨ (t = x1y ∧ s = x0z)]
PrenexNormalForm first_difference(const Term& t, const Term& s, FreshNames& names) {
  std::string x = names.next(), y = names.next(), z = names.next();
  Term X = var(x), Y = var(y), Z = var(z);
  Formula a = merge_conj(Formula::eq(t, cat({X, zero(), Y})), Formula::eq(s, cat({X, one(), Z})));
  Formula b = merge_conj(Formula::eq(t, cat({X, one(), Y})), Formula::eq(s, cat({X, zero(), Z})));
  return with_prefix({exists(x), exists(y), exists(z)}, or_eq_to_eq(a, b, names));
}

}  // namespace

PrenexNormalForm nonprefix_to_eq(const Term& s, const Term& t, FreshNames& names) {
  // (t ⪯ s ∧ t ≠ s) ∨ first difference
  PrenexNormalForm proper = conj(prefix_to_eq(t, s, names), neq_to_eq(Formula::eq(t, s), names));
  return disj(proper, first_difference(t, s, names), names);
}

PrenexNormalForm substr_to_eq(const Term& s, const Term& t, FreshNames& names) {
  std::string v1 = names.next(), v2 = names.next();
  return {{exists(v1), exists(v2)}, t, cat({var(v1), s, var(v2)})};
}

PrenexNormalForm nonsubstr_to_formula(const Term& s, const Term& t, FreshNames& names) {
  std::string v = names.next();
  Term vs = cat({var(v), s});
  // v s ⋠ t with ⪯ spelled out by equations: t is a proper prefix of v s, or they differ
  std::string x = names.next();
  PrenexNormalForm proper =
      with_prefix({exists(x)}, conj(equation(Formula::eq(cat({t, var(x)}), vs)),
                                    neq_to_eq(Formula::eq(var(x), Term::empty()), names)));
  PrenexNormalForm alpha = disj(proper, first_difference(t, vs, names), names);
  return with_prefix({{PK::BoundedForall, v, t}}, std::move(alpha));
}

PrenexNormalForm or_prefix_to_eq(const Term& s1, const Term& t1, const Term& s2, const Term& t2) {
  FreshNames names = names_avoiding({s1, t1, s2, t2});
  return or_prefix_to_eq(s1, t1, s2, t2, names);
}

PrenexNormalForm or_eq_to_eq(const Formula& e1, const Formula& e2) {
  FreshNames names(all_vars(Formula::conj(e1, e2)));
  return or_eq_to_eq(e1, e2, names);
}

PrenexNormalForm neq_to_eq(const Formula& e) {
  FreshNames names(all_vars(e));
  return neq_to_eq(e, names);
}

PrenexNormalForm prefix_to_eq(const Term& s, const Term& t) {
  FreshNames names = names_avoiding({s, t});
  return prefix_to_eq(s, t, names);
}

PrenexNormalForm nonprefix_to_eq(const Term& s, const Term& t) {
  FreshNames names = names_avoiding({s, t});
  return nonprefix_to_eq(s, t, names);
}

PrenexNormalForm substr_to_eq(const Term& s, const Term& t) {
  FreshNames names = names_avoiding({s, t});
  return substr_to_eq(s, t, names);
}

PrenexNormalForm nonsubstr_to_formula(const Term& s, const Term& t) {
  FreshNames names = names_avoiding({s, t});
  return nonsubstr_to_formula(s, t, names);
}

// ---------------------------------------------------------------- commutations

Formula commute_forall_exists(const Formula& f, FreshNames& names) {
  if (!f.is(K::BoundedForall) || !f.body().is(K::Exists))
    throw std::invalid_argument("commute_forall_exists: expected (A x <: t)(E y)a");
  const Formula& inner = f.body();
  std::string z = names.next();
  return Formula::exists(
      z, Formula::bounded_forall(f.var(), f.bound(), Formula::bounded_exists(inner.var(), var(z), inner.body())));
}

Formula commute_bounded_exists(const Formula& f) {
  if (!f.is(K::BoundedExists) || !f.body().is(K::Exists))
    throw std::invalid_argument("commute_bounded_exists: expected (E x <: t)(E y)a");
  const Formula& inner = f.body();
  return Formula::exists(inner.var(), Formula::bounded_exists(f.var(), f.bound(), inner.body()));
}

Formula merge_exists(const Formula& f, FreshNames& names) {
  if (!f.is(K::Exists) || !f.body().is(K::Exists)) throw std::invalid_argument("merge_exists: expected (E x)(E y)a");
  const Formula& inner = f.body();
  std::string z = names.next();
  return Formula::exists(
      z, Formula::bounded_exists(f.var(), var(z), Formula::bounded_exists(inner.var(), var(z), inner.body())));
}

// ---------------------------------------------------------------- normal forms

namespace {

void chain(const Formula& f, K kind, std::vector<Formula>& out) {
  if (f.is(kind)) {
    chain(f.left(), kind, out);
    chain(f.right(), kind, out);
  } else {
    out.push_back(f);
  }
}

PrenexNormalForm nf(const Formula& f, Structure s, FreshNames& names) {
  switch (f.kind()) {
    case K::Eq: return equation(f);
    case K::Rel:
      return s == Structure::D ? prefix_to_eq(f.lhs(), f.rhs(), names) : substr_to_eq(f.lhs(), f.rhs(), names);
    case K::Not: {
      const Formula& a = f.body();
      if (a.is(K::Eq)) return neq_to_eq(a, names);
      if (a.is(K::Rel))
        return s == Structure::D ? nonprefix_to_eq(a.lhs(), a.rhs(), names)
                                 : nonsubstr_to_formula(a.lhs(), a.rhs(), names);
      break;
    }
    case K::And:
    case K::Or: {
      std::vector<Formula> parts;
      chain(f, f.kind(), parts);
      std::vector<PrenexNormalForm> done;
      for (const auto& p : parts) done.push_back(nf(p, s, names));
      return f.is(K::And) ? conj_all(done) : disj_all(done, names);
    }
    case K::Exists: return with_prefix({exists(f.var())}, nf(f.body(), s, names));
    case K::BoundedExists: {
      if (s == Structure::B) return with_prefix({{PK::BoundedExists, f.var(), f.bound()}}, nf(f.body(), s, names));
      // (∃x ⪯ t)α  as  ∃x ∃v [x v = t ∧ α]
      PrenexNormalForm guard = prefix_to_eq(var(f.var()), f.bound(), names);
      return with_prefix({exists(f.var())}, conj(guard, nf(f.body(), s, names)));
    }
    case K::BoundedForall:
      return with_prefix({{PK::BoundedForall, f.var(), f.bound()}}, nf(f.body(), s, names));
    default: break;
  }
  throw std::invalid_argument("normalize: not a Σ-formula");
}

PrenexNormalForm prepare(const Formula& f, Structure s) {
  if (!classify(f).sigma) throw std::invalid_argument("normalize: not a Σ-formula");
  FreshNames names(all_vars(f));
  Formula g = rename_apart(f, names);
  PrenexNormalForm out = nf(g, s, names);
  if (s == Structure::D) return out;

  // move unbounded existentials to the front, merging them into one
  auto& p = out.prefix;
  for (;;) {
    std::size_t i = 1;
    while (i < p.size() && p[i].kind != PK::Exists) ++i;
    if (i >= p.size()) break;
    PrefixEntry before = p[i - 1], y = p[i];
    auto at = p.begin() + static_cast<std::ptrdiff_t>(i - 1);
    if (before.kind == PK::BoundedExists) {
      std::swap(p[i - 1], p[i]);
      continue;
    }
    std::string z = names.next();
    p.erase(at, at + 2);
    std::vector<PrefixEntry> repl;
    if (before.kind == PK::BoundedForall) {
      repl = {exists(z), before, {PK::BoundedExists, y.var, var(z)}};
    } else {
      repl = {exists(z), {PK::BoundedExists, before.var, var(z)}, {PK::BoundedExists, y.var, var(z)}};
    }
    p.insert(p.begin() + static_cast<std::ptrdiff_t>(i - 1), repl.begin(), repl.end());
  }
  return out;
}

}  // namespace

PrenexNormalForm normalize_D(const Formula& f) { return prepare(f, Structure::D); }

PrenexNormalForm normalize_B(const Formula& f) { return prepare(f, Structure::B); }

PrenexNormalForm normalize(const Formula& f, Structure s) { return prepare(f, s); }

}  // namespace concat
