#include "concat/logic.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <functional>
#include <stdexcept>

namespace concat {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------- Term

Term Term::empty() {
  static const Term t(std::make_shared<const Node>(Node{Kind::Empty, {}, nullptr, nullptr, true, 11, 0, nullptr}));
  return t;
}

Term Term::zero() {
  static const Term t(std::make_shared<const Node>(Node{Kind::Zero, {}, nullptr, nullptr, true, 13, 1, nullptr}));
  return t;
}

Term Term::one() {
  static const Term t(std::make_shared<const Node>(Node{Kind::One, {}, nullptr, nullptr, true, 17, 1, nullptr}));
  return t;
}

Term Term::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("Term::var: empty variable name");
  std::size_t h = mix(19, std::hash<std::string>{}(name));
  auto vars = std::make_shared<const std::vector<std::string>>(1, name);
  return Term(
      std::make_shared<const Node>(Node{Kind::Var, std::move(name), nullptr, nullptr, false, h, 1, std::move(vars)}));
}

Term Term::concat(Term left, Term right) {
  bool closed = left.is_closed() && right.is_closed();
  std::size_t h = mix(mix(23, left.node_->hash), right.node_->hash);
  std::size_t a = left.symbols(), b = right.symbols();
  std::size_t n = a > SIZE_MAX - b ? SIZE_MAX : a + b;
  std::shared_ptr<const std::vector<std::string>> vars;
  const auto& lv = left.node_->vars;
  const auto& rv = right.node_->vars;
  if (!lv || (rv && *lv == *rv)) {
    vars = rv;
  } else if (!rv) {
    vars = lv;
  } else {
    auto merged = std::make_shared<std::vector<std::string>>();
    std::set_union(lv->begin(), lv->end(), rv->begin(), rv->end(), std::back_inserter(*merged));
    vars = std::move(merged);
  }
  return Term(std::make_shared<const Node>(Node{Kind::Concat,
                                                {},
                                                std::make_shared<const Term>(std::move(left)),
                                                std::make_shared<const Term>(std::move(right)),
                                                closed,
                                                h,
                                                n,
                                                std::move(vars)}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var:
      return a.name() == b.name();
    case Term::Kind::Concat:
      return a.left() == b.left() && a.right() == b.right();
    default:
      return true;
  }
}

bool Term::contains_var(const std::string& name) const {
  if (is_closed()) return false;
  return std::binary_search(node_->vars->begin(), node_->vars->end(), name);
}

void Term::collect_vars(std::set<std::string>& out) const {
  if (is_closed()) return;
  out.insert(node_->vars->begin(), node_->vars->end());
}

Term concat_all(const std::vector<Term>& parts) {
  if (parts.empty()) return Term::empty();
  Term acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Term::concat(acc, parts[i]);
  return acc;
}

Term biteral(const BitString& b) {
  Term t = Term::empty();
  for (std::size_t i = 0; i < b.size(); ++i) t = Term::concat(t, b[i] == '0' ? Term::zero() : Term::one());
  return t;
}

std::optional<BitString> as_biteral(const Term& t) {
  std::string bits;
  const Term* cur = &t;
  while (cur->is(Term::Kind::Concat)) {
    const Term& r = cur->right();
    if (r.is(Term::Kind::Zero))
      bits.push_back('0');
    else if (r.is(Term::Kind::One))
      bits.push_back('1');
    else
      return std::nullopt;
    cur = &cur->left();
  }
  if (!cur->is(Term::Kind::Empty)) return std::nullopt;
  return BitString(std::string(bits.rbegin(), bits.rend()));
}

// ---------------------------------------------------------------- Formula

bool Formula::is_quantifier() const {
  switch (kind()) {
    case Kind::Exists:
    case Kind::Forall:
    case Kind::BoundedExists:
    case Kind::BoundedForall:
      return true;
    default:
      return false;
  }
}

Formula Formula::make(Node n) {
  std::size_t h = mix(29, static_cast<std::size_t>(n.kind));
  if (!n.var.empty()) h = mix(h, std::hash<std::string>{}(n.var));
  if (n.lhs) h = mix(h, n.lhs->node_->hash);
  if (n.rhs) h = mix(h, n.rhs->node_->hash);
  if (n.left) h = mix(h, n.left->node_->hash);
  if (n.right) h = mix(h, n.right->node_->hash);
  n.hash = h;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::eq(Term lhs, Term rhs) {
  return make(Node{Kind::Eq, {}, std::make_shared<const Term>(std::move(lhs)),
                   std::make_shared<const Term>(std::move(rhs)), nullptr, nullptr});
}

Formula Formula::rel(Term lhs, Term rhs) {
  return make(Node{Kind::Rel, {}, std::make_shared<const Term>(std::move(lhs)),
                   std::make_shared<const Term>(std::move(rhs)), nullptr, nullptr});
}

Formula Formula::negation(Formula body) {
  return make(Node{Kind::Not, {}, nullptr, nullptr, std::make_shared<const Formula>(std::move(body)), nullptr});
}

#define CONCAT_BINARY(fn, K)                                                                     \
  Formula Formula::fn(Formula left, Formula right) {                                             \
    return make(Node{Kind::K, {}, nullptr, nullptr,                                              \
                     std::make_shared<const Formula>(std::move(left)),                          \
                     std::make_shared<const Formula>(std::move(right))});                       \
  }
CONCAT_BINARY(conj, And)
CONCAT_BINARY(disj, Or)
CONCAT_BINARY(implies, Implies)
CONCAT_BINARY(iff, Iff)
#undef CONCAT_BINARY

Formula Formula::exists(std::string var, Formula body) {
  if (var.empty()) throw std::invalid_argument("Formula::exists: empty variable name");
  return make(Node{Kind::Exists, std::move(var), nullptr, nullptr,
                   std::make_shared<const Formula>(std::move(body)), nullptr});
}

Formula Formula::forall(std::string var, Formula body) {
  if (var.empty()) throw std::invalid_argument("Formula::forall: empty variable name");
  return make(Node{Kind::Forall, std::move(var), nullptr, nullptr,
                   std::make_shared<const Formula>(std::move(body)), nullptr});
}

Formula Formula::bounded_exists(std::string var, Term bound, Formula body) {
  if (var.empty()) throw std::invalid_argument("Formula::bounded_exists: empty variable name");
  if (bound.contains_var(var))
    throw std::invalid_argument("bounded quantifier: variable '" + var + "' occurs in its bound");
  return make(Node{Kind::BoundedExists, std::move(var), std::make_shared<const Term>(std::move(bound)), nullptr,
                   std::make_shared<const Formula>(std::move(body)), nullptr});
}

Formula Formula::bounded_forall(std::string var, Term bound, Formula body) {
  if (var.empty()) throw std::invalid_argument("Formula::bounded_forall: empty variable name");
  if (bound.contains_var(var))
    throw std::invalid_argument("bounded quantifier: variable '" + var + "' occurs in its bound");
  return make(Node{Kind::BoundedForall, std::move(var), std::make_shared<const Term>(std::move(bound)), nullptr,
                   std::make_shared<const Formula>(std::move(body)), nullptr});
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.kind() != b.kind()) return false;
  using K = Formula::Kind;
  switch (a.kind()) {
    case K::Eq:
    case K::Rel:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case K::Not:
      return a.body() == b.body();
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff:
      return a.left() == b.left() && a.right() == b.right();
    case K::Exists:
    case K::Forall:
      return a.var() == b.var() && a.body() == b.body();
    case K::BoundedExists:
    case K::BoundedForall:
      return a.var() == b.var() && a.bound() == b.bound() && a.body() == b.body();
  }
  return false;
}

Formula conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("conj_all: empty list");
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("disj_all: empty list");
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disj(acc, parts[i]);
  return acc;
}

// ---------------------------------------------------------------- variables

namespace {

void free_vars_into(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  using K = Formula::Kind;
  auto add_term = [&](const Term& t) {
    std::set<std::string> vs;
    t.collect_vars(vs);
    for (const auto& v : vs)
      if (!bound.count(v)) out.insert(v);
  };
  switch (f.kind()) {
    case K::Eq:
    case K::Rel:
      add_term(f.lhs());
      add_term(f.rhs());
      return;
    case K::Not:
      free_vars_into(f.body(), bound, out);
      return;
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff:
      free_vars_into(f.left(), bound, out);
      free_vars_into(f.right(), bound, out);
      return;
    case K::BoundedExists:
    case K::BoundedForall:
      add_term(f.bound());
      [[fallthrough]];
    case K::Exists:
    case K::Forall: {
      bool inserted = bound.insert(f.var()).second;
      free_vars_into(f.body(), bound, out);
      if (inserted) bound.erase(f.var());
      return;
    }
  }
}

void all_vars_into(const Formula& f, std::set<std::string>& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq:
    case K::Rel:
      f.lhs().collect_vars(out);
      f.rhs().collect_vars(out);
      return;
    case K::Not:
      all_vars_into(f.body(), out);
      return;
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff:
      all_vars_into(f.left(), out);
      all_vars_into(f.right(), out);
      return;
    case K::BoundedExists:
    case K::BoundedForall:
      f.bound().collect_vars(out);
      [[fallthrough]];
    case K::Exists:
    case K::Forall:
      out.insert(f.var());
      all_vars_into(f.body(), out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_into(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  all_vars_into(f, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

// ---------------------------------------------------------------- classification

std::string SigmaClass::to_string() const {
  if (!sigma) return "not-sigma";
  return "(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(k) + ")";
}

namespace {

bool classify_into(const Formula& f, SigmaClass& c) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq:
    case K::Rel:
      return true;
    case K::Not:
      // negation only directly on atoms; ~~atom is rejected
      return f.body().is_atom();
    case K::And:
    case K::Or:
      return classify_into(f.left(), c) && classify_into(f.right(), c);
    case K::Exists:
      ++c.n;
      return classify_into(f.body(), c);
    case K::BoundedExists:
      ++c.m;
      return classify_into(f.body(), c);
    case K::BoundedForall:
      ++c.k;
      return classify_into(f.body(), c);
    case K::Implies:
    case K::Iff:
    case K::Forall:
      return false;
  }
  return false;
}

}  // namespace

SigmaClass classify(const Formula& f) {
  SigmaClass c;
  if (!classify_into(f, c)) return SigmaClass::not_sigma();
  c.sigma = true;
  return c;
}

Formula expand_bounded(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq:
    case K::Rel:
      return f;
    case K::Not:
      return Formula::negation(expand_bounded(f.body()));
    case K::And:
      return Formula::conj(expand_bounded(f.left()), expand_bounded(f.right()));
    case K::Or:
      return Formula::disj(expand_bounded(f.left()), expand_bounded(f.right()));
    case K::Implies:
      return Formula::implies(expand_bounded(f.left()), expand_bounded(f.right()));
    case K::Iff:
      return Formula::iff(expand_bounded(f.left()), expand_bounded(f.right()));
    case K::Exists:
      return Formula::exists(f.var(), expand_bounded(f.body()));
    case K::Forall:
      return Formula::forall(f.var(), expand_bounded(f.body()));
    case K::BoundedExists:
      return Formula::exists(
          f.var(), Formula::conj(Formula::rel(Term::var(f.var()), f.bound()), expand_bounded(f.body())));
    case K::BoundedForall:
      return Formula::forall(
          f.var(), Formula::implies(Formula::rel(Term::var(f.var()), f.bound()), expand_bounded(f.body())));
  }
  return f;
}

// ---------------------------------------------------------------- substitution

std::string fresh_var(const std::set<std::string>& avoid) {
  for (std::size_t i = 1;; ++i) {
    std::string name = "v" + std::to_string(i);
    if (!avoid.count(name)) return name;
  }
}

std::string FreshNames::next() {
  for (;;) {
    std::string name = "v" + std::to_string(++counter_);
    if (reserved_.insert(name).second) return name;
  }
}

Term substitute(const Term& t, const std::string& x, const Term& s) {
  if (!t.contains_var(x)) return t;
  if (t.is(Term::Kind::Var)) return s;
  return Term::concat(substitute(t.left(), x, s), substitute(t.right(), x, s));
}

Formula substitute(const Formula& f, const std::string& x, const Term& s) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq:
      return Formula::eq(substitute(f.lhs(), x, s), substitute(f.rhs(), x, s));
    case K::Rel:
      return Formula::rel(substitute(f.lhs(), x, s), substitute(f.rhs(), x, s));
    case K::Not:
      return Formula::negation(substitute(f.body(), x, s));
    case K::And:
      return Formula::conj(substitute(f.left(), x, s), substitute(f.right(), x, s));
    case K::Or:
      return Formula::disj(substitute(f.left(), x, s), substitute(f.right(), x, s));
    case K::Implies:
      return Formula::implies(substitute(f.left(), x, s), substitute(f.right(), x, s));
    case K::Iff:
      return Formula::iff(substitute(f.left(), x, s), substitute(f.right(), x, s));
    case K::Exists:
    case K::Forall:
    case K::BoundedExists:
    case K::BoundedForall: {
      std::optional<Term> bound;
      if (f.is_bounded()) bound = substitute(f.bound(), x, s);
      std::string var = f.var();
      Formula body = f.body();
      if (var != x && free_vars(body).count(x) && s.contains_var(var)) {
        std::set<std::string> avoid = all_vars(body);
        s.collect_vars(avoid);
        avoid.insert(x);
        std::string renamed = fresh_var(avoid);
        body = substitute(body, var, Term::var(renamed));
        var = renamed;
      }
      if (var != x) body = substitute(body, x, s);
      switch (f.kind()) {
        case K::Exists:
          return Formula::exists(var, body);
        case K::Forall:
          return Formula::forall(var, body);
        case K::BoundedExists:
          return Formula::bounded_exists(var, *bound, body);
        default:
          return Formula::bounded_forall(var, *bound, body);
      }
    }
  }
  return f;
}

namespace {

Formula rename_apart_rec(const Formula& f, FreshNames& names, std::set<std::string>& seen) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq:
    case K::Rel:
      return f;
    case K::Not:
      return Formula::negation(rename_apart_rec(f.body(), names, seen));
    case K::And:
      return Formula::conj(rename_apart_rec(f.left(), names, seen), rename_apart_rec(f.right(), names, seen));
    case K::Or:
      return Formula::disj(rename_apart_rec(f.left(), names, seen), rename_apart_rec(f.right(), names, seen));
    case K::Implies:
      return Formula::implies(rename_apart_rec(f.left(), names, seen), rename_apart_rec(f.right(), names, seen));
    case K::Iff:
      return Formula::iff(rename_apart_rec(f.left(), names, seen), rename_apart_rec(f.right(), names, seen));
    default: {
      std::string var = f.var();
      Formula body = f.body();
      if (!seen.insert(var).second) {
        std::string renamed = names.next();
        seen.insert(renamed);
        body = substitute(body, var, Term::var(renamed));
        var = renamed;
      }
      body = rename_apart_rec(body, names, seen);
      switch (f.kind()) {
        case K::Exists:
          return Formula::exists(var, body);
        case K::Forall:
          return Formula::forall(var, body);
        case K::BoundedExists:
          return Formula::bounded_exists(var, f.bound(), body);
        default:
          return Formula::bounded_forall(var, f.bound(), body);
      }
    }
  }
}

}  // namespace

Formula rename_apart(const Formula& f, FreshNames& names) {
  names.reserve(all_vars(f));
  std::set<std::string> seen = free_vars(f);
  return rename_apart_rec(f, names, seen);
}

}  // namespace concat
