#include "concat/semantics.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "concat/wordeq.hpp"

namespace concat {

std::string to_string(Structure s) { return s == Structure::B ? "B" : "D"; }

Structure parse_structure(const std::string& text) {
  if (text == "B") return Structure::B;
  if (text == "D") return Structure::D;
  throw std::invalid_argument("unknown structure '" + text + "' (expected B or D)");
}

bool holds(Structure s, const BitString& u, const BitString& v) {
  return s == Structure::B ? is_substring(u, v) : is_prefix(u, v);
}

std::vector<BitString> below(Structure s, const BitString& v) {
  return s == Structure::B ? substrings(v) : prefixes(v);
}

std::string Verdict::to_string() const {
  switch (value) {
    case Value::True: return "true";
    case Value::False: return "false";
    case Value::Unknown: return "unknown(budget=" + std::to_string(budget) + ")";
  }
  return {};
}

BitString eval_term(const Term& t, const Assignment& a) {
  switch (t.kind()) {
    case Term::Kind::Empty: return BitString();
    case Term::Kind::Zero: return BitString::zero();
    case Term::Kind::One: return BitString::one();
    case Term::Kind::Var: {
      auto it = a.find(t.name());
      if (it == a.end()) throw UnboundVariable(t.name());
      return it->second;
    }
    case Term::Kind::Concat: return concat(eval_term(t.left(), a), eval_term(t.right(), a));
  }
  return BitString();
}

namespace {

using V = Verdict::Value;

V kleene_not(V a) { return a == V::True ? V::False : a == V::False ? V::True : V::Unknown; }

V kleene_and(V a, V b) {
  if (a == V::False || b == V::False) return V::False;
  if (a == V::True && b == V::True) return V::True;
  return V::Unknown;
}

V kleene_or(V a, V b) { return kleene_not(kleene_and(kleene_not(a), kleene_not(b))); }

struct StepLimit {};

void conjuncts_of(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Formula::Kind::And)) {
    conjuncts_of(f.left(), out);
    conjuncts_of(f.right(), out);
  } else {
    out.push_back(f);
  }
}

void disjuncts_of(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Formula::Kind::Or)) {
    disjuncts_of(f.left(), out);
    disjuncts_of(f.right(), out);
  } else {
    out.push_back(f);
  }
}

bool is_rel_on(const Formula& f, const std::string& x) {
  return f.is(Formula::Kind::Rel) && f.lhs().is(Term::Kind::Var) && f.lhs().name() == x &&
         !f.rhs().contains_var(x);
}

// Known parts of a term whose variables may be partly unassigned.
struct Shape {
  std::string head;           // known bits before the first unknown variable
  std::string tail;           // known bits after the last unknown variable
  bool known = true;
  std::size_t min_len = 0;    // total known bits
  std::string first_unknown;  // name of the first unknown variable
};

struct BlockVar {
  std::string name;
  std::optional<Term> bound;  // bounded quantifier bound, or the decisive ⊑ term
  bool bounded = false;       // false: ranges over strings up to the budget
  std::set<std::string> deps;
};

struct Block {
  std::vector<BlockVar> vars;
  Formula body;
  std::vector<Formula> constraints;  // must all be possibly true for a witness
  bool universal = false;
  mutable bool exact = true;  // no var ranges over the budget-limited domain
};

class Evaluator {
 public:
  Evaluator(Structure s, const EvalOptions& opts, const Assignment& a) : s_(s), opts_(opts) {
    for (const auto& [name, v] : a) env_[name].push_back(v);
  }

  V run(const Formula& f, Assignment* witness) {
    if (f.is(Formula::Kind::Exists) || f.is(Formula::Kind::BoundedExists)) witness_ = witness;
    return eval(f);
  }

 private:
  void step(std::size_t n = 1) const {
    if (!opts_.max_steps) return;
    steps_ = n > opts_.max_steps ? opts_.max_steps + 1 : steps_ + n;
    if (steps_ > opts_.max_steps) throw StepLimit{};
  }

  const BitString* lookup(const std::string& name) const {
    auto it = env_.find(name);
    if (it == env_.end() || it->second.empty() || !it->second.back()) return nullptr;
    return &*it->second.back();
  }

  BitString value(const Term& t) const {
    switch (t.kind()) {
      case Term::Kind::Empty: return BitString();
      case Term::Kind::Zero: return BitString::zero();
      case Term::Kind::One: return BitString::one();
      case Term::Kind::Var: {
        const BitString* v = lookup(t.name());
        if (!v) throw UnboundVariable(t.name());
        return *v;
      }
      case Term::Kind::Concat: return concat(value(t.left()), value(t.right()));
    }
    return BitString();
  }

  void shape_into(const Term& t, Shape& sh) const {
    switch (t.kind()) {
      case Term::Kind::Empty: return;
      case Term::Kind::Concat:
        shape_into(t.left(), sh);
        shape_into(t.right(), sh);
        return;
      case Term::Kind::Var:
        if (const BitString* v = lookup(t.name())) {
          append(sh, v->str());
        } else {
          if (sh.known) sh.first_unknown = t.name();
          sh.known = false;
          sh.tail.clear();
        }
        return;
      default:
        append(sh, t.is(Term::Kind::Zero) ? "0" : "1");
    }
  }

  static void append(Shape& sh, const std::string& bits) {
    if (sh.known) sh.head += bits;
    sh.tail += bits;
    sh.min_len += bits.size();
  }

  Shape shape(const Term& t) const {
    step(t.symbols());
    Shape sh;
    shape_into(t, sh);
    return sh;
  }

  static bool prefix_compatible(const std::string& a, const std::string& b) {
    std::size_t n = std::min(a.size(), b.size());
    return a.compare(0, n, b, 0, n) == 0;
  }

  static bool suffix_compatible(const std::string& a, const std::string& b) {
    std::size_t n = std::min(a.size(), b.size());
    return a.compare(a.size() - n, n, b, b.size() - n, n) == 0;
  }

  // False only if f is false under every completion of the current partial assignment.
  bool possible(const Formula& f) const {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Eq: {
        Shape a = shape(f.lhs()), b = shape(f.rhs());
        if (a.known && b.known) return a.head == b.head;
        if (!prefix_compatible(a.head, b.head) || !suffix_compatible(a.tail, b.tail)) return false;
        if (a.known && b.min_len > a.min_len) return false;
        if (b.known && a.min_len > b.min_len) return false;
        return true;
      }
      case K::Rel: {
        Shape a = shape(f.lhs()), b = shape(f.rhs());
        if (a.known && b.known) return holds(s_, BitString(a.head), BitString(b.head));
        if (b.known) {
          if (a.min_len > b.min_len) return false;
          if (s_ == Structure::D) return b.head.compare(0, a.head.size(), a.head) == 0 && a.head.size() <= b.head.size();
          return b.head.find(a.head) != std::string::npos && b.head.find(a.tail) != std::string::npos;
        }
        if (s_ == Structure::D && a.known) return prefix_compatible(a.head, b.head);
        return true;
      }
      case K::Not:
        if (f.body().is_atom()) {
          Shape a = shape(f.body().lhs()), b = shape(f.body().rhs());
          if (a.known && b.known) {
            bool atom = f.body().is(K::Eq) ? a.head == b.head : holds(s_, BitString(a.head), BitString(b.head));
            return !atom;
          }
        }
        return true;
      case K::And: return possible(f.left()) && possible(f.right());
      case K::Or: return possible(f.left()) || possible(f.right());
      default: return true;
    }
  }

  static void prefixes_of_rest(const std::string& v, std::size_t from, std::vector<BitString>& out) {
    for (std::size_t len = 0; from + len <= v.size(); ++len) out.emplace_back(v.substr(from, len));
  }

  // Values of x that can make f true, if f pins x down to finitely many.
  std::optional<std::vector<BitString>> candidates(const Formula& f, const std::string& x) const {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Eq: {
        Shape a = shape(f.lhs()), b = shape(f.rhs());
        for (int side = 0; side < 2; ++side) {
          const Shape& known = side ? a : b;
          const Shape& open = side ? b : a;
          if (!known.known || open.known || open.first_unknown != x) continue;
          std::vector<BitString> out;
          if (known.head.compare(0, open.head.size(), open.head) == 0 && open.head.size() <= known.head.size())
            prefixes_of_rest(known.head, open.head.size(), out);
          return out;
        }
        return std::nullopt;
      }
      case K::Rel: {
        Shape a = shape(f.lhs()), b = shape(f.rhs());
        if (!b.known || a.known || a.first_unknown != x) return std::nullopt;
        std::vector<BitString> out;
        if (s_ == Structure::D) {
          if (b.head.compare(0, a.head.size(), a.head) == 0 && a.head.size() <= b.head.size())
            prefixes_of_rest(b.head, a.head.size(), out);
        } else {
          for (auto p = b.head.find(a.head); p != std::string::npos; p = b.head.find(a.head, p + 1))
            prefixes_of_rest(b.head, p + a.head.size(), out);
        }
        return out;
      }
      case K::And: {
        auto l = candidates(f.left(), x), r = candidates(f.right(), x);
        if (!l) return r;
        if (!r) return l;
        return l->size() <= r->size() ? l : r;
      }
      case K::Or: {
        auto l = candidates(f.left(), x);
        if (!l) return std::nullopt;
        auto r = candidates(f.right(), x);
        if (!r) return std::nullopt;
        l->insert(l->end(), r->begin(), r->end());
        return l;
      }
      default: return std::nullopt;
    }
  }

  // ------------------------------------------------------------ blocks

  Block collect(const Formula& f, bool universal) {
    using K = Formula::Kind;
    Block b{{}, f, {}, universal, true};
    auto same = [&](const Formula& g) {
      return universal ? (g.is(K::Forall) || g.is(K::BoundedForall)) : (g.is(K::Exists) || g.is(K::BoundedExists));
    };
    std::set<std::string> names, mentioned;
    const Formula* cur = &f;
    while (same(*cur)) {
      const std::string& x = cur->var();
      // a repeated name, or one an earlier bound refers to, starts a new block
      if (names.count(x) || mentioned.count(x)) break;
      BlockVar v{x, std::nullopt, cur->is_bounded(), {}};
      if (cur->is_bounded()) {
        v.bound = cur->bound();
        cur->bound().collect_vars(mentioned);
      }
      names.insert(x);
      b.vars.push_back(std::move(v));
      cur = &cur->body();
    }
    b.body = *cur;

    if (!universal) {
      conjuncts_of(b.body, b.constraints);
    } else {
      // a counterexample must falsify every disjunct
      std::vector<Formula> ds;
      if (b.body.is(K::Implies)) {
        conjuncts_of(b.body.left(), b.constraints);
        disjuncts_of(b.body.right(), ds);
      } else {
        disjuncts_of(b.body, ds);
      }
      for (const auto& d : ds) {
        if (d.is(K::Not) && d.body().is_atom()) {
          b.constraints.push_back(d.body());
        } else if (d.is_atom()) {
          b.constraints.push_back(Formula::negation(d));
        }
      }
    }

    // the innermost unbounded variable may be pinned by its body
    BlockVar& last = b.vars.back();
    if (!last.bounded) {
      for (const auto& c : b.constraints) {
        if (is_rel_on(c, last.name)) {
          last.bounded = true;
          last.bound = c.rhs();
          break;
        }
      }
    }
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
      BlockVar& v = b.vars[i];
      if (!v.bounded && !opts_.complete_domains) b.exact = false;
      if (!v.bound) continue;
      std::set<std::string> used;
      v.bound->collect_vars(used);
      for (std::size_t j = 0; j < i; ++j)
        if (used.count(b.vars[j].name)) v.deps.insert(b.vars[j].name);
    }
    return b;
  }

  void bind(const std::string& name, std::optional<BitString> v) { env_[name].push_back(std::move(v)); }
  void unbind(const std::string& name) { env_[name].pop_back(); }
  void set(const std::string& name, const BitString& v) { env_[name].back() = v; }
  void clear(const std::string& name) { env_[name].back().reset(); }

  bool consistent(const Block& b) const {
    for (const auto& c : b.constraints)
      if (!possible(c)) return false;
    return true;
  }

  // Either an explicit list or all strings of length <= all_up_to, enumerated on demand.
  struct Domain {
    std::vector<BitString> own;
    std::optional<std::size_t> all_up_to;
    bool truncated = false;  // some value was left out only because of the budget

    std::size_t size() const {
      if (!all_up_to) return own.size();
      if (*all_up_to >= 62) return SIZE_MAX;
      return (std::size_t{2} << *all_up_to) - 1;
    }
    BitString at(std::size_t i) const {
      if (!all_up_to) return own[i];
      std::size_t len = 0;
      while (i >= (std::size_t{1} << len)) i -= std::size_t{1} << len++;
      std::string bits(len, '0');
      for (std::size_t k = 0; k < len; ++k)
        if (i >> (len - 1 - k) & 1) bits[k] = '1';
      return BitString(bits);
    }
  };

  // Domain of a variable, pruned by the constraints, in shortlex order.
  Domain domain(const Block& b, const BlockVar& v) const {
    std::optional<std::vector<BitString>> gen;
    for (const auto& c : b.constraints) {
      auto g = candidates(c, v.name);
      if (g && (!gen || g->size() < gen->size())) gen = std::move(g);
    }
    Domain d;
    std::vector<BitString>& out = d.own;
    if (v.bounded) {
      BitString top = value(*v.bound);
      if (!gen) {
        out = below(s_, top);
        return d;
      }
      for (auto& c : *gen)
        if (holds(s_, c, top)) out.push_back(std::move(c));
    } else {
      if (!gen) {
        d.all_up_to = opts_.budget;
        d.truncated = true;
        return d;
      }
      for (auto& c : *gen) {
        if (c.size() <= opts_.budget)
          out.push_back(std::move(c));
        else
          d.truncated = true;
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return d;
  }

  // Picks the ready variable with the fewest values. Returns its index.
  std::size_t choose(const Block& b, const std::vector<bool>& assigned, Domain& values) const {
    std::size_t best = b.vars.size();
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
      if (assigned[i]) continue;
      bool ready = true;
      for (const auto& d : b.vars[i].deps)
        for (std::size_t j = 0; j < b.vars.size(); ++j)
          if (b.vars[j].name == d && !assigned[j]) ready = false;
      if (!ready) continue;
      Domain dom = domain(b, b.vars[i]);
      if (best == b.vars.size() || dom.size() < values.size()) {
        best = i;
        values = std::move(dom);
        if (values.size() <= 1) break;
      }
    }
    return best;
  }

  // Tries the equation solver on a block whose open variables are all budget-limited and whose
  // body is one equation. Returns True, False (provably no solution) or Unknown (inconclusive).
  V solve_shortcut(const Block& b, const std::vector<bool>& assigned) {
    if (!b.body.is(Formula::Kind::Eq)) return V::Unknown;
    if (b.body.lhs().symbols() + b.body.rhs().symbols() > kMaxSolverInput) return V::Unknown;
    std::vector<std::string> open;
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
      if (assigned[i]) continue;
      if (b.vars[i].bounded) return V::Unknown;
      open.push_back(b.vars[i].name);
    }
    auto side = [&](const Term& t) {
      std::vector<Symbol> out;
      for (auto& sym : flatten(t)) {
        if (!sym.is_var) {
          out.push_back(sym);
        } else if (const BitString* v = lookup(sym.name)) {
          for (char c : v->str()) out.push_back(Symbol::constant(c));
        } else {
          out.push_back(sym);
        }
      }
      return out;
    };
    WordEquation eq{side(b.body.lhs()), side(b.body.rhs())};
    for (const auto& name : eq.vars())
      if (std::find(open.begin(), open.end(), name) == open.end()) return V::Unknown;
    SolveLimits lim;
    lim.max_total_len = opts_.budget * open.size();
    lim.max_states = 20000;
    lim.max_state_len = kMaxSolverInput;
    EqVerdict r = solve(eq, lim);
    step(r.states);
    if (r.kind == EqVerdict::Kind::Unsat) return V::False;
    if (r.kind != EqVerdict::Kind::Sat) return V::Unknown;
    for (const auto& name : open) {
      auto it = r.solution.find(name);
      if (it != r.solution.end() && it->second.size() > opts_.budget) return V::Unknown;
    }
    for (const auto& name : open) {
      auto it = r.solution.find(name);
      set(name, it == r.solution.end() ? BitString() : it->second);
    }
    return V::True;
  }

  // ∃: True if a witness exists; otherwise the Kleene join over all assignments tried.
  // ∀: dual, searching for a counterexample.
  V search(const Block& b, std::vector<bool>& assigned, std::size_t left, Assignment* capture) {
    step();
    const V hit = b.universal ? V::False : V::True;
    const V miss = b.universal ? V::True : V::False;
    if (left == 0) {
      V r = eval(b.body);
      if (r == hit && capture) record(b, capture);
      return r;
    }
    if (!b.universal) {
      V quick = solve_shortcut(b, assigned);
      if (quick == V::True) {
        if (capture) record(b, capture);
        for (std::size_t i = 0; i < b.vars.size(); ++i)
          if (!assigned[i]) clear(b.vars[i].name);
        return V::True;
      }
      if (quick == V::False) return V::False;
    }
    Domain values;
    std::size_t i = choose(b, assigned, values);
    if (values.truncated) b.exact = false;
    V acc = miss;
    assigned[i] = true;
    for (std::size_t k = 0, n = values.size(); k < n; ++k) {
      step();
      set(b.vars[i].name, values.at(k));
      if (!consistent(b)) continue;
      V r = search(b, assigned, left - 1, capture);
      if (r == hit) {
        clear(b.vars[i].name);
        assigned[i] = false;
        return hit;
      }
      acc = b.universal ? kleene_and(acc, r) : kleene_or(acc, r);
    }
    clear(b.vars[i].name);
    assigned[i] = false;
    return acc;
  }

  void record(const Block& b, Assignment* capture) const {
    for (const auto& v : b.vars)
      if (const BitString* val = lookup(v.name)) (*capture)[v.name] = *val;
  }

  V block(const Formula& f, bool universal) {
    Block b = collect(f, universal);
    Assignment* capture = witness_;
    witness_ = nullptr;
    for (const auto& v : b.vars) bind(v.name, std::nullopt);
    std::vector<bool> assigned(b.vars.size(), false);
    V r;
    try {
      r = search(b, assigned, b.vars.size(), universal ? nullptr : capture);
    } catch (...) {
      for (auto it = b.vars.rbegin(); it != b.vars.rend(); ++it) unbind(it->name);
      throw;
    }
    for (auto it = b.vars.rbegin(); it != b.vars.rend(); ++it) unbind(it->name);
    const V hit = universal ? V::False : V::True;
    if (r != hit && !b.exact) return V::Unknown;
    return r;
  }

  V eval(const Formula& f) {
    using K = Formula::Kind;
    step();
    switch (f.kind()) {
      case K::Eq:
        step(f.lhs().symbols());
        step(f.rhs().symbols());
        return value(f.lhs()) == value(f.rhs()) ? V::True : V::False;
      case K::Rel:
        step(f.lhs().symbols());
        step(f.rhs().symbols());
        return holds(s_, value(f.lhs()), value(f.rhs())) ? V::True : V::False;
      case K::Not: return kleene_not(eval(f.body()));
      case K::And: {
        V l = eval(f.left());
        if (l == V::False) return l;
        return kleene_and(l, eval(f.right()));
      }
      case K::Or: {
        V l = eval(f.left());
        if (l == V::True) return l;
        return kleene_or(l, eval(f.right()));
      }
      case K::Implies: {
        V l = eval(f.left());
        if (l == V::False) return V::True;
        return kleene_or(kleene_not(l), eval(f.right()));
      }
      case K::Iff: {
        V l = eval(f.left()), r = eval(f.right());
        if (l == V::Unknown || r == V::Unknown) return V::Unknown;
        return l == r ? V::True : V::False;
      }
      case K::Exists:
      case K::BoundedExists: return block(f, false);
      case K::Forall:
      case K::BoundedForall: return block(f, true);
    }
    return V::Unknown;
  }

  static constexpr std::size_t kMaxSolverInput = 256;

  Structure s_;
  EvalOptions opts_;
  mutable std::size_t steps_ = 0;
  std::unordered_map<std::string, std::vector<std::optional<BitString>>> env_;
  Assignment* witness_ = nullptr;
};

}  // namespace

EvalResult evaluate(const Formula& f, Structure s, const Assignment& a, const EvalOptions& opts) {
  EvalResult out;
  Evaluator ev(s, opts, a);
  try {
    V v = ev.run(f, &out.witness);
    out.verdict = v == V::Unknown ? Verdict::unknown(opts.budget) : Verdict::of(v == V::True);
  } catch (const StepLimit&) {
    out.verdict = Verdict::unknown(opts.budget);
    out.step_limit_hit = true;
  }
  if (!out.verdict.is_true()) out.witness.clear();
  return out;
}

Verdict eval(const Formula& f, Structure s, const Assignment& a, std::size_t budget) {
  EvalOptions opts;
  opts.budget = budget;
  return evaluate(f, s, a, opts).verdict;
}

bool decide_sigma_0mk(const Formula& f, Structure s) {
  SigmaClass c = classify(f);
  if (!c.sigma) throw std::invalid_argument("decide_sigma_0mk: not a Σ-formula");
  if (c.n > 0) throw std::invalid_argument("decide_sigma_0mk: unbounded existential quantifier present");
  if (!is_sentence(f)) throw std::invalid_argument("decide_sigma_0mk: formula has free variables");
  Verdict v = eval(f, s, {}, 0);
  if (v.is_unknown()) throw std::logic_error("decide_sigma_0mk: bounded evaluation returned unknown");
  return v.is_true();
}

Formula negate_sigma(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq:
    case K::Rel: return Formula::negation(f);
    case K::Not:
      if (f.body().is_atom()) return f.body();
      break;
    case K::And: return Formula::disj(negate_sigma(f.left()), negate_sigma(f.right()));
    case K::Or: return Formula::conj(negate_sigma(f.left()), negate_sigma(f.right()));
    case K::BoundedExists: return Formula::bounded_forall(f.var(), f.bound(), negate_sigma(f.body()));
    case K::BoundedForall: return Formula::bounded_exists(f.var(), f.bound(), negate_sigma(f.body()));
    default: break;
  }
  throw std::invalid_argument("negate_sigma: formula is not a Σ(0,m,k)-formula");
}

}  // namespace concat
