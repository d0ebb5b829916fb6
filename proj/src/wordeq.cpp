#include "concat/wordeq.hpp"

#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace concat {

std::set<std::string> WordEquation::vars() const {
  std::set<std::string> out;
  for (const auto* side : {&lhs, &rhs})
    for (const auto& s : *side)
      if (s.is_var) out.insert(s.name);
  return out;
}

namespace {

void flatten_into(const Term& t, std::vector<Symbol>& out) {
  switch (t.kind()) {
    case Term::Kind::Empty: return;
    case Term::Kind::Zero: out.push_back(Symbol::constant('0')); return;
    case Term::Kind::One: out.push_back(Symbol::constant('1')); return;
    case Term::Kind::Var: out.push_back(Symbol::variable(t.name())); return;
    case Term::Kind::Concat:
      flatten_into(t.left(), out);
      flatten_into(t.right(), out);
      return;
  }
}

std::string side_text(const std::vector<Symbol>& side) {
  if (side.empty()) return "e";
  std::string out;
  for (const auto& s : side) {
    if (!out.empty()) out += ' ';
    if (s.is_var)
      out += s.name;
    else
      out += s.bit;
  }
  return out;
}

}  // namespace

std::vector<Symbol> flatten(const Term& t) {
  std::vector<Symbol> out;
  flatten_into(t, out);
  return out;
}

WordEquation flatten(const Formula& eq) {
  if (!eq.is(Formula::Kind::Eq)) throw std::invalid_argument("flatten: not an equation");
  return {flatten(eq.lhs()), flatten(eq.rhs())};
}

std::string to_string(const WordEquation& e) { return side_text(e.lhs) + " = " + side_text(e.rhs); }

BitString value(const std::vector<Symbol>& side, const Assignment& a) {
  std::string out;
  for (const auto& s : side) {
    if (!s.is_var) {
      out += s.bit;
    } else if (auto it = a.find(s.name); it != a.end()) {
      out += it->second.str();
    }
  }
  return BitString(out);
}

bool satisfies(const WordEquation& e, const Assignment& a) { return value(e.lhs, a) == value(e.rhs, a); }

std::string EqVerdict::to_string() const {
  switch (kind) {
    case Kind::Sat: {
      std::string out = "sat";
      for (const auto& [name, v] : solution) out += "\n" + name + " = " + quoted(v);
      return out;
    }
    case Kind::Unsat: return "unsat";
    case Kind::UnsatWithinBound: return "unsat-within-bound(" + std::to_string(bound) + ")";
  }
  return {};
}

// ---------------------------------------------------------------- Nielsen search

namespace {

// Symbols as small integers: 0 and 1 are bits, 2 + i is variable i.
using Word = std::vector<int>;

bool is_var(int s) { return s >= 2; }

struct State {
  Word lhs, rhs;
  std::size_t parent;
  int var;          // variable substituted to reach this state, -1 for the root
  int prefix;       // -1 for var := ε, otherwise var := prefix · var
  std::size_t depth;
};

Word substitute(const Word& w, int var, int prefix) {
  Word out;
  out.reserve(w.size() + 4);
  for (int s : w) {
    if (s != var) {
      out.push_back(s);
    } else if (prefix >= 0) {
      out.push_back(prefix);
      out.push_back(var);
    }
  }
  return out;
}

// Strips common leading and trailing symbols; false if the state is contradictory.
bool simplify(Word& l, Word& r) {
  std::size_t i = 0;
  while (i < l.size() && i < r.size() && l[i] == r[i]) ++i;
  l.erase(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(i));
  r.erase(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(i));
  while (!l.empty() && !r.empty() && l.back() == r.back()) {
    l.pop_back();
    r.pop_back();
  }
  if (!l.empty() && !r.empty()) {
    if (!is_var(l.front()) && !is_var(r.front())) return false;
    if (!is_var(l.back()) && !is_var(r.back())) return false;
  }
  auto consts = [](const Word& w) {
    std::size_t n = 0;
    bool vars = false;
    for (int s : w) {
      if (is_var(s))
        vars = true;
      else
        ++n;
    }
    return std::make_pair(n, vars);
  };
  auto [lc, lv] = consts(l);
  auto [rc, rv] = consts(r);
  if (!lv && rc > lc) return false;
  if (!rv && lc > rc) return false;
  return true;
}

std::string key(const Word& l, const Word& r) {
  std::string k;
  k.reserve(l.size() + r.size() + 1);
  for (int s : l) k += static_cast<char>(s + 1);
  k += '\0';
  for (int s : r) k += static_cast<char>(s + 1);
  return k;
}

}  // namespace

EqVerdict solve(const WordEquation& e, std::size_t max_total_len) {
  SolveLimits limits;
  limits.max_total_len = max_total_len;
  return solve(e, limits);
}

EqVerdict solve(const WordEquation& e, const SolveLimits& limits) {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  auto encode = [&](const std::vector<Symbol>& side) {
    Word w;
    for (const auto& s : side) {
      if (!s.is_var) {
        w.push_back(s.bit - '0');
        continue;
      }
      auto [it, fresh] = index.emplace(s.name, static_cast<int>(names.size()) + 2);
      if (fresh) names.push_back(s.name);
      w.push_back(it->second);
    }
    return w;
  };

  EqVerdict out;
  out.bound = limits.max_total_len;
  std::vector<State> states;
  std::unordered_map<std::string, std::size_t> seen;
  std::deque<std::size_t> queue;
  bool cut = false;

  auto push = [&](Word l, Word r, std::size_t parent, int var, int prefix, std::size_t depth) -> bool {
    if (!simplify(l, r)) return false;
    if (l.size() + r.size() > limits.max_state_len || depth > limits.max_total_len) {
      cut = true;
      return false;
    }
    std::string k = key(l, r);
    if (seen.count(k)) return false;
    if (states.size() >= limits.max_states) {
      cut = true;
      return false;
    }
    seen.emplace(std::move(k), states.size());
    states.push_back({std::move(l), std::move(r), parent, var, prefix, depth});
    queue.push_back(states.size() - 1);
    return states.back().lhs.empty() && states.back().rhs.empty();
  };

  auto finish = [&](std::size_t id) {
    std::vector<std::string> values(names.size());
    for (std::size_t cur = id; states[cur].var >= 0; cur = states[cur].parent) {
      const State& s = states[cur];
      std::string& v = values[static_cast<std::size_t>(s.var - 2)];
      if (s.prefix < 0) {
        v.clear();
      } else if (is_var(s.prefix)) {
        v = values[static_cast<std::size_t>(s.prefix - 2)] + v;
      } else {
        v = static_cast<char>('0' + s.prefix) + v;
      }
    }
    out.kind = EqVerdict::Kind::Sat;
    for (std::size_t i = 0; i < names.size(); ++i) out.solution[names[i]] = BitString(values[i]);
    out.states = states.size();
    if (!satisfies(e, out.solution)) throw std::logic_error("solve: reconstructed witness does not verify");
    return out;
  };

  Word l0 = encode(e.lhs), r0 = encode(e.rhs);
  if (push(std::move(l0), std::move(r0), 0, -1, -1, 0)) return finish(0);
  if (states.empty() && !cut) {
    out.kind = EqVerdict::Kind::Unsat;
    return out;
  }

  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    // copy: pushes may reallocate `states`
    const Word l = states[id].lhs, r = states[id].rhs;
    const std::size_t depth = states[id].depth;
    std::vector<std::pair<int, int>> moves;  // (var, prefix)
    int a = l.empty() ? -1 : l.front();
    int b = r.empty() ? -1 : r.front();
    if (a >= 0 && is_var(a)) {
      moves.push_back({a, -1});
      if (b >= 0) moves.push_back({a, b});
    }
    if (b >= 0 && is_var(b)) {
      moves.push_back({b, -1});
      if (a >= 0) moves.push_back({b, a});
    }
    // x vs y: the two ε moves come first, then x := y x, y := x y
    if (a >= 0 && b >= 0 && is_var(a) && is_var(b)) moves = {{a, -1}, {b, -1}, {a, b}, {b, a}};
    for (auto [var, prefix] : moves) {
      std::size_t step = prefix < 0 ? 0 : 1;
      if (push(substitute(l, var, prefix), substitute(r, var, prefix), id, var, prefix, depth + step))
        return finish(states.size() - 1);
    }
  }
  out.states = states.size();
  out.kind = cut ? EqVerdict::Kind::UnsatWithinBound : EqVerdict::Kind::Unsat;
  return out;
}

}  // namespace concat
