#include "concat/pcp.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "concat/syntax.hpp"

namespace concat {

namespace {

Term bits(const std::string& s) { return biteral(BitString(s)); }
Term var(const char* name) { return Term::var(name); }
Formula rel(const Term& a, const Term& b) { return Formula::rel(a, b); }
Formula neg(const Formula& f) { return Formula::negation(f); }

// 0 1^k 0
std::string sep(std::size_t k) { return "0" + std::string(k, '1') + "0"; }

const std::string kLambda = sep(5);
const std::string kMid = sep(4);

struct Encoded {
  std::vector<Term> x, y;
  std::vector<std::string> xs, ys;
};

Encoded encode(const PcpInstance& inst) {
  if (inst.pairs.empty()) throw std::invalid_argument("empty PCP instance");
  Encoded e;
  for (const auto& [a, b] : inst.pairs) {
    e.xs.push_back(n_encode(a).str());
    e.ys.push_back(n_encode(b).str());
    e.x.push_back(biteral(n_encode(a)));
    e.y.push_back(biteral(n_encode(b)));
  }
  return e;
}

template <class F>
Formula any_pair(const Encoded& e, F f) {
  std::vector<Formula> ds;
  for (std::size_t j = 0; j < e.x.size(); ++j) ds.push_back(f(e.x[j], e.y[j]));
  return disj_all(ds);
}

// u starts with one of these in every model of the first conjunct
std::vector<std::string> openings(Reduction r, const PcpInstance& inst) {
  Encoded e = encode(inst);
  std::set<std::string> out;
  for (std::size_t j = 0; j < e.xs.size(); ++j) {
    if (r == Reduction::D411)
      out.insert(sep(5) + e.xs[j] + sep(4) + e.ys[j] + sep(6));
    else
      out.insert(kLambda + e.xs[j] + kMid + e.ys[j] + kLambda);
  }
  return {out.begin(), out.end()};
}

// α(u) of the B reductions: some opening block occurs in u, and only at its start
Formula opening_alone(const Encoded& e, const Term& u) {
  Term L = bits(kLambda), M = bits(kMid);
  return any_pair(e, [&](const Term& x, const Term& y) {
    Term blk = concat_all({L, x, M, y, L});
    return conj_all({rel(blk, u), neg(rel(Term::concat(Term::zero(), blk), u)),
                     neg(rel(Term::concat(Term::one(), blk), u))});
  });
}

}  // namespace

PcpInstance parse_instance(std::string_view text) {
  PcpInstance inst;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok.size() != 2)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected two bit strings");
    auto component = [&](const std::string& t) {
      try {
        return t == "-" ? BitString() : BitString(t);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": bad bit string '" + t + "'");
      }
    };
    inst.pairs.emplace_back(component(tok[0]), component(tok[1]));
  }
  if (inst.pairs.empty()) throw std::invalid_argument("empty PCP instance");
  return inst;
}

std::string to_string(const PcpInstance& inst) {
  std::string out;
  for (const auto& [a, b] : inst.pairs)
    out += (a.empty() ? "-" : a.str()) + " " + (b.empty() ? "-" : b.str()) + "\n";
  return out;
}

bool verify_solution(const PcpInstance& inst, const PcpSolution& sol) {
  if (sol.empty()) return false;
  std::string top, bottom;
  for (std::size_t i : sol) {
    if (i < 1 || i > inst.pairs.size()) throw std::out_of_range("index " + std::to_string(i) + " out of range");
    top += inst.pairs[i - 1].first.str();
    bottom += inst.pairs[i - 1].second.str();
  }
  return top == bottom;
}

std::optional<PcpSolution> solve_pcp(const PcpInstance& inst, std::size_t max_seq_len) {
  struct State {
    bool top_ahead;
    std::string over;
    PcpSolution seq;
  };
  std::deque<State> queue{{true, "", {}}};
  std::set<std::pair<bool, std::string>> seen;
  while (!queue.empty()) {
    State s = std::move(queue.front());
    queue.pop_front();
    if (s.seq.size() >= max_seq_len) continue;
    for (std::size_t i = 1; i <= inst.pairs.size(); ++i) {
      std::string top = (s.top_ahead ? s.over : "") + inst.pairs[i - 1].first.str();
      std::string bottom = (s.top_ahead ? "" : s.over) + inst.pairs[i - 1].second.str();
      const std::string& shorter = top.size() <= bottom.size() ? top : bottom;
      const std::string& longer = top.size() <= bottom.size() ? bottom : top;
      if (longer.compare(0, shorter.size(), shorter) != 0) continue;
      State next{top.size() > bottom.size(), longer.substr(shorter.size()), s.seq};
      next.seq.push_back(i);
      if (next.over.empty()) return next.seq;
      if (!seen.insert({next.top_ahead, next.over}).second) continue;
      queue.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

PcpInstance n_transform(const PcpInstance& inst) {
  PcpInstance out;
  for (const auto& [a, b] : inst.pairs) out.pairs.emplace_back(n_encode(a), n_encode(b));
  return out;
}

std::string to_string(Reduction r) {
  switch (r) {
    case Reduction::D302: return "d302";
    case Reduction::B121: return "b121";
    case Reduction::B102: return "b102";
    case Reduction::D411: return "d411";
  }
  return "";
}

Reduction parse_reduction(const std::string& text) {
  for (Reduction r : all_reductions())
    if (to_string(r) == text) return r;
  throw std::invalid_argument("unknown reduction '" + text + "' (expected d302, b121, b102 or d411)");
}

Structure structure_of(Reduction r) {
  return r == Reduction::B121 || r == Reduction::B102 ? Structure::B : Structure::D;
}

const std::vector<Reduction>& all_reductions() {
  static const std::vector<Reduction> all{Reduction::D302, Reduction::B121, Reduction::B102, Reduction::D411};
  return all;
}

Formula reduce_D_302(const PcpInstance& inst) {
  Encoded e = encode(inst);
  Term u = var("u"), v = var("v"), w1 = var("w1"), w2 = var("w2"), z = var("z");
  Term L = bits(kLambda), M = bits(kMid);
  Term w12 = Term::concat(w1, w2);
  Formula no_four_ones = Formula::bounded_forall("z", w12, neg(rel(Term::concat(z, bits("1111")), w12)));
  Formula step = any_pair(e, [&](const Term& x, const Term& y) {
    return rel(concat_all({v, L, w1, M, w2, L, w1, x, M, w2, y, L}), u);
  });
  Formula block = conj_all({rel(concat_all({v, L, w1, M, w2, L}), u), no_four_ones,
                            Formula::disj(Formula::eq(w1, w2), step)});
  Formula each = Formula::bounded_forall(
      "v", u,
      disj_all({neg(rel(Term::concat(v, L), u)), Formula::eq(Term::concat(v, L), u),
                Formula::exists("w1", Formula::exists("w2", block))}));
  Formula start = any_pair(e, [&](const Term& x, const Term& y) { return rel(concat_all({L, x, M, y, L}), u); });
  return Formula::exists("u", Formula::conj(start, each));
}

Formula reduce_B_121(const PcpInstance& inst) {
  Encoded e = encode(inst);
  Term u = var("u"), v = var("v"), w1 = var("w1"), w2 = var("w2");
  Term L = bits(kLambda), M = bits(kMid), four = bits("1111");
  Formula step = any_pair(e, [&](const Term& x, const Term& y) {
    return rel(concat_all({L, w1, x, M, w2, y, L}), u);
  });
  Formula split = conj_all({Formula::eq(v, concat_all({w1, M, w2})), neg(rel(four, w1)), neg(rel(four, w2)),
                            Formula::disj(Formula::eq(w1, w2), step)});
  Formula each = Formula::bounded_forall(
      "v", u,
      disj_all({neg(rel(concat_all({L, v, L}), u)), rel(bits("11111"), v),
                Formula::bounded_exists("w1", v, Formula::bounded_exists("w2", v, split))}));
  return Formula::exists("u", Formula::conj(opening_alone(e, u), each));
}

Formula reduce_B_102(const PcpInstance& inst) {
  Encoded e = encode(inst);
  Term u = var("u"), w1 = var("w1"), w2 = var("w2");
  Term L = bits(kLambda), M = bits(kMid);
  Formula step = any_pair(e, [&](const Term& x, const Term& y) {
    return rel(concat_all({L, w1, x, M, w2, y, L}), u);
  });
  Formula each = Formula::bounded_forall(
      "w1", u,
      Formula::bounded_forall("w2", u,
                              disj_all({neg(rel(concat_all({L, w1, M, w2, L}), u)),
                                        rel(bits("1111"), Term::concat(w1, w2)), Formula::eq(w1, w2), step})));
  return Formula::exists("u", Formula::conj(opening_alone(e, u), each));
}

Formula reduce_D_411(const PcpInstance& inst) {
  Encoded e = encode(inst);
  Term u = var("u"), v = var("v"), w1 = var("w1"), w2 = var("w2"), y = var("y"), z = var("z");
  Term zero = Term::zero(), one = Term::one();
  Term S = bits("111110"), B4 = bits(sep(4)), B5 = bits(sep(5)), B6 = bits(sep(6));
  Formula step = any_pair(e, [&](const Term& xj, const Term& yj) {
    return rel(concat_all({v, S, w1, xj, B4, w2, yj, zero, one, one, y, S}), u);
  });
  Formula block = conj_all({Formula::eq(v, concat_all({z, zero, y, S, w1, B4, w2, zero, one, y})),
                            Formula::eq(Term::concat(one, y), Term::concat(y, one)),
                            Formula::disj(Formula::eq(w1, w2), step)});
  Formula inner = Formula::exists(
      "w1", Formula::exists("w2", Formula::exists("y", Formula::bounded_exists("z", v, block))));
  Formula each = Formula::bounded_forall(
      "v", u, disj_all({neg(rel(Term::concat(v, S), u)), Formula::eq(v, zero), inner}));
  Formula start = any_pair(e, [&](const Term& x, const Term& yj) { return rel(concat_all({B5, x, B4, yj, B6}), u); });
  return Formula::exists("u", Formula::conj(start, each));
}

Formula reduce(Reduction r, const PcpInstance& inst) {
  switch (r) {
    case Reduction::D302: return reduce_D_302(inst);
    case Reduction::B121: return reduce_B_121(inst);
    case Reduction::B102: return reduce_B_102(inst);
    case Reduction::D411: return reduce_D_411(inst);
  }
  throw std::invalid_argument("unknown reduction");
}

BitString reduction_witness(Reduction r, const PcpInstance& inst, const PcpSolution& sol) {
  if (sol.empty()) throw std::invalid_argument("empty solution");
  std::string top, bottom;
  std::string out = sep(5);
  for (std::size_t k = 0; k < sol.size(); ++k) {
    std::size_t i = sol[k];
    if (i < 1 || i > inst.pairs.size()) throw std::out_of_range("index " + std::to_string(i) + " out of range");
    top += inst.pairs[i - 1].first.str();
    bottom += inst.pairs[i - 1].second.str();
    out += n_encode(BitString(top)).str() + kMid + n_encode(BitString(bottom)).str();
    out += r == Reduction::D411 ? sep(6 + k) : kLambda;
  }
  return BitString(out);
}

Verdict check_witness(Reduction r, const PcpInstance& inst, const BitString& u, std::size_t budget,
                      std::size_t max_steps) {
  Formula f = reduce(r, inst);
  EvalOptions opts{std::max(budget, u.size()), max_steps};
  return evaluate(f.body(), structure_of(r), {{"u", u}}, opts).verdict;
}

BlindResult blind_search(Reduction r, const PcpInstance& inst, std::size_t budget) {
  BlindResult res{Verdict::unknown(budget), std::nullopt, 0};
  Formula body = reduce(r, inst).body();
  std::vector<std::string> opens = openings(r, inst);
  for (std::size_t len = 0; len <= budget; ++len)
    for (const auto& o : opens) {
      if (o.size() > len) continue;
      std::size_t rest = len - o.size();
      for (const BitString& tail : all_strings(rest)) {
        if (tail.size() != rest) continue;
        BitString u(o + tail.str());
        ++res.tried;
        if (evaluate(body, structure_of(r), {{"u", u}}, {budget, 0}).verdict.is_true()) {
          res.verdict = Verdict::of(true);
          res.witness = u;
          return res;
        }
      }
    }
  return res;
}

CrosscheckReport crosscheck(const PcpInstance& inst, std::size_t budget, std::size_t max_seq_len,
                            std::size_t max_steps) {
  CrosscheckReport rep;
  rep.budget = budget;
  rep.max_seq_len = max_seq_len;
  rep.solution = solve_pcp(inst, max_seq_len);
  for (Reduction r : all_reductions()) {
    CrosscheckEntry e{r, "", Verdict::unknown(budget), std::nullopt};
    if (rep.solution) {
      BitString u = reduction_witness(r, inst, *rep.solution);
      e.witness = u;
      e.verdict = check_witness(r, inst, u, budget, max_steps);
      if (e.verdict.is_true()) {
        e.status = "verified";
      } else if (e.verdict.is_unknown()) {
        e.status = "budget-limited";
      } else {
        e.status = "witness-rejected";
        rep.agree = false;
      }
    } else {
      BlindResult b = blind_search(r, inst, budget);
      e.verdict = b.verdict;
      e.witness = b.witness;
      if (b.verdict.is_true()) {
        e.status = "contradiction";
        rep.agree = false;
      } else {
        e.status = "no-witness-found";
      }
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

std::string CrosscheckReport::to_string() const {
  std::ostringstream out;
  if (solution) {
    out << "pcp: solution";
    for (auto i : *solution) out << ' ' << i;
    out << '\n';
  } else {
    out << "pcp: no solution with at most " << max_seq_len << " pairs\n";
  }
  for (const auto& e : entries) {
    out << concat::to_string(e.reduction) << " over " << concat::to_string(structure_of(e.reduction)) << ": "
        << e.status << " (" << e.verdict.to_string() << ")";
    if (e.witness) out << " u=" << quoted(*e.witness);
    out << '\n';
  }
  out << "agreement: " << (agree ? "yes" : "NO") << '\n';
  return out.str();
}

nlohmann::json CrosscheckReport::to_json() const {
  nlohmann::json j;
  j["solution"] = solution ? nlohmann::json(*solution) : nlohmann::json(nullptr);
  j["max_seq_len"] = max_seq_len;
  j["budget"] = budget;
  j["agree"] = agree;
  j["reductions"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json k{{"reduction", concat::to_string(e.reduction)},
                     {"structure", concat::to_string(structure_of(e.reduction))},
                     {"status", e.status},
                     {"verdict", e.verdict.to_string()}};
    k["witness"] = e.witness ? nlohmann::json(e.witness->str()) : nlohmann::json(nullptr);
    j["reductions"].push_back(k);
  }
  return j;
}

}  // namespace concat
