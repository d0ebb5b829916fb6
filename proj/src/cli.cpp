#include "concat/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "concat/axiomatics.hpp"
#include "concat/decide.hpp"
#include "concat/normalform.hpp"
#include "concat/pcp.hpp"
#include "concat/syntax.hpp"
#include "concat/wordeq.hpp"

namespace concat {

namespace {

using json = nlohmann::json;

// Normal forms above this many matrix symbols are summarized instead of printed.
constexpr std::size_t kMaxPrinted = 4000;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void usage(const std::string& msg) { throw Failure{2, msg}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json assignment_json(const Assignment& a) {
  json j = json::object();
  for (const auto& [k, v] : a) j[k] = v.str();
  return j;
}

std::string assignment_text(const Assignment& a) {
  std::string out;
  for (const auto& [k, v] : a) out += (out.empty() ? "" : ", ") + k + "=" + quoted(v);
  return out;
}

json class_json(const SigmaClass& c) {
  if (!c.sigma) return {{"sigma", false}};
  return {{"sigma", true}, {"n", c.n}, {"m", c.m}, {"k", c.k}};
}

std::string entry_text(const PrefixEntry& e) {
  switch (e.kind) {
    case PrefixEntry::Kind::Exists: return "E " + e.var;
    case PrefixEntry::Kind::BoundedExists: return "E " + e.var + " <: " + to_string(*e.bound);
    case PrefixEntry::Kind::BoundedForall: return "A " + e.var + " <: " + to_string(*e.bound);
  }
  return {};
}

std::string step_text(const ProofStep& s) {
  std::string args;
  if (s.args.axiom) args += " " + s.args.axiom->to_string();
  if (s.args.var) args += " " + *s.args.var;
  for (const auto& t : s.args.terms) args += " " + to_string(t);
  if (s.args.formula) args += " [" + to_string(*s.args.formula) + "]";
  std::string prem;
  for (int p : s.premises) prem += (prem.empty() ? " from " : ",") + std::to_string(p);
  return std::to_string(s.id) + ". " + to_string(s.formula) + "    " + s.rule + args + prem;
}

std::vector<std::size_t> parse_indices(const std::vector<std::string>& items) {
  std::vector<std::size_t> out;
  for (const auto& s : items) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty()) usage("bad index '" + s + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"First-order concatenation theory over {0,1}*", "concat_cli"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "JSON output");

  std::string expr, structure = "B", file, target = "d302", output;
  std::size_t budget = 8, max_len = 8, bound = 8, search_budget = 40;
  std::vector<std::string> vars, indices;

  auto structure_opt = [&](CLI::App* c, const char* name) {
    c->add_option(name, structure, "B (substring) or D (prefix)")->check(CLI::IsMember({"B", "D"}));
  };

  auto* parse = app.add_subcommand("parse", "print the syntax tree as JSON");
  parse->add_option("expr", expr)->required();

  auto* cls = app.add_subcommand("classify", "Σ(n,m,k) class");
  cls->add_option("expr", expr)->required();

  auto* ev = app.add_subcommand("eval", "three-valued evaluation");
  structure_opt(ev, "--structure");
  ev->add_option("--budget", budget, "max length for unbounded quantifiers");
  ev->add_option("--var", vars, "free variable value, name=bits");
  ev->add_option("expr", expr)->required();

  auto* norm = app.add_subcommand("normalize", "prenex form over one equation");
  structure_opt(norm, "--structure");
  norm->add_option("expr", expr)->required();

  auto* seq = app.add_subcommand("solve-eq", "solve a word equation");
  seq->add_option("--max-len", max_len, "bound on the summed lengths of the solution");
  seq->add_option("eq", expr)->required();

  auto* dec = app.add_subcommand("decide", "decide a sentence by its fragment");
  structure_opt(dec, "--structure");
  dec->add_option("--budget", budget);
  dec->add_option("expr", expr)->required();

  auto* prove = app.add_subcommand("prove", "synthesize a proof of a true Σ-sentence");
  structure_opt(prove, "--theory");
  prove->add_option("--budget", budget);
  prove->add_option("-o,--output", output, "write the proof JSON to a file");
  prove->add_option("expr", expr)->required();

  auto* check = app.add_subcommand("check", "check a proof file");
  std::string check_theory;
  check->add_option("--theory", check_theory)->check(CLI::IsMember({"B", "D"}));
  check->add_option("proof", file)->required();

  auto* pcp = app.add_subcommand("pcp", "Post correspondence problem tools");
  pcp->require_subcommand(1);
  auto* psolve = pcp->add_subcommand("solve", "search for a solution");
  psolve->add_option("--bound", bound, "max number of pairs");
  psolve->add_option("instance", file)->required();
  auto* pverify = pcp->add_subcommand("verify", "check a solution");
  pverify->add_option("instance", file)->required();
  pverify->add_option("indices", indices)->required();
  auto* preduce = pcp->add_subcommand("reduce", "print a reduction sentence");
  preduce->add_option("--target", target)->check(CLI::IsMember({"d302", "b121", "b102", "d411"}));
  preduce->add_option("instance", file)->required();
  auto* pcross = pcp->add_subcommand("crosscheck", "compare the reductions with the PCP search");
  pcross->add_option("--budget", search_budget, "max length of u in the blind search");
  pcross->add_option("--bound", bound, "max number of pairs");
  pcross->add_option("instance", file)->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*parse) {
      auto v = parse_any(expr);
      out << (std::holds_alternative<Formula>(v) ? to_json(std::get<Formula>(v)) : to_json(std::get<Term>(v))).dump(2)
          << "\n";
      return 0;
    }
    if (*cls) {
      SigmaClass c = classify(parse_formula(expr));
      if (as_json)
        out << class_json(c).dump() << "\n";
      else
        out << c.to_string() << "\n";
      return 0;
    }
    Structure st = parse_structure(structure);
    if (*ev) {
      Assignment a;
      for (const auto& v : vars) {
        auto eq = v.find('=');
        if (eq == std::string::npos) usage("--var expects name=bits");
        std::string bits = v.substr(eq + 1);
        if (bits.size() >= 2 && bits.front() == '"' && bits.back() == '"') bits = bits.substr(1, bits.size() - 2);
        a[v.substr(0, eq)] = BitString(bits);
      }
      EvalResult r = evaluate(parse_formula(expr), st, a, {budget, 0});
      if (as_json) {
        out << json{{"verdict", r.verdict.to_string()}, {"witness", assignment_json(r.witness)}}.dump() << "\n";
      } else {
        out << r.verdict.to_string();
        if (!r.witness.empty()) out << ", witness " << assignment_text(r.witness);
        out << "\n";
      }
      return 0;
    }
    if (*norm) {
      PrenexNormalForm nf = normalize(parse_formula(expr), st);
      bool small = nf.size() <= kMaxPrinted;
      if (as_json) {
        json prefix = json::array();
        for (const auto& e : nf.prefix) prefix.push_back(entry_text(e));
        json j{{"structure", structure}, {"class", class_json(nf.shape())}, {"prefix", prefix},
               {"matrix_symbols", nf.size()}};
        j["formula"] = small ? json(to_string(nf.to_formula())) : json(nullptr);
        out << j.dump() << "\n";
      } else if (small) {
        out << to_string(nf.to_formula()) << "\n";
      } else {
        out << "class " << nf.shape().to_string() << ", " << nf.prefix.size() << " quantifiers, matrix of "
            << nf.size() << " symbols (too large to print)\n";
      }
      return 0;
    }
    if (*seq) {
      WordEquation e = flatten(parse_formula(expr));
      EqVerdict r = solve(e, max_len);
      if (as_json) {
        const char* kind = r.kind == EqVerdict::Kind::Sat     ? "sat"
                           : r.kind == EqVerdict::Kind::Unsat ? "unsat"
                                                              : "unsat-within-bound";
        out << json{{"result", kind}, {"solution", assignment_json(r.solution)}, {"bound", r.bound},
                    {"states", r.states}}
                   .dump()
            << "\n";
      } else {
        out << r.to_string() << "\n";
      }
      return 0;
    }
    if (*dec) {
      Decision d = decide(parse_formula(expr), st, budget);
      if (as_json)
        out << json{{"verdict", d.verdict.to_string()}, {"route", d.route}, {"justification", d.justification}}.dump()
            << "\n";
      else
        out << d.verdict.to_string() << "\nroute: " << d.route << "\n" << d.justification << "\n";
      return 0;
    }
    if (*prove) {
      Proof p;
      try {
        p = prove_sigma(parse_formula(expr), st, budget);
      } catch (const ProofRefused& e) {
        const char* why = e.reason() == ProofRefused::Reason::False ? "false" : "unknown";
        if (as_json)
          out << json{{"refused", why}, {"message", e.what()}}.dump() << "\n";
        else
          out << "refused (" << why << "): " << e.what() << "\n";
        return 1;
      }
      if (!output.empty()) {
        std::ofstream f(output);
        if (!f) usage("cannot write '" + output + "'");
        f << to_json(p).dump(2) << "\n";
      }
      if (as_json) {
        out << to_json(p).dump(2) << "\n";
      } else {
        for (const auto& s : p.steps) out << step_text(s) << "\n";
      }
      return 0;
    }
    if (*check) {
      Proof p;
      try {
        p = proof_from_json(json::parse(read_file(file)));
      } catch (const json::exception& e) {
        usage(std::string("malformed proof file: ") + e.what());
      }
      if (!check_theory.empty()) p.theory = parse_structure(check_theory);
      CheckResult r = check_proof(p);
      if (as_json)
        out << json{{"ok", r.ok}, {"step", r.step}, {"reason", r.reason}}.dump() << "\n";
      else if (r.ok)
        out << "ok: " << p.steps.size() << " steps\n";
      else
        out << "failed at step " << r.step << ": " << r.reason << "\n";
      return r.ok ? 0 : 1;
    }
    if (*pcp) {
      PcpInstance inst = parse_instance(read_file(file));
      if (*psolve) {
        auto s = solve_pcp(inst, bound);
        if (as_json) {
          out << json{{"solution", s ? json(*s) : json(nullptr)}, {"bound", bound}}.dump() << "\n";
        } else if (s) {
          for (std::size_t i = 0; i < s->size(); ++i) out << (i ? " " : "") << (*s)[i];
          out << "\n";
        } else {
          out << "none within bound " << bound << "\n";
        }
        return 0;
      }
      if (*pverify) {
        bool ok = verify_solution(inst, parse_indices(indices));
        if (as_json)
          out << json{{"valid", ok}}.dump() << "\n";
        else
          out << (ok ? "valid" : "invalid") << "\n";
        return ok ? 0 : 1;
      }
      if (*preduce) {
        Reduction r = parse_reduction(target);
        Formula f = reduce(r, inst);
        if (as_json)
          out << json{{"target", target}, {"structure", to_string(structure_of(r))},
                      {"class", class_json(classify(f))}, {"formula", to_json(f)}}
                     .dump()
              << "\n";
        else
          out << to_string(f) << "\n";
        return 0;
      }
      if (*pcross) {
        CrosscheckReport rep = crosscheck(inst, search_budget, bound);
        out << (as_json ? rep.to_json().dump(2) + "\n" : rep.to_string());
        return rep.agree ? 0 : 1;
      }
    }
  } catch (const Failure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnboundVariable& e) {
    err << "error: " << e.what() << " (use --var)\n";
    return 2;
  }
  return 2;
}

}  // namespace concat
