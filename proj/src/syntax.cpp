#include "concat/syntax.hpp"

#include <cctype>
#include <vector>

namespace concat {

ParseError::ParseError(std::size_t line, std::size_t column, std::string expected, std::string found)
    : std::runtime_error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": expected " +
                         expected + ", found " + found),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok {
  Empty,    // e
  Zero,     // 0
  One,      // 1
  Ident,
  Bits,     // "..."
  Star,
  Eq,
  Rel,      // <:
  Not,
  And,
  Or,
  Implies,
  Iff,
  Exists,   // E
  Forall,   // A
  Dot,
  Comma,
  LParen,
  RParen,
  End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  if (t.kind == Tok::Bits) return "'\"" + t.text + "\"'";
  return "'" + t.text + "'";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    std::size_t l = line, cl = col;
    auto push = [&](Tok k, std::size_t n) {
      out.push_back({k, std::string(src.substr(i, n)), l, cl});
      advance(n);
    };
    if (src.substr(i, 3) == "<->") {
      push(Tok::Iff, 3);
    } else if (src.substr(i, 2) == "->") {
      push(Tok::Implies, 2);
    } else if (src.substr(i, 2) == "<:") {
      push(Tok::Rel, 2);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && (src[j] == '0' || src[j] == '1')) ++j;
      if (j >= src.size() || src[j] != '"') {
        std::string found = j >= src.size() ? "end of input" : "'" + std::string(1, src[j]) + "'";
        // report at the offending character
        std::size_t bad_col = cl + (j - i);
        throw ParseError(l, bad_col, "'0', '1' or closing '\"'", found);
      }
      out.push_back({Tok::Bits, std::string(src.substr(i + 1, j - i - 1)), l, cl});
      advance(j - i + 1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      std::string word(src.substr(i, j - i));
      Tok k = Tok::Ident;
      if (word == "e")
        k = Tok::Empty;
      else if (word == "E")
        k = Tok::Exists;
      else if (word == "A")
        k = Tok::Forall;
      push(k, j - i);
    } else {
      switch (c) {
        case '0': push(Tok::Zero, 1); break;
        case '1': push(Tok::One, 1); break;
        case '*': push(Tok::Star, 1); break;
        case '=': push(Tok::Eq, 1); break;
        case '~': push(Tok::Not, 1); break;
        case '&': push(Tok::And, 1); break;
        case '|': push(Tok::Or, 1); break;
        case '.': push(Tok::Dot, 1); break;
        case ',': push(Tok::Comma, 1); break;
        case '(': push(Tok::LParen, 1); break;
        case ')': push(Tok::RParen, 1); break;
        default:
          throw ParseError(l, cl, "a token", "'" + std::string(1, c) + "'");
      }
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula whole_formula() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  Term whole_term() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void fail(const std::string& expected) {
    const Token& t = peek();
    throw ParseError(t.line, t.column, expected, describe(t));
  }

  const Token& expect(Tok k, const std::string& what) {
    if (!at(k)) fail(what);
    return toks_[pos_++];
  }

  // formula := implication {'<->' implication}
  Formula formula() {
    Formula f = implication();
    while (at(Tok::Iff)) {
      ++pos_;
      f = Formula::iff(f, implication());
    }
    return f;
  }

  Formula implication() {
    Formula f = disjunction();
    if (at(Tok::Implies)) {
      ++pos_;
      return Formula::implies(f, implication());
    }
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (at(Tok::Or)) {
      ++pos_;
      f = Formula::disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (at(Tok::And)) {
      ++pos_;
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    if (at(Tok::Not)) {
      ++pos_;
      return Formula::negation(unary());
    }
    if (at(Tok::Exists) || at(Tok::Forall)) return quantifier();
    return primary();
  }

  Formula quantifier() {
    bool universal = at(Tok::Forall);
    ++pos_;
    std::vector<std::string> vars;
    vars.push_back(expect(Tok::Ident, "a variable name").text);
    while (at(Tok::Comma)) {
      ++pos_;
      vars.push_back(expect(Tok::Ident, "a variable name").text);
    }
    std::optional<Term> bound;
    std::size_t bound_pos = pos_;
    if (at(Tok::Rel)) {
      ++pos_;
      bound_pos = pos_;
      bound = term();
    }
    if (!at(Tok::Dot)) fail(bound ? "'*' or '.'" : "',', '<:' or '.'");
    ++pos_;
    Formula body = formula();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      if (!bound) {
        body = universal ? Formula::forall(*it, body) : Formula::exists(*it, body);
        continue;
      }
      if (bound->contains_var(*it)) {
        const Token& t = toks_[bound_pos];
        throw ParseError(t.line, t.column, "a bound term not mentioning '" + *it + "'", describe(t));
      }
      body = universal ? Formula::bounded_forall(*it, *bound, body) : Formula::bounded_exists(*it, *bound, body);
    }
    return body;
  }

  // An opening parenthesis may start either a parenthesised term inside an atom or a
  // parenthesised formula; try the atom reading first and fall back.
  Formula primary() {
    std::size_t start = pos_;
    if (!at(Tok::LParen)) return atom();
    try {
      return atom();
    } catch (const ParseError& atom_error) {
      pos_ = start + 1;
      try {
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      } catch (const ParseError& formula_error) {
        // report whichever reading got further
        auto key = [](const ParseError& e) { return std::make_pair(e.line(), e.column()); };
        if (key(atom_error) > key(formula_error)) throw atom_error;
        throw;
      }
    }
  }

  Formula atom() {
    Term lhs = term();
    if (at(Tok::Eq)) {
      ++pos_;
      return Formula::eq(lhs, term());
    }
    if (at(Tok::Rel)) {
      ++pos_;
      return Formula::rel(lhs, term());
    }
    fail("'*', '=' or '<:'");
  }

  Term term() {
    Term t = term_primary();
    while (at(Tok::Star)) {
      ++pos_;
      t = Term::concat(t, term_primary());
    }
    return t;
  }

  Term term_primary() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::Empty: ++pos_; return Term::empty();
      case Tok::Zero: ++pos_; return Term::zero();
      case Tok::One: ++pos_; return Term::one();
      case Tok::Ident: ++pos_; return Term::var(tok.text);
      case Tok::Bits: ++pos_; return biteral(BitString(tok.text));
      case Tok::LParen: {
        ++pos_;
        Term t = term();
        expect(Tok::RParen, "'*' or ')'");
        return t;
      }
      default:
        fail("a term");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- printing

std::string term_text(const Term& t, bool as_right_operand) {
  if (t.is(Term::Kind::Concat)) {
    if (auto bits = as_biteral(t)) return quoted(*bits);
    std::string s = term_text(t.left(), false) + " * " + term_text(t.right(), true);
    return as_right_operand ? "(" + s + ")" : s;
  }
  switch (t.kind()) {
    case Term::Kind::Empty: return "e";
    case Term::Kind::Zero: return "0";
    case Term::Kind::One: return "1";
    default: return t.name();
  }
}

// Precedence levels: <-> 1, -> 2, | 3, & 4, unary 5. Quantifiers print at level 0 so they are
// parenthesised anywhere but the top or another quantifier's body.
std::string formula_text(const Formula& f, int ctx) {
  using K = Formula::Kind;
  auto wrap = [&](int level, std::string s) { return ctx > level ? "(" + s + ")" : s; };
  switch (f.kind()) {
    case K::Eq:
      return term_text(f.lhs(), false) + " = " + term_text(f.rhs(), false);
    case K::Rel:
      return term_text(f.lhs(), false) + " <: " + term_text(f.rhs(), false);
    case K::Not:
      return "~" + formula_text(f.body(), 5);
    case K::Iff:
      return wrap(1, formula_text(f.left(), 1) + " <-> " + formula_text(f.right(), 2));
    case K::Implies:
      return wrap(2, formula_text(f.left(), 3) + " -> " + formula_text(f.right(), 2));
    case K::Or:
      return wrap(3, formula_text(f.left(), 3) + " | " + formula_text(f.right(), 4));
    case K::And:
      return wrap(4, formula_text(f.left(), 4) + " & " + formula_text(f.right(), 5));
    default: {
      bool universal = f.is(K::Forall) || f.is(K::BoundedForall);
      std::string s = std::string(universal ? "A " : "E ") + f.var();
      if (f.is_bounded()) s += " <: " + term_text(f.bound(), false);
      s += " . " + formula_text(f.body(), 0);
      return wrap(0, s);
    }
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).whole_formula(); }

Term parse_term(std::string_view text) { return Parser(tokenize(text)).whole_term(); }

std::variant<Formula, Term> parse_any(std::string_view text) {
  try {
    return parse_formula(text);
  } catch (const ParseError&) {
    try {
      return parse_term(text);
    } catch (const ParseError&) {
    }
    throw;
  }
}

std::string to_string(const Term& t) { return term_text(t, false); }

std::string to_string(const Formula& f) { return formula_text(f, 0); }

// ---------------------------------------------------------------- JSON

using nlohmann::json;

json to_json(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Empty: return {{"kind", "empty"}};
    case Term::Kind::Zero: return {{"kind", "zero"}};
    case Term::Kind::One: return {{"kind", "one"}};
    case Term::Kind::Var: return {{"kind", "var"}, {"name", t.name()}};
    case Term::Kind::Concat:
      return {{"kind", "concat"}, {"left", to_json(t.left())}, {"right", to_json(t.right())}};
  }
  return {};
}

json to_json(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq: return {{"kind", "eq"}, {"lhs", to_json(f.lhs())}, {"rhs", to_json(f.rhs())}};
    case K::Rel: return {{"kind", "rel"}, {"lhs", to_json(f.lhs())}, {"rhs", to_json(f.rhs())}};
    case K::Not: return {{"kind", "not"}, {"body", to_json(f.body())}};
    case K::And: return {{"kind", "and"}, {"left", to_json(f.left())}, {"right", to_json(f.right())}};
    case K::Or: return {{"kind", "or"}, {"left", to_json(f.left())}, {"right", to_json(f.right())}};
    case K::Implies: return {{"kind", "implies"}, {"left", to_json(f.left())}, {"right", to_json(f.right())}};
    case K::Iff: return {{"kind", "iff"}, {"left", to_json(f.left())}, {"right", to_json(f.right())}};
    case K::Exists: return {{"kind", "exists"}, {"var", f.var()}, {"body", to_json(f.body())}};
    case K::Forall: return {{"kind", "forall"}, {"var", f.var()}, {"body", to_json(f.body())}};
    case K::BoundedExists:
      return {{"kind", "bounded_exists"}, {"var", f.var()}, {"bound", to_json(f.bound())}, {"body", to_json(f.body())}};
    case K::BoundedForall:
      return {{"kind", "bounded_forall"}, {"var", f.var()}, {"bound", to_json(f.bound())}, {"body", to_json(f.body())}};
  }
  return {};
}

Term term_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "empty") return Term::empty();
  if (kind == "zero") return Term::zero();
  if (kind == "one") return Term::one();
  if (kind == "var") return Term::var(j.at("name").get<std::string>());
  if (kind == "concat") return Term::concat(term_from_json(j.at("left")), term_from_json(j.at("right")));
  throw std::invalid_argument("unknown term kind '" + kind + "'");
}

Formula formula_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  auto lhs = [&] { return term_from_json(j.at("lhs")); };
  auto rhs = [&] { return term_from_json(j.at("rhs")); };
  auto left = [&] { return formula_from_json(j.at("left")); };
  auto right = [&] { return formula_from_json(j.at("right")); };
  auto body = [&] { return formula_from_json(j.at("body")); };
  auto var = [&] { return j.at("var").get<std::string>(); };
  if (kind == "eq") return Formula::eq(lhs(), rhs());
  if (kind == "rel") return Formula::rel(lhs(), rhs());
  if (kind == "not") return Formula::negation(body());
  if (kind == "and") return Formula::conj(left(), right());
  if (kind == "or") return Formula::disj(left(), right());
  if (kind == "implies") return Formula::implies(left(), right());
  if (kind == "iff") return Formula::iff(left(), right());
  if (kind == "exists") return Formula::exists(var(), body());
  if (kind == "forall") return Formula::forall(var(), body());
  if (kind == "bounded_exists") return Formula::bounded_exists(var(), term_from_json(j.at("bound")), body());
  if (kind == "bounded_forall") return Formula::bounded_forall(var(), term_from_json(j.at("bound")), body());
  throw std::invalid_argument("unknown formula kind '" + kind + "'");
}

}  // namespace concat
