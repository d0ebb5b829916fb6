#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "concat/logic.hpp"

namespace concat {

/// Syntax error with a 1-based source position and the tokens that would have been accepted.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string expected, std::string found);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::size_t line_, column_;
  std::string expected_, found_;
};

// Concrete grammar (ASCII):
//
//   term    := 'e' | '0' | '1' | ident | '"' bits '"' | term '*' term     ('*' left-assoc)
//   atom    := term '=' term | term '<:' term
//   formula := atom | '~' formula | formula '&' formula | formula '|' formula
//            | formula '->' formula | formula '<->' formula
//            | ('E'|'A') ident {',' ident} ['<:' term] '.' formula
//
// '~' binds tightest, then '&', '|', '->' (right-assoc), '<->'. Quantifier bodies extend as far
// right as possible. A string literal denotes the biteral of its bits; "" is e.

Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);
/// Formula if the whole input is a formula, otherwise a term; rethrows the formula error when
/// neither parse succeeds.
std::variant<Formula, Term> parse_any(std::string_view text);

std::string to_string(const Term& t);
std::string to_string(const Formula& f);

/// JSON tree: every node carries a "kind" tag.
///   terms:    empty | zero | one | var{name} | concat{left,right}
///   formulas: eq{lhs,rhs} | rel{lhs,rhs} | not{body} | and|or|implies|iff{left,right}
///             | exists|forall{var,body} | bounded_exists|bounded_forall{var,bound,body}
nlohmann::json to_json(const Term& t);
nlohmann::json to_json(const Formula& f);
Term term_from_json(const nlohmann::json& j);
Formula formula_from_json(const nlohmann::json& j);

}  // namespace concat
