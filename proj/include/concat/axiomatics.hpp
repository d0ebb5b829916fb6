#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "concat/logic.hpp"
#include "concat/semantics.hpp"

namespace concat {

/// B1..B11 or D1..D7. D1-D4 are the same formulas as B1-B4.
struct AxiomRef {
  Structure theory = Structure::B;
  int index = 1;

  std::string to_string() const;
  /// Parses "B7", "D3", ... Throws std::invalid_argument.
  static AxiomRef parse(const std::string& text);
  friend bool operator==(const AxiomRef&, const AxiomRef&) = default;
};

/// The closed axiom formula.
Formula axiom(const AxiomRef& ref);
/// All axioms of a theory in order.
std::vector<AxiomRef> axioms(Structure theory);
/// Strips one leading ∀ per term, substituting the term for its variable.
/// Throws std::invalid_argument if there are more terms than leading ∀.
Formula instantiate(const Formula& f, const std::vector<Term>& terms);

// Rules. Premises are listed in the order given.
//
//   AxiomInstance(axiom, terms)  -          ⊢ axiom with all outer ∀ instantiated
//   Refl(term)                   -          ⊢ t = t
//   Sym                          s = t      ⊢ t = s        (also ¬ s = t ⊢ ¬ t = s)
//   Trans                        s = t, t = u ⊢ s = u
//   CongL(term u)                s = t      ⊢ u s = u t
//   CongR(term v)                s = t      ⊢ s v = t v
//   AndIntro                     φ, ψ       ⊢ φ ∧ ψ
//   AndElimL / AndElimR          φ ∧ ψ      ⊢ φ / ψ
//   OrIntroL(formula ψ)          φ          ⊢ φ ∨ ψ
//   OrIntroR(formula ψ)          φ          ⊢ ψ ∨ φ
//   ModusPonens                  φ, φ → ψ   ⊢ ψ
//   IffToImpL / IffToImpR        φ ↔ ψ      ⊢ φ → ψ / ψ → φ
//   Contrapose                   φ → ψ, ¬ψ  ⊢ ¬φ
//   NegOrIntro                   ¬φ, ¬ψ     ⊢ ¬(φ ∨ ψ)
//   ExistsIntro(var x, term w)   φ(w)       ⊢ ∃x φ(x)
//   Subst(var z, formula θ)      s = t, θ(s) ⊢ θ(t)
//   Distinguish(var z, formula θ) θ(s), ¬θ(t) ⊢ ¬ s = t
//   BoundedCover(axiom, [term y]) derives (∀x ⊑ T)φ from
//       B5/D5: φ(e)                              with T = e
//       B6/B7: φ(e), φ(c)                        with T = c
//       B8-B11: (∀x⊑a y)φ, (∀x⊑y b)φ, φ(a y b)   with T = a y b, (a,b) = 00, 01, 10, 11
//       D6/D7: (∀x⪯y)φ, φ(y c)                   with T = y c
//
// Formulas are compared after expanding bounded quantifiers and nothing else.

struct StepArgs {
  std::optional<AxiomRef> axiom;
  std::vector<Term> terms;
  std::optional<std::string> var;
  std::optional<Formula> formula;
};

struct ProofStep {
  int id = 0;
  std::string rule;
  StepArgs args;
  std::vector<int> premises;
  Formula formula = Formula::eq(Term::empty(), Term::empty());
};

struct Proof {
  Structure theory = Structure::B;
  Formula goal = Formula::eq(Term::empty(), Term::empty());
  std::vector<ProofStep> steps;
};

struct CheckResult {
  bool ok = true;
  int step = 0;        ///< first failing step id; 0 for a failure not tied to a step
  std::string reason;  ///< "unknown rule", "bad premise", "bad premise shape", "wrong substitution", ...

  static CheckResult failure(int step, std::string reason) { return {false, step, std::move(reason)}; }
};

CheckResult check_proof(const Proof& p);

/// {"theory", "goal", "steps": [{"id", "rule", "args", "premises", "formula"}]}; formulas and
/// terms are stored in concrete syntax.
nlohmann::json to_json(const Proof& p);
/// Throws std::invalid_argument or ParseError on malformed input.
Proof proof_from_json(const nlohmann::json& j);

class ProofRefused : public std::runtime_error {
 public:
  enum class Reason { False, Unknown };
  ProofRefused(Reason r, const std::string& what) : std::runtime_error(what), reason_(r) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

/// Accumulates steps, reusing the step of any formula that was already derived.
class ProofBuilder {
 public:
  explicit ProofBuilder(Structure theory) : theory_(theory) {}

  int add(std::string rule, StepArgs args, std::vector<int> premises, Formula formula);
  std::optional<int> find(const Formula& f) const;
  const Formula& formula(int id) const { return steps_.at(id - 1).formula; }
  Structure theory() const { return theory_; }
  std::size_t size() const { return steps_.size(); }
  Proof finish(const Formula& goal) const;

 private:
  Structure theory_;
  std::vector<ProofStep> steps_;
  std::map<std::string, int> index_;
};

/// Proof of t = b for the biteral b denoting t. Throws std::invalid_argument if t has variables.
Proof prove_term_eq_biteral(const Term& t, Structure theory);
/// Proof of a true variable-free literal. Throws ProofRefused for false literals and
/// std::invalid_argument for anything else.
Proof prove_atomic(const Formula& literal, Structure theory);
/// Proof of a true Σ-sentence; unbounded ∃ witnesses are looked for among strings of length
/// <= budget. Throws ProofRefused (False or Unknown) and std::invalid_argument for non-Σ input.
Proof prove_sigma(const Formula& f, Structure theory, std::size_t budget);

}  // namespace concat
