#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "concat/logic.hpp"
#include "concat/semantics.hpp"

namespace concat {

struct PcpInstance {
  std::vector<std::pair<BitString, BitString>> pairs;
  friend bool operator==(const PcpInstance&, const PcpInstance&) = default;
};

/// 1-based indices into the instance's pairs.
using PcpSolution = std::vector<std::size_t>;

/// One pair per line: two whitespace-separated bit strings, '-' for ε. Blank lines and lines
/// starting with '#' are skipped. Throws std::invalid_argument.
PcpInstance parse_instance(std::string_view text);
std::string to_string(const PcpInstance& inst);

/// Throws std::out_of_range for an index outside 1..n.
bool verify_solution(const PcpInstance& inst, const PcpSolution& sol);

/// Breadth-first search over index sequences of length <= max_seq_len, pruned to sequences whose
/// two concatenations are prefix-consistent and merged on equal overhangs.
std::optional<PcpSolution> solve_pcp(const PcpInstance& inst, std::size_t max_seq_len);

/// N applied to every component.
PcpInstance n_transform(const PcpInstance& inst);

/// The four reductions: Σ(3,0,2) over D, Σ(1,2,1) over B, Σ(1,0,2) over B, Σ(4,1,1) over D.
enum class Reduction { D302, B121, B102, D411 };

std::string to_string(Reduction r);
/// "d302", "b121", "b102", "d411". Throws std::invalid_argument.
Reduction parse_reduction(const std::string& text);
Structure structure_of(Reduction r);
const std::vector<Reduction>& all_reductions();

/// Sentences of the form ∃u φ(u), instantiated with the N-encoded pairs.
Formula reduce_D_302(const PcpInstance& inst);
Formula reduce_B_121(const PcpInstance& inst);
Formula reduce_B_102(const PcpInstance& inst);
Formula reduce_D_411(const PcpInstance& inst);
Formula reduce(Reduction r, const PcpInstance& inst);

/// The string u built from a solution: blocks N(a_k) 0 1^4 0 N(b_k) between separators, where
/// a_k, b_k are the top and bottom concatenations of the first k indices. Separators are
/// 0 1^5 0 throughout, except for D411 where the k-th is 0 1^(4+k) 0.
BitString reduction_witness(Reduction r, const PcpInstance& inst, const PcpSolution& sol);

/// Truth of φ(u) for the reduction's sentence ∃u φ(u); inner unbounded quantifiers range over
/// strings of length <= max(budget, |u|).
Verdict check_witness(Reduction r, const PcpInstance& inst, const BitString& u, std::size_t budget,
                      std::size_t max_steps = 0);

struct BlindResult {
  Verdict verdict;  ///< True or Unknown(budget); never False
  std::optional<BitString> witness;
  std::size_t tried = 0;
};

/// Looks for u of length <= budget making φ(u) true. Only strings starting with one of the
/// sentence's opening blocks are tried, since every other u falsifies the first conjunct.
BlindResult blind_search(Reduction r, const PcpInstance& inst, std::size_t budget);

struct CrosscheckEntry {
  Reduction reduction;
  std::string status;  ///< "verified", "budget-limited", "no-witness-found", "contradiction"
  Verdict verdict;
  std::optional<BitString> witness;
};

struct CrosscheckReport {
  std::optional<PcpSolution> solution;
  std::size_t max_seq_len = 0;
  std::size_t budget = 0;
  std::vector<CrosscheckEntry> entries;
  bool agree = true;

  std::string to_string() const;
  nlohmann::json to_json() const;
};

/// Runs solve_pcp, then each reduction: with a found solution the constructed witness is checked
/// (with a work limit; an unfinished check is "budget-limited"), otherwise blind_search up to
/// `budget`. A reduction found true for an instance without a solution is a contradiction.
CrosscheckReport crosscheck(const PcpInstance& inst, std::size_t budget, std::size_t max_seq_len = 8,
                            std::size_t max_steps = 50000000);

}  // namespace concat
