#include <doctest.h>

#include "concat/pcp.hpp"
#include "concat/syntax.hpp"
#include "gen.hpp"

using namespace concat;

namespace {

PcpInstance inst(const char* text) { return parse_instance(text); }

PcpInstance random_instance(gen::Rng& r, std::size_t n, std::size_t max_len) {
  PcpInstance p;
  for (std::size_t i = 0; i < n; ++i) p.pairs.emplace_back(r.bits(r.below(max_len + 1)), r.bits(r.below(max_len + 1)));
  return p;
}

// Shortest solution length by exhaustive enumeration of index sequences.
std::optional<std::size_t> brute_pcp(const PcpInstance& p, std::size_t max_len) {
  std::vector<PcpSolution> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<PcpSolution> next;
    for (const auto& s : layer)
      for (std::size_t i = 1; i <= p.pairs.size(); ++i) {
        PcpSolution t = s;
        t.push_back(i);
        if (verify_solution(p, t)) return len;
        next.push_back(std::move(t));
      }
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("instance files") {
  auto p = inst("# example\n1 101\n\n10 00\n011   11\n- 1\n");
  REQUIRE(p.pairs.size() == 4);
  CHECK(p.pairs[3].first.empty());
  CHECK(to_string(p) == "1 101\n10 00\n011 11\n- 1\n");
  CHECK(parse_instance(to_string(p)) == p);
  CHECK_THROWS_AS(inst("0 1 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(inst("0 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(inst("\n# nothing\n"), std::invalid_argument);
}

TEST_CASE("verify and solve") {
  CHECK(verify_solution(inst("0 0\n"), {1}));
  CHECK_FALSE(verify_solution(inst("0 1\n"), {1}));
  auto three = inst("1 101\n10 00\n011 11\n");
  CHECK(verify_solution(three, {1, 3, 2, 3}));
  CHECK_THROWS_AS(verify_solution(three, {4}), std::out_of_range);
  CHECK(solve_pcp(inst("0 0\n"), 1) == PcpSolution{1});
  CHECK_FALSE(solve_pcp(inst("0 1\n"), 20));
  auto s = solve_pcp(three, 8);
  REQUIRE(s);
  CHECK(verify_solution(three, *s));
  CHECK_FALSE(solve_pcp(three, 3));
}

TEST_CASE("solve_pcp agrees with exhaustive enumeration") {
  gen::Rng r(3);
  for (int i = 0; i < 200; ++i) {
    PcpInstance p = random_instance(r, 1 + r.below(3), 3);
    auto s = solve_pcp(p, 5);
    auto b = brute_pcp(p, 5);
    CHECK(s.has_value() == b.has_value());
    if (s) {
      CHECK(verify_solution(p, *s));
      CHECK(s->size() == *b);
    }
  }
}

TEST_CASE("n_transform") {
  CHECK(n_transform(inst("0 0\n")) == inst("010 010\n"));
  CHECK(n_transform(inst("- 1\n")) == inst("- 0110\n"));
  gen::Rng r(8);
  for (int i = 0; i < 30; ++i) {
    PcpInstance p = random_instance(r, 1 + r.below(3), 3);
    PcpInstance q = n_transform(p);
    auto a = solve_pcp(p, 6);
    auto b = solve_pcp(q, 6);
    CHECK(a.has_value() == b.has_value());
    if (a) CHECK(verify_solution(q, *a));
    if (b) CHECK(verify_solution(p, *b));
  }
}

TEST_CASE("reductions classify by fragment") {
  gen::Rng r(4);
  for (std::size_t n = 1; n <= 3; ++n) {
    PcpInstance p = random_instance(r, n, 3);
    CHECK(classify(reduce_D_302(p)) == SigmaClass{true, 3, 0, 2});
    CHECK(classify(reduce_B_121(p)) == SigmaClass{true, 1, 2, 1});
    CHECK(classify(reduce_B_102(p)) == SigmaClass{true, 1, 0, 2});
    CHECK(classify(reduce_D_411(p)) == SigmaClass{true, 4, 1, 1});
    for (Reduction red : all_reductions()) CHECK(is_sentence(reduce(red, p)));
  }
  CHECK(parse_reduction("b121") == Reduction::B121);
  CHECK_THROWS_AS(parse_reduction("x"), std::invalid_argument);
}

TEST_CASE("constructed witnesses") {
  auto one = inst("0 0\n");
  CHECK(reduction_witness(Reduction::D302, one, {1}) == BitString("01111100100111100100111110"));
  CHECK(reduction_witness(Reduction::D411, one, {1}) == BitString("011111001001111001001111110"));
  for (Reduction red : all_reductions()) CHECK(check_witness(red, one, reduction_witness(red, one, {1}), 0).is_true());
  // a damaged witness is not accepted
  for (Reduction red : all_reductions()) {
    BitString u = reduction_witness(red, one, {1});
    std::string s = u.str();
    s[8] = s[8] == '0' ? '1' : '0';
    CHECK_FALSE(check_witness(red, one, BitString(s), 0).is_true());
  }
  gen::Rng r(12);
  int solved = 0;
  for (int i = 0; i < 40 && solved < 8; ++i) {
    PcpInstance p = random_instance(r, 1 + r.below(2), 2);
    auto s = solve_pcp(p, 3);
    if (!s) continue;
    ++solved;
    for (Reduction red : all_reductions())
      CHECK_MESSAGE(check_witness(red, p, reduction_witness(red, p, *s), 0).is_true(), to_string(p));
  }
  CHECK(solved > 0);
}

TEST_CASE("blind search") {
  auto one = inst("0 0\n");
  auto b = blind_search(Reduction::D302, one, 26);
  CHECK(b.verdict.is_true());
  CHECK(b.witness == reduction_witness(Reduction::D302, one, {1}));
  CHECK(blind_search(Reduction::B102, one, 25).verdict.is_unknown());
  auto none = blind_search(Reduction::B121, inst("0 1\n"), 30);
  CHECK(none.verdict.is_unknown());
  CHECK(none.tried > 0);
}

TEST_CASE("crosscheck") {
  auto rep = crosscheck(inst("0 0\n"), 8);
  CHECK(rep.agree);
  for (const auto& e : rep.entries) CHECK(e.status == "verified");
  rep = crosscheck(inst("0 1\n"), 28);
  CHECK(rep.agree);
  CHECK_FALSE(rep.solution);
  for (const auto& e : rep.entries) CHECK(e.status == "no-witness-found");
  auto j = rep.to_json();
  CHECK(j["reductions"].size() == 4);
  CHECK(rep.to_string().find("agreement: yes") != std::string::npos);
}
