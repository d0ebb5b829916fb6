#include <doctest.h>

#include <set>
#include <stdexcept>

#include "concat/strings.hpp"

using namespace concat;

namespace {
BitString b(const char* s) { return BitString(s); }
}  // namespace

TEST_CASE("concat examples") {
  CHECK(concat::concat(b(""), b("")) == b(""));
  CHECK(concat::concat(b("01"), b("000")) == b("01000"));
  CHECK(concat::concat(b("1"), b("")) == b("1"));
}

TEST_CASE("rejects non-bits") { CHECK_THROWS_AS(BitString("012"), std::invalid_argument); }

TEST_CASE("substring and prefix") {
  CHECK(is_substring(b("01"), b("0110")));
  CHECK(is_substring(b("11"), b("0110")));
  CHECK_FALSE(is_substring(b("00"), b("0110")));
  CHECK(is_prefix(b(""), b("101")));
  CHECK(is_prefix(b("10"), b("101")));
  CHECK_FALSE(is_prefix(b("1"), b("01")));
}

TEST_CASE("substring and prefix sets") {
  CHECK(prefixes(b("01")) == std::vector<BitString>{b(""), b("0"), b("01")});
  CHECK(substrings(b("01")) == std::vector<BitString>{b(""), b("0"), b("1"), b("01")});
  CHECK(substrings(b("")) == std::vector<BitString>{b("")});
}

TEST_CASE("n_encode examples") {
  CHECK(n_encode(b("")) == b(""));
  CHECK(n_encode(b("0")) == b("010"));
  CHECK(n_encode(b("1")) == b("0110"));
  CHECK(n_encode(b("01")) == b("0100110"));
}

TEST_CASE("all_strings is shortlex and complete") {
  auto all = all_strings(4);
  CHECK(all.size() == 31);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
}

TEST_CASE("relation properties over short strings") {
  auto all = all_strings(4);
  for (const auto& v : all) {
    CHECK(prefixes(v).size() == v.size() + 1);
    auto subs = substrings(v);
    std::set<BitString> sub_set(subs.begin(), subs.end());
    for (const auto& p : prefixes(v)) CHECK(sub_set.count(p) == 1);
    for (const auto& u : all) {
      if (is_prefix(u, v)) CHECK(is_substring(u, v));
      // brute-force oracle for the substring relation
      bool found = false;
      for (const auto& x : all)
        for (const auto& y : all)
          if (concat::concat(x, concat::concat(u, y)) == v) found = true;
      CHECK(is_substring(u, v) == found);
      CHECK(sub_set.count(u) == (found ? 1u : 0u));
    }
  }
}

TEST_CASE("concat is associative with identity") {
  auto all = all_strings(4);
  for (const auto& a : all) {
    CHECK(concat::concat(a, b("")) == a);
    CHECK(concat::concat(b(""), a) == a);
    for (const auto& x : all)
      for (const auto& y : all) CHECK(concat::concat(concat::concat(a, x), y) == concat::concat(a, concat::concat(x, y)));
  }
}

TEST_CASE("n_encode is a homomorphism, injective, and avoids 111") {
  auto all = all_strings(8);
  std::set<BitString> images;
  for (const auto& a : all) {
    auto img = n_encode(a);
    CHECK(img.str().find("111") == std::string::npos);
    images.insert(img);
  }
  CHECK(images.size() == all.size());
  auto small = all_strings(4);
  for (const auto& x : small)
    for (const auto& y : small) CHECK(n_encode(concat::concat(x, y)) == concat::concat(n_encode(x), n_encode(y)));
}
