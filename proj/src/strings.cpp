#include "concat/strings.hpp"

#include <algorithm>
#include <stdexcept>

namespace concat {

BitString::BitString(std::string_view bits) : bits_(bits) {
  for (char c : bits_) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("BitString: invalid bit '" + std::string(1, c) + "'");
  }
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  return BitString(bits_.substr(pos, len), Trusted{});
}

BitString concat(const BitString& a, const BitString& b) {
  return BitString(a.bits_ + b.bits_, BitString::Trusted{});
}

bool is_substring(const BitString& u, const BitString& v) {
  return v.str().find(u.str()) != std::string::npos;
}

bool is_prefix(const BitString& u, const BitString& v) {
  return u.size() <= v.size() && v.str().compare(0, u.size(), u.str()) == 0;
}

std::vector<BitString> substrings(const BitString& v) {
  std::vector<BitString> out;
  out.reserve(v.size() * (v.size() + 1) / 2 + 1);
  out.emplace_back();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t len = 1; i + len <= v.size(); ++len) out.push_back(v.slice(i, len));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<BitString> prefixes(const BitString& v) {
  std::vector<BitString> out;
  out.reserve(v.size() + 1);
  for (std::size_t len = 0; len <= v.size(); ++len) out.push_back(v.slice(0, len));
  return out;
}

std::vector<BitString> all_strings(std::size_t max_len) {
  std::vector<BitString> out;
  out.emplace_back();
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (char bit : {'0', '1'})
      for (std::size_t i = begin; i < end; ++i) out.push_back(concat(BitString(std::string(1, bit)), out[i]));
    begin = end;
    // keep each length class sorted lexicographically
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(end), out.end());
  }
  return out;
}

BitString n_encode(const BitString& b) {
  std::string out;
  out.reserve(b.size() * 4);
  for (std::size_t i = 0; i < b.size(); ++i) out += b[i] == '0' ? "010" : "0110";
  return BitString(out);
}

std::string quoted(const BitString& b) { return "\"" + b.str() + "\""; }

}  // namespace concat
