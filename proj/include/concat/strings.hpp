#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace concat {

/// An element of {0,1}*. Stored as ASCII '0'/'1'; the empty value is ε.
class BitString {
 public:
  BitString() = default;
  /// Throws std::invalid_argument if `bits` contains anything but '0'/'1'.
  explicit BitString(std::string_view bits);

  static BitString zero() { return BitString("0"); }
  static BitString one() { return BitString("1"); }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  char operator[](std::size_t i) const { return bits_[i]; }
  const std::string& str() const { return bits_; }

  /// Bits [pos, pos+len).
  BitString slice(std::size_t pos, std::size_t len = std::string::npos) const;

  friend bool operator==(const BitString&, const BitString&) = default;
  /// Shortlex: by length first, then lexicographic.
  friend bool operator<(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits_ < b.bits_;
  }

 private:
  struct Trusted {};
  BitString(std::string bits, Trusted) : bits_(std::move(bits)) {}
  friend BitString concat(const BitString&, const BitString&);

  std::string bits_;
};

BitString concat(const BitString& a, const BitString& b);

bool is_substring(const BitString& u, const BitString& v);
bool is_prefix(const BitString& u, const BitString& v);

/// Distinct substrings of v in shortlex order.
std::vector<BitString> substrings(const BitString& v);
/// The |v|+1 prefixes of v, shortest first.
std::vector<BitString> prefixes(const BitString& v);

/// All strings of length <= max_len in shortlex order.
std::vector<BitString> all_strings(std::size_t max_len);

/// The block code N with N(0)=010, N(1)=0110.
BitString n_encode(const BitString& b);

/// Quoted rendering used by the CLI and file formats: "0110", "" for ε.
std::string quoted(const BitString& b);

}  // namespace concat

template <>
struct std::hash<concat::BitString> {
  std::size_t operator()(const concat::BitString& b) const noexcept {
    return std::hash<std::string>{}(b.str());
  }
};
