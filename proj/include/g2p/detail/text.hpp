#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace g2p::detail {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Tokens between runs of ASCII whitespace.
inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

inline std::vector<std::string> split_on(std::string_view s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == delim) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// Byte length of the UTF-8 sequence starting at s[pos]; 1 for malformed bytes.
inline std::size_t utf8_len(std::string_view s, std::size_t pos) {
  unsigned char c = static_cast<unsigned char>(s[pos]);
  std::size_t n = 1;
  if ((c & 0x80u) == 0x00u)
    n = 1;
  else if ((c & 0xE0u) == 0xC0u)
    n = 2;
  else if ((c & 0xF0u) == 0xE0u)
    n = 3;
  else if ((c & 0xF8u) == 0xF0u)
    n = 4;
  if (pos + n > s.size()) n = 1;
  return n;
}

inline std::string_view utf8_at(std::string_view s, std::size_t pos) {
  return s.substr(pos, utf8_len(s, pos));
}

}  // namespace g2p::detail
