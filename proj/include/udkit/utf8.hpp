#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace udkit::utf8 {

// Byte length of the UTF-8 sequence starting at s[pos]; 1 for invalid bytes
// so that scanning always makes progress.
inline int seq_len(std::string_view s, std::size_t pos) {
  unsigned char c = static_cast<unsigned char>(s[pos]);
  int len = 1;
  if ((c & 0x80u) == 0x00u)
    len = 1;
  else if ((c & 0xE0u) == 0xC0u)
    len = 2;
  else if ((c & 0xF0u) == 0xE0u)
    len = 3;
  else if ((c & 0xF8u) == 0xF0u)
    len = 4;
  if (pos + len > s.size()) return 1;
  for (int i = 1; i < len; ++i)
    if ((static_cast<unsigned char>(s[pos + i]) & 0xC0u) != 0x80u) return 1;
  return len;
}

inline char32_t decode(std::string_view s, std::size_t pos, int len) {
  unsigned char c = static_cast<unsigned char>(s[pos]);
  switch (len) {
    case 1: return c;
    case 2:
      return ((c & 0x1Fu) << 6) | (static_cast<unsigned char>(s[pos + 1]) & 0x3Fu);
    case 3:
      return ((c & 0x0Fu) << 12) |
             ((static_cast<unsigned char>(s[pos + 1]) & 0x3Fu) << 6) |
             (static_cast<unsigned char>(s[pos + 2]) & 0x3Fu);
    default:
      return ((c & 0x07u) << 18) |
             ((static_cast<unsigned char>(s[pos + 1]) & 0x3Fu) << 12) |
             ((static_cast<unsigned char>(s[pos + 2]) & 0x3Fu) << 6) |
             (static_cast<unsigned char>(s[pos + 3]) & 0x3Fu);
  }
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(char32_t cp) {
  std::string s;
  append(s, cp);
  return s;
}

// Splits a string into per-codepoint substrings.
inline std::vector<std::string> codepoints(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int len = seq_len(s, pos);
    out.emplace_back(s.substr(pos, len));
    pos += len;
  }
  return out;
}

inline std::vector<char32_t> decode_all(std::string_view s) {
  std::vector<char32_t> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int len = seq_len(s, pos);
    out.push_back(decode(s, pos, len));
    pos += len;
  }
  return out;
}

// Simple one-to-one case folding over the alphabets this toolkit deals with:
// ASCII, Latin-1, Latin Extended-A, Cyrillic plus its Kazakh extensions.
// Unknown codepoints fold to themselves.
inline char32_t fold_lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 0x20;
  if (c >= 0x00C0 && c <= 0x00DE && c != 0x00D7) return c + 0x20;
  if (c >= 0x0100 && c <= 0x0137) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x0139 && c <= 0x0148) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x014A && c <= 0x0177) return (c % 2 == 0) ? c + 1 : c;
  if (c == 0x0130) return U'i';  // dotted capital I
  if (c == 0x0178) return 0x00FF;
  if (c >= 0x0179 && c <= 0x017E) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x0400 && c <= 0x040F) return c + 0x50;
  if (c >= 0x0410 && c <= 0x042F) return c + 0x20;
  if (c >= 0x0460 && c <= 0x0527) return (c % 2 == 0) ? c + 1 : c;
  return c;
}

inline char32_t to_upper(char32_t c) {
  if (c >= U'a' && c <= U'z') return c - 0x20;
  if (c >= 0x00E0 && c <= 0x00FE && c != 0x00F7) return c - 0x20;
  if (c == 0x00FF) return 0x0178;
  if (c >= 0x0100 && c <= 0x0137) return (c % 2 == 1) ? c - 1 : c;
  if (c >= 0x0139 && c <= 0x0148) return (c % 2 == 0) ? c - 1 : c;
  if (c >= 0x014A && c <= 0x0177) return (c % 2 == 1) ? c - 1 : c;
  if (c >= 0x0179 && c <= 0x017E) return (c % 2 == 0) ? c - 1 : c;
  if (c >= 0x0450 && c <= 0x045F) return c - 0x50;
  if (c >= 0x0430 && c <= 0x044F) return c - 0x20;
  if (c >= 0x0460 && c <= 0x0527) return (c % 2 == 1) ? c - 1 : c;
  return c;
}

inline bool is_upper(char32_t c) { return fold_lower(c) != c; }

inline std::string fold_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    int len = seq_len(s, pos);
    append(out, fold_lower(decode(s, pos, len)));
    pos += len;
  }
  return out;
}

}  // namespace udkit::utf8
