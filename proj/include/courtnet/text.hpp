#pragma once

// UTF-8 helpers and the case/diacritic folding used by every matcher.

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace courtnet::text {

inline constexpr char32_t kReplacement = 0xFFFD;

/// Decodes one code point starting at `pos`; advances `pos`. Returns nullopt
/// on a malformed, overlong or surrogate sequence (pos still advances by one).
inline std::optional<char32_t> decode_one(std::string_view s, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return std::nullopt;
  }
  if (pos + len > s.size()) {
    ++pos;
    return std::nullopt;
  }
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[pos + k]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return std::nullopt;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return std::nullopt;
  }
  pos += len;
  return cp;
}

inline bool is_valid_utf8(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (!decode_one(s, pos)) return false;
  }
  return true;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

inline std::u32string decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) out += decode_one(s, pos).value_or(kReplacement);
  return out;
}

inline std::string encode(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) append_utf8(out, cp);
  return out;
}

/// Folded (lowercase, unaccented) form of one code point. Most fold to a
/// single code point; ligatures expand to two.
inline std::u32string_view fold_code_point(char32_t cp, char32_t (&buf)[2]) {
  auto one = [&](char32_t c) {
    buf[0] = c;
    return std::u32string_view(buf, 1);
  };
  auto two = [&](char32_t a, char32_t b) {
    buf[0] = a;
    buf[1] = b;
    return std::u32string_view(buf, 2);
  };
  if (cp < 0x80) return one(cp >= 'A' && cp <= 'Z' ? cp + 32 : cp);
  switch (cp) {
    case 0xC0: case 0xC1: case 0xC2: case 0xC3: case 0xC4: case 0xC5:
    case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5:
    case 0x100: case 0x101: case 0x102: case 0x103: case 0x104: case 0x105:
      return one('a');
    case 0xC6: case 0xE6: return two('a', 'e');
    case 0xC7: case 0xE7: case 0x106: case 0x107: case 0x10C: case 0x10D:
      return one('c');
    case 0xD0: case 0xF0: case 0x10E: case 0x10F: case 0x110: case 0x111:
      return one('d');
    case 0xC8: case 0xC9: case 0xCA: case 0xCB:
    case 0xE8: case 0xE9: case 0xEA: case 0xEB:
    case 0x112: case 0x113: case 0x116: case 0x117: case 0x118: case 0x119: case 0x11A: case 0x11B:
      return one('e');
    case 0x11E: case 0x11F: return one('g');
    case 0xCC: case 0xCD: case 0xCE: case 0xCF:
    case 0xEC: case 0xED: case 0xEE: case 0xEF:
    case 0x12A: case 0x12B: case 0x130: case 0x131:
      return one('i');
    case 0x141: case 0x142: return one('l');
    case 0xD1: case 0xF1: case 0x143: case 0x144: case 0x147: case 0x148: return one('n');
    case 0xD2: case 0xD3: case 0xD4: case 0xD5: case 0xD6: case 0xD8:
    case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: case 0xF8:
    case 0x14C: case 0x14D: case 0x150: case 0x151:
      return one('o');
    case 0x152: case 0x153: return two('o', 'e');
    case 0x158: case 0x159: return one('r');
    case 0x15A: case 0x15B: case 0x15E: case 0x15F: case 0x160: case 0x161: return one('s');
    case 0xDF: return two('s', 's');
    case 0x162: case 0x163: case 0x164: case 0x165: return one('t');
    case 0xD9: case 0xDA: case 0xDB: case 0xDC:
    case 0xF9: case 0xFA: case 0xFB: case 0xFC:
    case 0x16A: case 0x16B: case 0x16E: case 0x16F: case 0x170: case 0x171:
      return one('u');
    case 0xDD: case 0xFD: case 0xFF: case 0x178: return one('y');
    case 0x179: case 0x17A: case 0x17B: case 0x17C: case 0x17D: case 0x17E: return one('z');
    case 0xA0: case 0x202F: return one(' ');
    case 0x2018: case 0x2019: return one('\'');
    case 0x2013: case 0x2014: return one('-');
    default: return one(cp);
  }
}

/// Case-folded, diacritic-stripped code points.
inline std::u32string fold32(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  char32_t buf[2];
  while (pos < s.size()) out += fold_code_point(decode_one(s, pos).value_or(kReplacement), buf);
  return out;
}

inline std::string fold(std::string_view s) { return encode(fold32(s)); }

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

/// Collapses runs of whitespace to single spaces and trims the ends.
inline std::string squeeze_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : s) {
    if (is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

namespace detail {
// Latin Extended-A alternates upper/lower case, with the parity flipping at
// U+0139 and U+0179. Returns 1 for uppercase, 0 for lowercase, -1 otherwise.
inline int latin_ext_a_case(char32_t cp) {
  if (cp >= 0x100 && cp <= 0x137) return cp % 2 == 0;
  if (cp >= 0x139 && cp <= 0x148) return cp % 2 == 1;
  if (cp >= 0x14A && cp <= 0x177) return cp % 2 == 0;
  if (cp == 0x178) return 1;
  if (cp >= 0x179 && cp <= 0x17E) return cp % 2 == 1;
  return -1;
}
}  // namespace detail

/// True for code points that are uppercase letters in Latin scripts.
inline bool is_upper_letter(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return true;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return true;
  return detail::latin_ext_a_case(cp) == 1;
}

inline bool is_lower_letter(char32_t cp) {
  if (cp >= 'a' && cp <= 'z') return true;
  if (cp >= 0xDF && cp <= 0xFF && cp != 0xF7) return true;
  return detail::latin_ext_a_case(cp) == 0 || cp == 0x138 || cp == 0x17F;
}

inline bool is_letter(char32_t cp) { return is_upper_letter(cp) || is_lower_letter(cp); }

inline char32_t first_code_point(std::string_view s) {
  if (s.empty()) return 0;
  std::size_t pos = 0;
  return decode_one(s, pos).value_or(kReplacement);
}

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace courtnet::text
