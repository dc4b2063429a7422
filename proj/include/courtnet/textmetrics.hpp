#pragma once

// Jaro similarity and the node-contraction predicate built on it.

#include <algorithm>
#include <string_view>
#include <vector>

#include "courtnet/error.hpp"
#include "courtnet/text.hpp"

namespace courtnet {

inline constexpr double kDefaultJaroThreshold = 0.8;

/// A similarity score in [0, 1].
class JaroScore {
 public:
  constexpr JaroScore() = default;
  constexpr explicit JaroScore(double v) : value_(std::clamp(v, 0.0, 1.0)) {}
  constexpr double value() const noexcept { return value_; }
  constexpr operator double() const noexcept { return value_; }

 private:
  double value_ = 0.0;
};

/// Jaro similarity over already-folded code point sequences.
///
/// Characters match when equal and no further apart than
/// floor(max(|a|, |b|) / 2) - 1 (clamped at 0). The transposition count is
/// half the number of matched characters that appear in a different order,
/// using integer halving.
inline JaroScore jaro_folded(std::u32string_view a, std::u32string_view b) {
  if (a.empty() || b.empty()) return JaroScore(0.0);
  if (a == b) return JaroScore(1.0);
  const std::size_t longest = std::max(a.size(), b.size());
  const std::size_t window = longest / 2 >= 1 ? longest / 2 - 1 : 0;

  std::vector<char> b_used(b.size(), 0);
  std::vector<char> a_used(a.size(), 0);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t lo = i > window ? i - window : 0;
    const std::size_t hi = std::min(b.size(), i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (!b_used[j] && a[i] == b[j]) {
        a_used[i] = b_used[j] = 1;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return JaroScore(0.0);

  std::size_t out_of_order = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a_used[i]) continue;
    while (!b_used[j]) ++j;
    if (a[i] != b[j]) ++out_of_order;
    ++j;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(out_of_order / 2);
  return JaroScore((m / a.size() + m / b.size() + (m - t) / m) / 3.0);
}

/// Jaro similarity on case-folded, diacritic-stripped input.
inline JaroScore jaro_similarity(std::string_view s1, std::string_view s2) {
  return jaro_folded(text::fold32(s1), text::fold32(s2));
}

inline void check_threshold(double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(Errc::InvalidThreshold, "threshold must lie in [0, 1], got " + text::format_double(threshold));
  }
}

/// Whether two labels collapse into one flow-graph node.
inline bool same_node(std::string_view s1, std::string_view s2, double threshold = kDefaultJaroThreshold) {
  check_threshold(threshold);
  return jaro_similarity(s1, s2).value() > threshold;
}

}  // namespace courtnet
