#pragma once

// Domain values shared between extraction, the synthetic generator and the
// network builders.

#include <compare>
#include <string>
#include <string_view>

#include "courtnet/error.hpp"

namespace courtnet {

enum class Outcome { AppelleeWins, AppellantWins, Undetermined };

constexpr std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::AppelleeWins: return "AppelleeWins";
    case Outcome::AppellantWins: return "AppellantWins";
    case Outcome::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

inline Outcome outcome_from_string(std::string_view s) {
  if (s == "AppelleeWins") return Outcome::AppelleeWins;
  if (s == "AppellantWins") return Outcome::AppellantWins;
  if (s == "Undetermined") return Outcome::Undetermined;
  throw Error(Errc::ParseError, "unknown outcome label '" + std::string(s) + "'");
}

/// A cited statute article. `code` is folded ("code civil") or "unknown".
struct ArticleRef {
  std::string code;
  std::string number;

  auto operator<=>(const ArticleRef&) const = default;
};

/// A named byte range of a document. `start` is the first byte of the marker
/// keyword that opens the segment; `end` is exclusive.
struct SegmentSpan {
  std::string name;
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const SegmentSpan&) const = default;
};

}  // namespace courtnet
