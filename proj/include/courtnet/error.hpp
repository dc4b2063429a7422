#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace courtnet {

enum class Errc {
  UnreadableFile,
  EmptyDocument,
  EncodingError,
  InvalidMix,
  InvalidThreshold,
  InvalidProfile,
  InvalidParams,
  MissingConclusion,
  OutOfOrderMarkers,
  EmptyCorpus,
  NoDeterminedOutcomes,
  UnknownLawyer,
  NoDeterminedCases,
  EmptyNetwork,
  ParseError,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::UnreadableFile: return "UnreadableFile";
    case Errc::EmptyDocument: return "EmptyDocument";
    case Errc::EncodingError: return "EncodingError";
    case Errc::InvalidMix: return "InvalidMix";
    case Errc::InvalidThreshold: return "InvalidThreshold";
    case Errc::InvalidProfile: return "InvalidProfile";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::MissingConclusion: return "MissingConclusion";
    case Errc::OutOfOrderMarkers: return "OutOfOrderMarkers";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::NoDeterminedOutcomes: return "NoDeterminedOutcomes";
    case Errc::UnknownLawyer: return "UnknownLawyer";
    case Errc::NoDeterminedCases: return "NoDeterminedCases";
    case Errc::EmptyNetwork: return "EmptyNetwork";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-readable code next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace courtnet
