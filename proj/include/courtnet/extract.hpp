#pragma once

// Lawyer names, statute citations and case outcomes from segmented judgments.

#include <algorithm>
#include <filesystem>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "courtnet/corpus.hpp"
#include "courtnet/error.hpp"
#include "courtnet/segmenter.hpp"
#include "courtnet/text.hpp"
#include "courtnet/types.hpp"

namespace courtnet {

/// A lawyer as written in the judgment. `canonical` is the identity used
/// across cases (folded, single-spaced).
struct LawyerName {
  std::string canonical;
  std::string display;

  bool operator==(const LawyerName&) const = default;
};

inline std::string canonical_lawyer(std::string_view display) { return text::squeeze_spaces(text::fold(display)); }

namespace extract_detail {

inline bool is_honorific(std::string_view token) {
  if (token == "Me" || token == "ME" || token == "Me." || token == "ME.") return true;
  const std::string f = text::fold(token);
  return f == "maitre" || f == "maitre.";
}

inline bool is_particle(std::string_view token) {
  return token == "de" || token == "du" || token == "le" || token == "la";
}

/// Punctuation that may trail a name token. Returns the token without it and
/// whether any was removed.
inline std::pair<std::string_view, bool> strip_trailing_punct(std::string_view token) {
  bool stripped = false;
  while (!token.empty()) {
    const char c = token.back();
    if (c == ',' || c == '.' || c == ';' || c == ':' || c == ')' || c == '"' || c == '!' || c == '?') {
      token.remove_suffix(1);
      stripped = true;
    } else {
      break;
    }
  }
  return {token, stripped};
}

inline bool is_capitalized(std::string_view token) {
  return !token.empty() && text::is_upper_letter(text::first_code_point(token));
}

/// Reads the capitalized run starting at `tokens[from]`: 1-4 capitalized
/// tokens with particles allowed between them.
inline std::string read_name_run(const std::vector<std::string_view>& tokens, std::size_t from) {
  std::vector<std::string_view> run;
  std::size_t caps = 0;
  for (std::size_t k = from; k < tokens.size() && caps < 4; ++k) {
    const auto [word, stopped] = strip_trailing_punct(tokens[k]);
    if (word.empty()) break;
    if (is_honorific(tokens[k])) break;
    if (is_capitalized(word)) {
      run.push_back(word);
      ++caps;
    } else if (!run.empty() && is_particle(word)) {
      run.push_back(word);
    } else {
      break;
    }
    if (stopped) break;
  }
  while (!run.empty() && is_particle(run.back())) run.pop_back();
  std::string out;
  for (auto w : run) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

inline bool is_represente(std::string_view token) {
  const std::string f = text::fold(token);
  return f == "represente" || f == "representee" || f == "representes" || f == "representees";
}

inline bool mentions_counsel(const std::vector<std::string_view>& tokens) {
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (is_honorific(tokens[k])) return true;
    if (is_represente(tokens[k]) && k + 1 < tokens.size() && text::fold(tokens[k + 1]) == "par") return true;
  }
  return false;
}

/// Names anchored on honorifics or on "représenté(e) par" in one sentence.
inline std::vector<std::string> names_in_sentence(std::string_view sentence) {
  const auto tokens = text::split_ws(sentence);
  std::vector<std::string> out;
  if (!mentions_counsel(tokens)) return out;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    std::size_t from = tokens.size();
    if (is_honorific(tokens[k])) {
      from = k + 1;
    } else if (is_represente(tokens[k]) && k + 1 < tokens.size() && text::fold(tokens[k + 1]) == "par") {
      // An honorific right after "par" is handled by its own anchor.
      if (k + 2 < tokens.size() && !is_honorific(tokens[k + 2])) from = k + 2;
    }
    if (from >= tokens.size()) continue;
    std::string name = read_name_run(tokens, from);
    if (!name.empty()) out.push_back(std::move(name));
  }
  return out;
}

inline void add_unique(std::vector<LawyerName>& side, std::string display) {
  std::string canonical = canonical_lawyer(display);
  if (canonical.empty()) return;
  if (std::any_of(side.begin(), side.end(), [&](const LawyerName& l) { return l.canonical == canonical; })) return;
  side.push_back({std::move(canonical), std::move(display)});
}

inline std::vector<LawyerName> lawyers_in(std::string_view region) {
  std::vector<LawyerName> out;
  for (const auto& sentence : split_sentences(region)) {
    for (auto& name : names_in_sentence(sentence)) add_unique(out, std::move(name));
  }
  return out;
}

inline std::vector<LawyerName> side_lawyers(const SegmentedJudgment& seg, const Document& doc,
                                            std::string_view counsel, std::string_view party) {
  if (const Segment* s = seg.find(counsel)) {
    auto found = lawyers_in(segment_text(doc, *s));
    if (!found.empty()) return found;
  }
  if (const Segment* s = seg.find(party)) return lawyers_in(segment_text(doc, *s));
  return {};
}

}  // namespace extract_detail

struct PartyLawyers {
  std::vector<LawyerName> appellant;
  std::vector<LawyerName> appellee;
};

/// Lawyers of each side. Counsel segments are searched first, then the party
/// segment of the same side.
inline PartyLawyers extract_lawyers(const SegmentedJudgment& seg, const Document& doc) {
  using namespace segment_names;
  return {extract_detail::side_lawyers(seg, doc, kAppellantCounsel, kAppellant),
          extract_detail::side_lawyers(seg, doc, kAppelleeCounsel, kAppellee)};
}

// ---------------------------------------------------------------------------
// Article citations

/// Maps folded code-name prefixes to canonical code names.
struct CodeTable {
  std::vector<std::pair<std::string, std::string>> aliases;  // (folded alias, canonical)

  static CodeTable defaults() {
    return {{{"nouveau code de procedure civile", "code de procedure civile"},
             {"code de procedure civile", "code de procedure civile"},
             {"ncpc", "code de procedure civile"},
             {"cpc", "code de procedure civile"},
             {"code civil", "code civil"}}};
  }

  /// Longest alias that prefixes `phrase` on a word boundary; otherwise the
  /// phrase itself when it names a code, else "unknown".
  std::string canonicalize(std::string_view folded_phrase) const {
    const std::string phrase = text::squeeze_spaces(folded_phrase);
    const std::pair<std::string, std::string>* best = nullptr;
    for (const auto& alias : aliases) {
      const auto& a = alias.first;
      if (!phrase.starts_with(a)) continue;
      if (phrase.size() > a.size() && std::isalnum(static_cast<unsigned char>(phrase[a.size()]))) continue;
      if (!best || a.size() > best->first.size()) best = &alias;
    }
    if (best) return best->second;
    if (phrase.starts_with("code")) return phrase;
    return "unknown";
  }
};

inline CodeTable code_table_from_json(const nlohmann::json& j) {
  CodeTable table;
  try {
    for (const auto& [alias, canonical] : j.items()) {
      table.aliases.push_back({text::squeeze_spaces(text::fold(alias)),
                               text::squeeze_spaces(text::fold(canonical.get<std::string>()))});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("code table: ") + e.what());
  }
  return table;
}

inline CodeTable load_code_table(const std::filesystem::path& path) {
  try {
    return code_table_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, path.string() + ": " + e.what());
  }
}

namespace extract_detail {

inline const std::regex& citation_regex() {
  static const std::regex re(
      R"(^articles?\s+((?:[lrd]\.?\s?)?\d+(?:-\d+)*(?:\s*(?:,|et)\s*(?:[lrd]\.?\s?)?\d+(?:-\d+)*)*)(?:\s+(?:du|de la|de l'|des)\s+((?:nouveau\s+)?code(?:(?!\s+(?:et|ou)\s|\s+articles?\b)[^.,;:()\n])*))?)",
      std::regex::ECMAScript | std::regex::optimize);
  return re;
}

inline const std::regex& number_regex() {
  static const std::regex re(R"((?:([lrd])\.?\s?)?(\d+(?:-\d+)*))", std::regex::ECMAScript | std::regex::optimize);
  return re;
}

}  // namespace extract_detail

/// Statute articles cited in `body`: "article(s) <n> (, <n>)* (et <n>) du
/// <code>", "article L./R./D. <n>" and bare "article <n>". Numbers without a
/// recognizable code get code "unknown".
inline std::set<ArticleRef> extract_articles(std::string_view body, const CodeTable& codes = CodeTable::defaults()) {
  std::set<ArticleRef> out;
  const std::string folded = text::fold(body);
  constexpr std::size_t kWindow = 400;
  std::size_t pos = 0;
  while ((pos = folded.find("article", pos)) != std::string::npos) {
    const bool word_start = pos == 0 || !std::isalnum(static_cast<unsigned char>(folded[pos - 1]));
    if (!word_start) {
      pos += 7;
      continue;
    }
    const std::string window = folded.substr(pos, kWindow);
    std::smatch m;
    if (std::regex_search(window, m, extract_detail::citation_regex(), std::regex_constants::match_continuous)) {
      const std::string code = m[2].matched ? codes.canonicalize(text::trim(m[2].str())) : std::string("unknown");
      const std::string numbers = m[1].str();
      for (std::sregex_iterator it(numbers.begin(), numbers.end(), extract_detail::number_regex()), end; it != end;
           ++it) {
        std::string number = (*it)[2].str();
        if ((*it)[1].matched) {
          number = std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>((*it)[1].str()[0])))) +
                   ". " + number;
        }
        out.insert({code, std::move(number)});
      }
      pos += static_cast<std::size_t>(m.length(0));
    } else {
      pos += 7;
    }
  }
  return out;
}

inline std::set<ArticleRef> extract_articles(const Document& doc, const CodeTable& codes = CodeTable::defaults()) {
  return extract_articles(std::string_view(doc.text), codes);
}

// ---------------------------------------------------------------------------
// Outcome

inline constexpr std::array<std::string_view, 3> kConfirmStems = {"confirme", "rejete", "irrecevable"};
inline constexpr std::array<std::string_view, 3> kReverseStems = {"infirme", "rectifi", "reform"};

struct OutcomeVote {
  Outcome outcome = Outcome::Undetermined;
  std::size_t confirm_count = 0;
  std::size_t reverse_count = 0;

  bool operator==(const OutcomeVote&) const = default;
};

/// Counts words of the folded conclusion that start with a confirming or a
/// reversing stem; the larger count decides, ties are Undetermined.
inline OutcomeVote classify_outcome(std::string_view conclusion_text) {
  const std::u32string folded = text::fold32(conclusion_text);
  OutcomeVote vote;
  std::size_t i = 0;
  while (i < folded.size()) {
    while (i < folded.size() && !text::is_letter(folded[i])) ++i;
    std::size_t j = i;
    while (j < folded.size() && text::is_letter(folded[j])) ++j;
    if (j > i) {
      const std::string word = text::encode(folded.substr(i, j - i));
      for (auto stem : kConfirmStems)
        if (word.starts_with(stem)) ++vote.confirm_count;
      for (auto stem : kReverseStems)
        if (word.starts_with(stem)) ++vote.reverse_count;
    }
    i = j;
  }
  if (vote.confirm_count > vote.reverse_count) vote.outcome = Outcome::AppelleeWins;
  else if (vote.reverse_count > vote.confirm_count) vote.outcome = Outcome::AppellantWins;
  return vote;
}

/// Share of confirmed decisions (appellee wins) among determined outcomes.
inline double rejection_rate(const std::vector<Outcome>& outcomes) {
  std::size_t confirmed = 0, determined = 0;
  for (auto o : outcomes) {
    if (o == Outcome::Undetermined) continue;
    ++determined;
    if (o == Outcome::AppelleeWins) ++confirmed;
  }
  if (determined == 0) throw Error(Errc::NoDeterminedOutcomes, "no determined outcome to compute a rejection rate");
  return static_cast<double>(confirmed) / static_cast<double>(determined);
}

// ---------------------------------------------------------------------------
// Per-document record and extracted.jsonl

struct ExtractedCase {
  std::string doc_id;
  std::vector<LawyerName> appellant_lawyers;
  std::vector<LawyerName> appellee_lawyers;
  std::set<ArticleRef> articles;
  OutcomeVote vote;

  bool has_lawyers() const { return !appellant_lawyers.empty() || !appellee_lawyers.empty(); }
};

inline ExtractedCase extract_case(const Document& doc, const SegmentedJudgment& seg,
                                  const CodeTable& codes = CodeTable::defaults()) {
  ExtractedCase out;
  out.doc_id = doc.doc_id;
  auto lawyers = extract_lawyers(seg, doc);
  out.appellant_lawyers = std::move(lawyers.appellant);
  out.appellee_lawyers = std::move(lawyers.appellee);
  out.articles = extract_articles(doc, codes);
  if (const Segment* c = seg.find(segment_names::kConclusion)) {
    out.vote = classify_outcome(segment_text(doc, *c, /*include_marker=*/true));
  }
  return out;
}

inline nlohmann::ordered_json to_json(const ExtractedCase& c) {
  auto names = [](const std::vector<LawyerName>& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& l : v) arr.push_back({{"canonical", l.canonical}, {"display", l.display}});
    return arr;
  };
  nlohmann::ordered_json articles = nlohmann::ordered_json::array();
  for (const auto& a : c.articles) articles.push_back({{"code", a.code}, {"number", a.number}});
  return {{"doc_id", c.doc_id},
          {"appellant_lawyers", names(c.appellant_lawyers)},
          {"appellee_lawyers", names(c.appellee_lawyers)},
          {"articles", articles},
          {"outcome", std::string(to_string(c.vote.outcome))},
          {"confirm_count", c.vote.confirm_count},
          {"reverse_count", c.vote.reverse_count}};
}

inline ExtractedCase extracted_from_json(const nlohmann::json& j) {
  ExtractedCase c;
  try {
    c.doc_id = j.at("doc_id").get<std::string>();
    auto names = [](const nlohmann::json& arr) {
      std::vector<LawyerName> v;
      for (const auto& l : arr) {
        if (l.is_string()) {
          const auto display = l.get<std::string>();
          v.push_back({canonical_lawyer(display), display});
        } else {
          v.push_back({l.at("canonical").get<std::string>(), l.at("display").get<std::string>()});
        }
      }
      return v;
    };
    c.appellant_lawyers = names(j.at("appellant_lawyers"));
    c.appellee_lawyers = names(j.at("appellee_lawyers"));
    for (const auto& a : j.at("articles")) c.articles.insert({a.at("code").get<std::string>(), a.at("number").get<std::string>()});
    c.vote.outcome = outcome_from_string(j.at("outcome").get<std::string>());
    c.vote.confirm_count = j.at("confirm_count").get<std::size_t>();
    c.vote.reverse_count = j.at("reverse_count").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("extracted record: ") + e.what());
  }
  return c;
}

inline void write_extracted(const std::filesystem::path& path, const std::vector<ExtractedCase>& cases) {
  std::vector<nlohmann::ordered_json> rows;
  rows.reserve(cases.size());
  for (const auto& c : cases) rows.push_back(to_json(c));
  write_jsonl(path, rows);
}

inline std::vector<ExtractedCase> read_extracted(const std::filesystem::path& path) {
  std::vector<ExtractedCase> out;
  read_jsonl(path, [&](const nlohmann::json& j) { out.push_back(extracted_from_json(j)); });
  return out;
}

}  // namespace courtnet
