#pragma once

// Keyword-driven macrostructure segmentation of appeal judgments, sentence
// splitting and the per-jurisdiction sentence-flow graph.

#include <algorithm>
#include <array>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "courtnet/corpus.hpp"
#include "courtnet/error.hpp"
#include "courtnet/text.hpp"
#include "courtnet/textmetrics.hpp"
#include "courtnet/types.hpp"

namespace courtnet {

namespace segment_names {
inline constexpr std::string_view kHeader = "header";
inline constexpr std::string_view kAppellant = "appellant";
inline constexpr std::string_view kAppellantCounsel = "appellant_counsel";
inline constexpr std::string_view kAppellee = "appellee";
inline constexpr std::string_view kAppelleeCounsel = "appellee_counsel";
inline constexpr std::string_view kCourtEntities = "court_entities";
inline constexpr std::string_view kDebate = "debate";
inline constexpr std::string_view kConclusion = "conclusion";

// Segments that open with a marker line; "header" is whatever precedes the first one.
inline constexpr std::array<std::string_view, 7> kMarked = {kAppellant, kAppellantCounsel, kAppellee, kAppelleeCounsel,
                                                            kCourtEntities, kDebate, kConclusion};
}  // namespace segment_names

inline constexpr std::string_view kConclusionMarker = "PAR CES MOTIFS";

struct MarkerSet {
  std::string segment;
  std::vector<std::string> variants;
};

struct KeywordProfile {
  std::string jurisdiction;
  std::vector<MarkerSet> markers;
  double jaro_threshold = kDefaultJaroThreshold;
};

inline void validate(const KeywordProfile& profile) {
  check_threshold(profile.jaro_threshold);
  std::vector<std::string_view> seen;
  bool has_conclusion = false;
  for (const auto& m : profile.markers) {
    if (std::find(segment_names::kMarked.begin(), segment_names::kMarked.end(), m.segment) ==
        segment_names::kMarked.end()) {
      throw Error(Errc::InvalidProfile, "unknown segment name '" + m.segment + "'");
    }
    if (std::find(seen.begin(), seen.end(), m.segment) != seen.end()) {
      throw Error(Errc::InvalidProfile, "duplicate segment '" + m.segment + "'");
    }
    seen.push_back(m.segment);
    if (m.variants.empty()) throw Error(Errc::InvalidProfile, "segment '" + m.segment + "' has no variants");
    for (const auto& v : m.variants) {
      if (text::trim(v).empty()) throw Error(Errc::InvalidProfile, "empty variant in '" + m.segment + "'");
    }
    if (m.segment == segment_names::kConclusion) {
      has_conclusion = std::any_of(m.variants.begin(), m.variants.end(),
                                   [](const std::string& v) { return text::fold(v) == text::fold(kConclusionMarker); });
    }
  }
  if (!has_conclusion) throw Error(Errc::InvalidProfile, "conclusion markers must include \"PAR CES MOTIFS\"");
}

inline KeywordProfile douai_profile() {
  return {"douai",
          {{"appellant", {"APPELANT", "APPELANTE", "APPELANTS"}},
           {"appellant_counsel", {"AVOCAT DE L'APPELANT", "CONSEIL DE L'APPELANT"}},
           {"appellee", {"INTIME", "INTIMEE", "INTIMES"}},
           {"appellee_counsel", {"AVOCAT DE L'INTIME", "CONSEIL DE L'INTIME"}},
           {"court_entities", {"COMPOSITION DE LA COUR"}},
           {"debate", {"FAITS ET PROCEDURE", "EXPOSE DU LITIGE", "DEBATS"}},
           {"conclusion", {"PAR CES MOTIFS"}}},
          kDefaultJaroThreshold};
}

inline KeywordProfile agen_profile() {
  return {"agen",
          {{"appellant", {"ENTRE"}},
           {"appellee", {"ET"}},
           {"court_entities", {"COMPOSITION DE LA COUR"}},
           {"debate", {"EXPOSE DU LITIGE", "FAITS ET PROCEDURE"}},
           {"conclusion", {"PAR CES MOTIFS"}}},
          kDefaultJaroThreshold};
}

/// Union of the Douai and Agen marker sets, in segment order.
inline KeywordProfile generic_profile() {
  KeywordProfile merged{"generic", {}, kDefaultJaroThreshold};
  for (const auto& name : segment_names::kMarked) merged.markers.push_back({std::string(name), {}});
  for (const auto& profile : {douai_profile(), agen_profile()}) {
    for (const auto& m : profile.markers) {
      auto& dst = std::find_if(merged.markers.begin(), merged.markers.end(),
                               [&](const MarkerSet& x) { return x.segment == m.segment; })
                      ->variants;
      for (const auto& v : m.variants) {
        if (std::find(dst.begin(), dst.end(), v) == dst.end()) dst.push_back(v);
      }
    }
  }
  std::erase_if(merged.markers, [](const MarkerSet& m) { return m.variants.empty(); });
  return merged;
}

inline std::map<std::string, KeywordProfile> default_profiles() {
  std::map<std::string, KeywordProfile> out;
  for (auto p : {douai_profile(), agen_profile(), generic_profile()}) out.emplace(p.jurisdiction, std::move(p));
  return out;
}

inline nlohmann::ordered_json to_json(const KeywordProfile& profile) {
  nlohmann::ordered_json markers = nlohmann::ordered_json::array();
  for (const auto& m : profile.markers) markers.push_back({{"segment", m.segment}, {"variants", m.variants}});
  return {{"jurisdiction", profile.jurisdiction}, {"jaro_threshold", profile.jaro_threshold}, {"markers", markers}};
}

inline KeywordProfile profile_from_json(const nlohmann::json& j) {
  KeywordProfile profile;
  try {
    profile.jurisdiction = j.at("jurisdiction").get<std::string>();
    profile.jaro_threshold = j.value("jaro_threshold", kDefaultJaroThreshold);
    for (const auto& m : j.at("markers")) {
      profile.markers.push_back({m.at("segment").get<std::string>(), m.at("variants").get<std::vector<std::string>>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidProfile, e.what());
  }
  validate(profile);
  return profile;
}

/// Loads either a single profile object or an array of them.
inline std::vector<KeywordProfile> load_profiles(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::InvalidProfile, path.string() + ": " + e.what());
  }
  std::vector<KeywordProfile> out;
  if (j.is_array()) {
    for (const auto& p : j) out.push_back(profile_from_json(p));
  } else {
    out.push_back(profile_from_json(j));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Marker matching

/// How a line matched a marker variant; larger is a stronger match.
struct MarkerScore {
  int kind = -1;  // 2 exact, 1 word-boundary prefix, 0 fuzzy, -1 none
  double similarity = 0.0;

  bool matched() const { return kind >= 0; }
  auto operator<=>(const MarkerScore&) const = default;
};

namespace detail {

inline bool is_word_char(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || text::is_letter(c); }

/// Upper bound of the Jaro similarity of two strings with these lengths.
inline double jaro_length_bound(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0.0;
  const double ratio = static_cast<double>(std::min(a, b)) / static_cast<double>(std::max(a, b));
  return (ratio + 2.0) / 3.0;
}

}  // namespace detail

/// Scores one folded line against one folded variant.
inline MarkerScore score_marker(std::u32string_view line, std::u32string_view variant, double threshold) {
  if (line.empty() || variant.empty()) return {};
  if (line == variant) return {2, 1.0};
  if (line.size() > variant.size() && line.starts_with(variant) && !detail::is_word_char(line[variant.size()])) {
    return {1, jaro_folded(line, variant).value()};
  }
  if (detail::jaro_length_bound(line.size(), variant.size()) <= threshold) return {};
  const double sim = jaro_folded(line, variant).value();
  if (sim > threshold) return {0, sim};
  return {};
}

struct Segment {
  std::string name;
  std::size_t start = 0;          // first byte of the marker keyword
  std::size_t content_start = 0;  // first byte after the marker line
  std::size_t end = 0;            // exclusive

  SegmentSpan span() const { return {name, start, end}; }
  bool operator==(const Segment&) const = default;
};

struct SegmentedJudgment {
  std::string doc_id;
  std::vector<Segment> segments;

  const Segment* find(std::string_view name) const {
    auto it = std::find_if(segments.begin(), segments.end(), [&](const Segment& s) { return s.name == name; });
    return it == segments.end() ? nullptr : &*it;
  }
};

/// Splits `doc` into segments. Each non-blank line is scored against the
/// variants of every segment not matched yet; the strongest match wins (ties
/// go to the earlier segment in profile order). Scanning stops at the
/// conclusion marker, so the conclusion runs to the end of the document.
inline SegmentedJudgment segment(const Document& doc, const KeywordProfile& profile) {
  if (text::trim(doc.text).empty()) throw Error(Errc::EmptyDocument, "document " + doc.doc_id + " is empty");
  check_threshold(profile.jaro_threshold);

  struct FoldedMarkers {
    std::string segment;
    std::vector<std::u32string> variants;
  };
  std::vector<FoldedMarkers> folded;
  for (const auto& m : profile.markers) {
    FoldedMarkers f{m.segment, {}};
    for (const auto& v : m.variants) f.variants.push_back(text::fold32(text::squeeze_spaces(v)));
    folded.push_back(std::move(f));
  }
  std::vector<bool> used(folded.size(), false);

  struct Hit {
    std::size_t marker;
    std::size_t start;
    std::size_t content_start;
  };
  std::vector<Hit> hits;
  const std::string_view body = doc.text;
  std::size_t pos = 0;
  bool conclusion_found = false;
  while (pos < body.size() && !conclusion_found) {
    std::size_t eol = body.find('\n', pos);
    const std::size_t next = eol == std::string_view::npos ? body.size() : eol + 1;
    if (eol == std::string_view::npos) eol = body.size();
    const std::string_view raw_line = body.substr(pos, eol - pos);
    const std::string_view line = text::trim(raw_line);
    if (!line.empty()) {
      const std::u32string key = text::fold32(text::squeeze_spaces(line));
      std::optional<std::size_t> best;
      MarkerScore best_score;
      for (std::size_t k = 0; k < folded.size(); ++k) {
        if (used[k]) continue;
        for (const auto& v : folded[k].variants) {
          const MarkerScore s = score_marker(key, v, profile.jaro_threshold);
          if (s.matched() && (!best || best_score < s)) {
            best = k;
            best_score = s;
          }
        }
      }
      if (best) {
        used[*best] = true;
        const std::size_t line_start = pos + static_cast<std::size_t>(line.data() - raw_line.data());
        hits.push_back({*best, line_start, next});
        conclusion_found = folded[*best].segment == segment_names::kConclusion;
      }
    }
    pos = next;
  }
  if (!conclusion_found) throw Error(Errc::MissingConclusion, "no \"PAR CES MOTIFS\" marker in " + doc.doc_id);

  SegmentedJudgment out{doc.doc_id, {}};
  if (!hits.empty() && hits.front().start > 0) out.segments.push_back({"header", 0, 0, hits.front().start});
  for (std::size_t h = 0; h < hits.size(); ++h) {
    const std::size_t end = h + 1 < hits.size() ? hits[h + 1].start : body.size();
    out.segments.push_back({folded[hits[h].marker].segment, hits[h].start, std::min(hits[h].content_start, end), end});
  }

  const auto index_of = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t s = 0; s < out.segments.size(); ++s)
      if (out.segments[s].name == name) return s;
    return std::nullopt;
  };
  const auto appellant = index_of(segment_names::kAppellant);
  const auto appellee = index_of(segment_names::kAppellee);
  if (appellee && (!appellant || *appellee < *appellant)) {
    throw Error(Errc::OutOfOrderMarkers, "appellee marker precedes appellant marker in " + doc.doc_id);
  }
  return out;
}

inline std::string_view segment_text(const Document& doc, const Segment& seg, bool include_marker = false) {
  const std::size_t from = include_marker ? seg.start : seg.content_start;
  return std::string_view(doc.text).substr(from, seg.end - from);
}

// ---------------------------------------------------------------------------
// Sentence splitting

namespace detail {

/// A line with at least one letter and no lowercase letter.
inline bool is_all_caps_line(std::string_view line) {
  bool letter = false;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const char32_t cp = text::decode_one(line, pos).value_or(text::kReplacement);
    if (text::is_lower_letter(cp)) return false;
    if (text::is_upper_letter(cp)) letter = true;
  }
  return letter;
}

inline bool is_non_terminal_abbreviation(std::string_view word) {
  static constexpr std::string_view kAbbrev[] = {"me", "m", "mme", "mlle", "mm", "art"};
  // Strip leading punctuation such as an opening parenthesis.
  while (!word.empty() && !std::isalnum(static_cast<unsigned char>(word.front())) &&
         static_cast<unsigned char>(word.front()) < 0x80) {
    word.remove_prefix(1);
  }
  // Elided article: l'art., d'art.
  for (std::string_view apos : {std::string_view("'"), std::string_view("\u2019")}) {
    if (const auto at = word.rfind(apos); at != std::string_view::npos) word.remove_prefix(at + apos.size());
  }
  const std::u32string folded = text::fold32(word);
  if (folded.size() == 1 && text::is_letter(text::first_code_point(word))) return true;  // initials
  const std::string f = text::encode(folded);
  return std::find(std::begin(kAbbrev), std::end(kAbbrev), f) != std::end(kAbbrev);
}

}  // namespace detail

/// Deterministic rule-based sentence splitter.
///
/// A sentence ends at ".", "!", "?" or ";" followed by whitespace and an
/// uppercase letter or digit, unless the terminator is the period of "Me",
/// "M.", "Mme", "art." or a single-letter initial. A newline also ends a
/// sentence when the line before or after it is written in capitals, or when
/// a blank line follows. Sentences are returned trimmed, whitespace squeezed.
inline std::vector<std::string> split_sentences(std::string_view input) {
  std::vector<std::string> out;
  std::size_t sentence_start = 0;
  auto flush = [&](std::size_t end) {
    if (end > sentence_start) {
      std::string s = text::squeeze_spaces(input.substr(sentence_start, end - sentence_start));
      if (!s.empty()) out.push_back(std::move(s));
    }
    sentence_start = end;
  };
  auto line_at = [&](std::size_t from) {
    std::size_t e = input.find('\n', from);
    if (e == std::string_view::npos) e = input.size();
    return input.substr(from, e - from);
  };

  std::size_t line_start = 0;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const char c = input[i];
    if (c == '\n') {
      const std::string_view this_line = input.substr(line_start, i - line_start);
      const std::string_view next_line = line_at(i + 1);
      const bool blank_next = text::trim(next_line).empty();
      if (detail::is_all_caps_line(this_line) || detail::is_all_caps_line(next_line) || blank_next) flush(i + 1);
      line_start = i + 1;
      continue;
    }
    if (c != '.' && c != '!' && c != '?' && c != ';') continue;
    std::size_t j = i + 1;
    if (j >= input.size() || !text::is_space(input[j])) continue;
    while (j < input.size() && text::is_space(input[j])) ++j;
    if (j >= input.size()) continue;
    const char32_t next = text::first_code_point(input.substr(j));
    if (!text::is_upper_letter(next) && !(next >= '0' && next <= '9')) continue;
    if (c == '.') {
      std::size_t w = i;
      while (w > sentence_start && !text::is_space(input[w - 1])) --w;
      if (detail::is_non_terminal_abbreviation(input.substr(w, i - w))) continue;
    }
    flush(i + 1);
  }
  flush(input.size());
  return out;
}

// ---------------------------------------------------------------------------
// Flow graph

struct FlowNode {
  std::string label;
  std::size_t occurrence = 0;
};

struct FlowEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t count = 0;
};

struct FlowGraph {
  std::string jurisdiction;
  std::vector<FlowNode> nodes;
  std::vector<FlowEdge> edges;
};

inline constexpr std::size_t kLongSentenceWords = 6;

/// Node label of sentence `j` of document `i`.
inline std::string flow_label(const std::string& sentence, std::size_t i, std::size_t j) {
  if (text::split_ws(sentence).size() >= kLongSentenceWords) {
    return "Long_Text_" + std::to_string(i) + "_" + std::to_string(j);
  }
  return sentence;
}

namespace detail {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Keeps the smaller index as root so roots are first-seen members.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace detail

/// Links consecutive sentences of every document of one jurisdiction.
/// Sentences of six words or more become unique "Long_Text_i_j" nodes; short
/// sentences are contracted by single linkage over same_node(., ., threshold),
/// each contracted node keeping its first-seen label and summing occurrences.
inline FlowGraph build_flow_graph(const std::vector<Document>& corpus, const std::string& jurisdiction,
                                  double threshold = kDefaultJaroThreshold) {
  check_threshold(threshold);
  if (corpus.empty()) throw Error(Errc::EmptyCorpus, "flow graph needs at least one document");
  for (const auto& d : corpus) {
    if (d.jurisdiction != jurisdiction) {
      throw Error(Errc::InvalidParams, "document " + d.doc_id + " is from '" + d.jurisdiction + "', expected '" +
                                           jurisdiction + "'");
    }
  }

  // Distinct labels in first-seen order; each sentence refers to one.
  std::vector<std::string> labels;
  std::vector<bool> is_long;
  std::map<std::string, std::size_t> label_index;
  std::vector<std::vector<std::size_t>> chains(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto sentences = split_sentences(corpus[i].text);
    for (std::size_t j = 0; j < sentences.size(); ++j) {
      std::string label = flow_label(sentences[j], i, j);
      const bool long_text = label != sentences[j];
      auto [it, inserted] = label_index.try_emplace(label, labels.size());
      if (inserted) {
        labels.push_back(std::move(label));
        is_long.push_back(long_text);
      }
      chains[i].push_back(it->second);
    }
  }

  detail::DisjointSets sets(labels.size());
  std::vector<std::size_t> short_ids;
  std::vector<std::u32string> folded;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (is_long[k]) continue;
    short_ids.push_back(k);
    folded.push_back(text::fold32(labels[k]));
  }
  for (std::size_t p = 0; p < short_ids.size(); ++p) {
    for (std::size_t q = p + 1; q < short_ids.size(); ++q) {
      if (detail::jaro_length_bound(folded[p].size(), folded[q].size()) <= threshold) continue;
      if (jaro_folded(folded[p], folded[q]).value() > threshold) sets.unite(short_ids[p], short_ids[q]);
    }
  }

  FlowGraph graph{jurisdiction, {}, {}};
  std::vector<std::size_t> node_of(labels.size());
  std::map<std::size_t, std::size_t> root_to_node;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const std::size_t root = sets.find(k);
    auto [it, inserted] = root_to_node.try_emplace(root, graph.nodes.size());
    if (inserted) graph.nodes.push_back({labels[root], 0});
    node_of[k] = it->second;
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_counts;
  for (const auto& chain : chains) {
    for (std::size_t j = 0; j < chain.size(); ++j) {
      ++graph.nodes[node_of[chain[j]]].occurrence;
      if (j + 1 < chain.size()) ++edge_counts[{node_of[chain[j]], node_of[chain[j + 1]]}];
    }
  }
  for (const auto& [key, count] : edge_counts) graph.edges.push_back({key.first, key.second, count});
  return graph;
}

}  // namespace courtnet
