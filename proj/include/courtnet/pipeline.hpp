#pragma once

// File-based pipeline stages and the JSON run configuration.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "courtnet/community.hpp"
#include "courtnet/corpus.hpp"
#include "courtnet/error.hpp"
#include "courtnet/extract.hpp"
#include "courtnet/graph_io.hpp"
#include "courtnet/networks.hpp"
#include "courtnet/parallel.hpp"
#include "courtnet/ranking.hpp"
#include "courtnet/segmenter.hpp"
#include "courtnet/synth.hpp"

namespace courtnet {

namespace files {
inline constexpr const char* kCorpus = "corpus.jsonl";
inline constexpr const char* kSegments = "segments.jsonl";
inline constexpr const char* kExtracted = "extracted.jsonl";
inline constexpr const char* kOpposing = "opposing";
inline constexpr const char* kCollaboration = "collaboration";
inline constexpr const char* kCommunities = "communities.csv";
inline constexpr const char* kRankings = "rankings.csv";
inline constexpr const char* kManifest = "manifest.json";
inline constexpr const char* kTruth = "truth.jsonl";
inline constexpr const char* kTruthSummary = "truth_summary.json";
inline constexpr const char* kDocs = "docs";

inline std::string cases(std::size_t k) { return "cases_k" + std::to_string(k); }
}  // namespace files

struct PipelineConfig {
  std::string input_dir = "input";
  std::string output_dir = "out";
  std::string default_jurisdiction = "generic";
  std::string profile = "auto";  // "auto" picks the profile named after each document's jurisdiction
  std::string profiles_path;     // optional extra profiles (JSON)
  std::string codes_path;        // optional code alias table (JSON)
  double a = 2.0;
  double b = 1.0;
  std::size_t min_cases = 2;
  std::size_t collab_min = 2;
  std::size_t k = 2;
  double damping = 0.85;
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  double jaro_threshold = kDefaultJaroThreshold;
  std::string rank_by = "pagerank";
  std::uint64_t seed = 7;
  std::size_t n_docs = 100;
  std::string mix = "douai=0.5,agen=0.5";
  unsigned workers = 0;

  NetworkParams network_params() const { return {a, b, min_cases, collab_min}; }
  PageRankOptions pagerank_options() const { return {damping, tol, max_iter}; }
};

inline RankMetric parse_rank_metric(const std::string& name) {
  if (name == "pagerank") return RankMetric::PageRank;
  if (name == "win_rate") return RankMetric::WinRate;
  if (name == "experience") return RankMetric::Experience;
  throw Error(Errc::InvalidParams, "rank_by must be pagerank, win_rate or experience, got '" + name + "'");
}

inline void validate(const PipelineConfig& c) {
  c.network_params().validate();
  c.pagerank_options().validate();
  if (c.k < 1) throw Error(Errc::InvalidParams, "k must be at least 1");
  if (c.max_iter < 1) throw Error(Errc::InvalidParams, "max_iter must be at least 1");
  if (c.n_docs < 1) throw Error(Errc::InvalidParams, "n_docs must be at least 1");
  check_threshold(c.jaro_threshold);
  parse_rank_metric(c.rank_by);
  validate_mix(parse_mix(c.mix));
}

inline nlohmann::ordered_json to_json(const PipelineConfig& c) {
  return {{"input_dir", c.input_dir},
          {"output_dir", c.output_dir},
          {"default_jurisdiction", c.default_jurisdiction},
          {"profile", c.profile},
          {"profiles_path", c.profiles_path},
          {"codes_path", c.codes_path},
          {"a", c.a},
          {"b", c.b},
          {"min_cases", c.min_cases},
          {"collab_min", c.collab_min},
          {"k", c.k},
          {"damping", c.damping},
          {"tol", c.tol},
          {"max_iter", c.max_iter},
          {"jaro_threshold", c.jaro_threshold},
          {"rank_by", c.rank_by},
          {"seed", c.seed},
          {"n_docs", c.n_docs},
          {"mix", c.mix},
          {"workers", c.workers}};
}

/// Fields absent from `j` keep their defaults; unknown fields are rejected.
inline PipelineConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidParams, "configuration must be a JSON object");
  PipelineConfig c;
  const auto known = to_json(c);
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw Error(Errc::InvalidParams, "unknown configuration field '" + key + "'");
  }
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("input_dir", c.input_dir);
    get("output_dir", c.output_dir);
    get("default_jurisdiction", c.default_jurisdiction);
    get("profile", c.profile);
    get("profiles_path", c.profiles_path);
    get("codes_path", c.codes_path);
    get("a", c.a);
    get("b", c.b);
    get("min_cases", c.min_cases);
    get("collab_min", c.collab_min);
    get("k", c.k);
    get("damping", c.damping);
    get("tol", c.tol);
    get("max_iter", c.max_iter);
    get("jaro_threshold", c.jaro_threshold);
    get("rank_by", c.rank_by);
    get("seed", c.seed);
    get("n_docs", c.n_docs);
    get("mix", c.mix);
    get("workers", c.workers);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidParams, std::string("configuration: ") + e.what());
  }
  return c;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::InvalidParams, path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw Error(Errc::InvalidParams, e.what());
  }
  return config_from_json(j);
}

/// 1 for configuration problems, 2 for input problems.
inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::InvalidMix:
    case Errc::InvalidThreshold:
    case Errc::InvalidProfile:
    case Errc::InvalidParams:
      return 1;
    default:
      return 2;
  }
}

namespace pipeline_detail {

inline std::filesystem::path out(const PipelineConfig& c, const std::string& name) {
  return std::filesystem::path(c.output_dir) / name;
}

inline void require(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw Error(Errc::UnreadableFile, "missing input " + path.string());
}

inline void write_text(const std::filesystem::path& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(Errc::UnreadableFile, "cannot write " + path.string());
  os << body;
  if (!os) throw Error(Errc::UnreadableFile, "write failure on " + path.string());
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline void save_both(const PipelineConfig& c, const std::string& stem, const ExportGraph& g) {
  save_graphml(out(c, stem + ".graphml"), g);
  save_dot(out(c, stem + ".dot"), g);
}

}  // namespace pipeline_detail

/// Profiles by name: the built-in ones overlaid with those of profiles_path.
inline std::map<std::string, KeywordProfile> resolve_profiles(const PipelineConfig& c) {
  auto profiles = default_profiles();
  if (!c.profiles_path.empty()) {
    for (auto& p : load_profiles(c.profiles_path)) profiles[p.jurisdiction] = std::move(p);
  }
  for (auto& [name, p] : profiles) p.jaro_threshold = c.jaro_threshold;
  if (c.profile != "auto" && !profiles.contains(c.profile)) {
    throw Error(Errc::InvalidProfile, "unknown profile '" + c.profile + "'");
  }
  return profiles;
}

inline const KeywordProfile& profile_for(const std::map<std::string, KeywordProfile>& profiles,
                                         const PipelineConfig& c, const Document& doc) {
  if (c.profile != "auto") return profiles.at(c.profile);
  const auto it = profiles.find(doc.jurisdiction);
  return it == profiles.end() ? profiles.at("generic") : it->second;
}

inline CodeTable resolve_codes(const PipelineConfig& c) {
  return c.codes_path.empty() ? CodeTable::defaults() : load_code_table(c.codes_path);
}

// ---------------------------------------------------------------------------
// Stages

struct IngestStats {
  std::size_t documents = 0;
  std::size_t skipped_files = 0;
  std::size_t id_collisions = 0;
};

/// input_dir -> corpus.jsonl. Fails with EmptyCorpus, before writing
/// anything, when no document could be read.
inline IngestStats stage_ingest(const PipelineConfig& c) {
  auto report = ingest_directory(c.input_dir, c.default_jurisdiction, c.workers);
  if (report.documents.empty()) throw Error(Errc::EmptyCorpus, "no readable judgment under " + c.input_dir);
  std::filesystem::create_directories(c.output_dir);
  write_corpus(pipeline_detail::out(c, files::kCorpus), report.documents);
  return {report.documents.size(), report.skipped.size(), report.id_collisions};
}

struct SegmentRecord {
  std::string doc_id;
  std::optional<Errc> error;
  std::string message;
  SegmentedJudgment judgment;
};

inline nlohmann::ordered_json to_json(const SegmentRecord& r) {
  nlohmann::ordered_json segments = nlohmann::ordered_json::array();
  for (const auto& s : r.judgment.segments) {
    segments.push_back({{"name", s.name}, {"start", s.start}, {"content_start", s.content_start}, {"end", s.end}});
  }
  nlohmann::ordered_json j = {{"doc_id", r.doc_id},
                              {"status", r.error ? std::string(to_string(*r.error)) : std::string("ok")}};
  if (r.error) j["message"] = r.message;
  j["segments"] = segments;
  return j;
}

inline SegmentRecord segment_record_from_json(const nlohmann::json& j) {
  SegmentRecord r;
  try {
    r.doc_id = j.at("doc_id").get<std::string>();
    r.judgment.doc_id = r.doc_id;
    const auto status = j.at("status").get<std::string>();
    if (status != "ok") {
      r.error = status == "OutOfOrderMarkers" ? Errc::OutOfOrderMarkers
                : status == "EmptyDocument"   ? Errc::EmptyDocument
                                              : Errc::MissingConclusion;
      r.message = j.value("message", "");
    }
    for (const auto& s : j.at("segments")) {
      r.judgment.segments.push_back({s.at("name").get<std::string>(), s.at("start").get<std::size_t>(),
                                     s.at("content_start").get<std::size_t>(), s.at("end").get<std::size_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("segment record: ") + e.what());
  }
  return r;
}

inline std::vector<SegmentRecord> read_segments(const std::filesystem::path& path) {
  std::vector<SegmentRecord> out;
  read_jsonl(path, [&](const nlohmann::json& j) { out.push_back(segment_record_from_json(j)); });
  return out;
}

struct SegmentStats {
  std::size_t segmented = 0;
  std::size_t failed = 0;
};

/// corpus.jsonl -> segments.jsonl. Documents that cannot be segmented are
/// recorded with their error code and skipped by later stages.
inline SegmentStats stage_segment(const PipelineConfig& c) {
  using pipeline_detail::out;
  pipeline_detail::require(out(c, files::kCorpus));
  const auto profiles = resolve_profiles(c);
  const auto docs = read_corpus(out(c, files::kCorpus));
  std::vector<SegmentRecord> records(docs.size());
  parallel_for(
      docs.size(),
      [&](std::size_t i) {
        records[i].doc_id = docs[i].doc_id;
        try {
          records[i].judgment = segment(docs[i], profile_for(profiles, c, docs[i]));
        } catch (const Error& e) {
          records[i].error = e.code();
          records[i].message = e.what();
          records[i].judgment = {docs[i].doc_id, {}};
        }
      },
      c.workers);
  SegmentStats stats;
  std::vector<nlohmann::ordered_json> rows;
  for (const auto& r : records) {
    ++(r.error ? stats.failed : stats.segmented);
    rows.push_back(to_json(r));
  }
  write_jsonl(out(c, files::kSegments), rows);
  return stats;
}

struct ExtractStats {
  std::size_t extracted = 0;
  std::size_t missing_lawyers = 0;
  std::size_t undetermined = 0;
  std::optional<double> rejection_rate;
};

inline ExtractStats summarize(const std::vector<ExtractedCase>& cases) {
  ExtractStats s;
  s.extracted = cases.size();
  std::vector<Outcome> outcomes;
  for (const auto& x : cases) {
    if (!x.has_lawyers()) ++s.missing_lawyers;
    if (x.vote.outcome == Outcome::Undetermined) ++s.undetermined;
    outcomes.push_back(x.vote.outcome);
  }
  try {
    s.rejection_rate = rejection_rate(outcomes);
  } catch (const Error&) {
    s.rejection_rate.reset();
  }
  return s;
}

/// corpus.jsonl + segments.jsonl -> extracted.jsonl.
inline ExtractStats stage_extract(const PipelineConfig& c) {
  using pipeline_detail::out;
  pipeline_detail::require(out(c, files::kCorpus));
  pipeline_detail::require(out(c, files::kSegments));
  const auto codes = resolve_codes(c);
  const auto docs = read_corpus(out(c, files::kCorpus));
  std::map<std::string, SegmentRecord> segs;
  for (auto& r : read_segments(out(c, files::kSegments))) segs.emplace(r.doc_id, std::move(r));

  std::vector<const Document*> todo;
  for (const auto& d : docs) {
    const auto it = segs.find(d.doc_id);
    if (it != segs.end() && !it->second.error) todo.push_back(&d);
  }
  std::vector<ExtractedCase> cases(todo.size());
  parallel_for(
      todo.size(), [&](std::size_t i) { cases[i] = extract_case(*todo[i], segs.at(todo[i]->doc_id).judgment, codes); },
      c.workers);
  write_extracted(out(c, files::kExtracted), cases);
  return summarize(cases);
}

inline CaseGraph case_graph_from(const std::vector<ExtractedCase>& cases, std::size_t k) {
  std::map<std::string, std::set<ArticleRef>> articles;
  std::map<std::string, Outcome> outcomes;
  for (const auto& x : cases) {
    articles[x.doc_id] = x.articles;
    outcomes[x.doc_id] = x.vote.outcome;
  }
  return build_case_graph(articles, outcomes, k);
}

struct NetworkStats {
  std::size_t opposing_nodes = 0;
  std::size_t opposing_edges = 0;
  std::size_t self_pairs_dropped = 0;
  std::size_t collaboration_nodes = 0;
  std::size_t collaboration_edges = 0;
  std::size_t case_edges = 0;
};

/// extracted.jsonl -> opposing, collaboration and cases_k<k> graphs.
inline NetworkStats stage_networks(const PipelineConfig& c) {
  using pipeline_detail::out;
  pipeline_detail::require(out(c, files::kExtracted));
  const auto cases = read_extracted(out(c, files::kExtracted));
  const auto results = make_case_results(cases);
  const auto opposing = build_opposing_network(results, c.network_params());
  const auto collaboration = build_collaboration_network(results, c.network_params());
  const auto case_graph = case_graph_from(cases, c.k);
  pipeline_detail::save_both(c, files::kOpposing, to_export(opposing));
  pipeline_detail::save_both(c, files::kCollaboration, to_export(collaboration));
  pipeline_detail::save_both(c, files::cases(c.k), to_export(case_graph));
  return {opposing.nodes.size(),      opposing.edges.size(),      opposing.self_pairs_dropped,
          collaboration.nodes.size(), collaboration.edges.size(), case_graph.edges.size()};
}

/// extracted.jsonl -> communities.csv, plus cases_k<k> graphs annotated with
/// community ids.
inline std::size_t stage_communities(const PipelineConfig& c) {
  using pipeline_detail::out;
  pipeline_detail::require(out(c, files::kExtracted));
  auto graph = case_graph_from(read_extracted(out(c, files::kExtracted)), c.k);
  const auto partition = detect_communities(graph);
  std::string csv = "community_id,size,appellant_win_rate\n";
  for (const auto& info : partition.communities) {
    csv += std::to_string(info.id) + "," + std::to_string(info.size) + "," +
           (info.appellant_win_rate ? text::format_double(*info.appellant_win_rate) : std::string()) + "\n";
  }
  pipeline_detail::write_text(out(c, files::kCommunities), csv);
  pipeline_detail::save_both(c, files::cases(c.k), to_export(graph));
  return partition.communities.size();
}

inline std::string rankings_csv(const std::vector<LawyerRanking>& rows) {
  using pipeline_detail::csv_field;
  std::string csv = "lawyer_canonical,lawyer_display,experience,wins,losses,win_rate,pagerank\n";
  for (const auto& r : rows) {
    csv += csv_field(r.lawyer) + "," + csv_field(r.display) + "," + std::to_string(r.experience) + "," +
           std::to_string(r.wins) + "," + std::to_string(r.losses) + "," + text::format_double(r.win_rate) + "," +
           text::format_double(r.pagerank) + "\n";
  }
  return csv;
}

/// extracted.jsonl + opposing.graphml -> rankings.csv.
inline std::size_t stage_rank(const PipelineConfig& c) {
  using pipeline_detail::out;
  const auto graphml = out(c, std::string(files::kOpposing) + ".graphml");
  pipeline_detail::require(out(c, files::kExtracted));
  pipeline_detail::require(graphml);
  const auto results = make_case_results(read_extracted(out(c, files::kExtracted)));
  const auto network = opposing_from_export(load_graphml(graphml));
  const auto rows = rank_table(results, network, c.pagerank_options(), parse_rank_metric(c.rank_by));
  pipeline_detail::write_text(out(c, files::kRankings), rankings_csv(rows));
  return rows.size();
}

/// corpus.jsonl -> flow_<jurisdiction> graphs, one per jurisdiction present.
inline std::vector<std::string> stage_flowgraph(const PipelineConfig& c) {
  using pipeline_detail::out;
  pipeline_detail::require(out(c, files::kCorpus));
  std::map<std::string, std::vector<Document>> by_jurisdiction;
  for (auto& d : read_corpus(out(c, files::kCorpus))) by_jurisdiction[d.jurisdiction].push_back(std::move(d));
  std::vector<std::string> written;
  for (const auto& [jurisdiction, docs] : by_jurisdiction) {
    const std::string stem = "flow_" + jurisdiction;
    pipeline_detail::save_both(c, stem, to_export(build_flow_graph(docs, jurisdiction, c.jaro_threshold)));
    written.push_back(stem);
  }
  return written;
}

inline nlohmann::ordered_json truth_summary(const SyntheticGroundTruth& truth) {
  std::size_t undetermined = 0, missing = 0;
  for (const auto& r : truth.records) {
    if (r.outcome == Outcome::Undetermined) ++undetermined;
    if (r.appellant_lawyers.empty() && r.appellee_lawyers.empty()) ++missing;
  }
  return {{"documents", truth.records.size()},
          {"dominant_lawyer", truth.dominant_lawyer},
          {"dominant_lawyer_canonical", canonical_lawyer(truth.dominant_lawyer)},
          {"undetermined_outcomes", undetermined},
          {"docs_missing_lawyers", missing},
          {"planted_rejection_rate", truth.planted_rejection_rate()}};
}

/// Writes corpus.jsonl, truth.jsonl, truth_summary.json and the plain-text
/// judgments under docs/<jurisdiction>/ for a later ingest.
inline SyntheticCorpus stage_synth(const PipelineConfig& c) {
  using pipeline_detail::out;
  auto corpus = generate_synthetic_corpus(c.seed, c.n_docs, parse_mix(c.mix));
  std::filesystem::create_directories(c.output_dir);
  write_corpus(out(c, files::kCorpus), corpus.documents);
  write_truth(out(c, files::kTruth), corpus.truth);
  pipeline_detail::write_text(out(c, files::kTruthSummary), truth_summary(corpus.truth).dump(2) + "\n");
  for (const auto& d : corpus.documents) {
    const auto dir = out(c, files::kDocs) / d.jurisdiction;
    std::filesystem::create_directories(dir);
    pipeline_detail::write_text(dir / (d.doc_id + ".txt"), d.text);
  }
  return corpus;
}

/// Runs ingest through rank and writes manifest.json. Throws on configuration
/// or input errors; documents that fail segmentation are only counted.
inline nlohmann::ordered_json run_pipeline(const PipelineConfig& c) {
  validate(c);
  resolve_profiles(c);
  resolve_codes(c);
  const auto ingest = stage_ingest(c);
  const auto seg = stage_segment(c);
  const auto ext = stage_extract(c);
  const auto net = stage_networks(c);
  const auto communities = stage_communities(c);
  const auto ranked = stage_rank(c);

  nlohmann::ordered_json counts = {{"docs_ingested", ingest.documents},
                                   {"files_skipped", ingest.skipped_files},
                                   {"id_collisions", ingest.id_collisions},
                                   {"docs_segmented", seg.segmented},
                                   {"docs_segmentation_failed", seg.failed},
                                   {"docs_extracted", ext.extracted},
                                   {"docs_skipped_missing_lawyers", ext.missing_lawyers},
                                   {"undetermined_outcomes", ext.undetermined},
                                   {"opposing_nodes", net.opposing_nodes},
                                   {"opposing_edges", net.opposing_edges},
                                   {"self_pairs_dropped", net.self_pairs_dropped},
                                   {"collaboration_nodes", net.collaboration_nodes},
                                   {"collaboration_edges", net.collaboration_edges},
                                   {"case_edges", net.case_edges},
                                   {"communities", communities},
                                   {"ranked_lawyers", ranked}};
  nlohmann::ordered_json manifest = {{"config", to_json(c)}, {"counts", counts}};
  manifest["rejection_rate"] = nullptr;
  if (ext.rejection_rate) manifest["rejection_rate"] = *ext.rejection_rate;
  pipeline_detail::write_text(pipeline_detail::out(c, files::kManifest), manifest.dump(2) + "\n");
  return manifest;
}

}  // namespace courtnet
