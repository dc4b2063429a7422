#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "courtnet/pipeline.hpp"
#include "oracles.hpp"

using namespace courtnet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(COURTNET_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

PipelineConfig synth_config(const fs::path& root, std::size_t n_docs = 120) {
  PipelineConfig c;
  c.seed = 7;
  c.n_docs = n_docs;
  c.output_dir = (root / "gen").string();
  c.input_dir = (root / "gen" / "docs").string();
  return c;
}

}  // namespace

TEST(Config, JsonRoundTripAndRejection) {
  PipelineConfig c;
  c.a = 3.0;
  c.k = 4;
  const auto back = config_from_json(nlohmann::json::parse(to_json(c).dump()));
  EXPECT_EQ(to_json(back), to_json(c));
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"bogus": 1})")), Error);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"a": "two"})")), Error);
  c.damping = 1.5;
  EXPECT_THROW(validate(c), Error);
  EXPECT_EQ(exit_code_for(Errc::InvalidParams), 1);
  EXPECT_EQ(exit_code_for(Errc::EmptyCorpus), 2);
}

TEST(Pipeline, SynthRunMatchesGroundTruth) {
  oracle::TempDir tmp;
  auto c = synth_config(tmp.path());
  const auto corpus = stage_synth(c);
  c.output_dir = (tmp.path() / "out").string();
  const auto manifest = run_pipeline(c);
  for (const char* f : {"corpus.jsonl", "extracted.jsonl", "opposing.graphml", "collaboration.graphml",
                        "cases_k2.graphml", "communities.csv", "rankings.csv", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(tmp.path() / "out" / f)) << f;
  }
  const auto& counts = manifest["counts"];
  std::size_t undetermined = 0, missing = 0;
  for (const auto& r : corpus.truth.records) {
    undetermined += r.outcome == Outcome::Undetermined;
    missing += r.appellant_lawyers.empty() && r.appellee_lawyers.empty();
  }
  EXPECT_EQ(counts["docs_ingested"].get<std::size_t>(), corpus.documents.size());
  EXPECT_EQ(counts["docs_segmentation_failed"].get<std::size_t>(), 0u);
  EXPECT_EQ(counts["undetermined_outcomes"].get<std::size_t>(), undetermined);
  EXPECT_EQ(counts["docs_skipped_missing_lawyers"].get<std::size_t>(), missing);
  EXPECT_NEAR(manifest["rejection_rate"].get<double>(), corpus.truth.planted_rejection_rate(), 1e-12);

  std::vector<Outcome> outcomes;
  for (const auto& x : read_extracted(tmp.path() / "out" / "extracted.jsonl")) outcomes.push_back(x.vote.outcome);
  EXPECT_EQ(manifest["rejection_rate"].get<double>(), rejection_rate(outcomes));
}

TEST(Pipeline, RerunIsByteIdentical) {
  oracle::TempDir tmp;
  auto c = synth_config(tmp.path(), 60);
  stage_synth(c);
  c.output_dir = (tmp.path() / "r1").string();
  run_pipeline(c);
  c.output_dir = (tmp.path() / "r2").string();
  run_pipeline(c);
  for (const auto& entry : fs::directory_iterator(tmp.path() / "r1")) {
    const auto name = entry.path().filename();
    if (name == "manifest.json") continue;  // echoes output_dir
    EXPECT_EQ(slurp(entry.path()), slurp(tmp.path() / "r2" / name)) << name;
  }
}

TEST(Pipeline, HugeKGivesEmptyCaseGraph) {
  oracle::TempDir tmp;
  auto c = synth_config(tmp.path(), 30);
  stage_synth(c);
  c.output_dir = (tmp.path() / "out").string();
  c.k = 1000;
  const auto m = run_pipeline(c);
  EXPECT_EQ(m["counts"]["case_edges"].get<std::size_t>(), 0u);
  EXPECT_TRUE(fs::exists(tmp.path() / "out" / "cases_k1000.graphml"));
}

TEST(Pipeline, EmptyInputWritesNothing) {
  oracle::TempDir tmp;
  fs::create_directories(tmp.path() / "in");
  PipelineConfig c;
  c.input_dir = (tmp.path() / "in").string();
  c.output_dir = (tmp.path() / "out").string();
  try {
    run_pipeline(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(exit_code_for(e.code()), 2);
  }
  EXPECT_FALSE(fs::exists(tmp.path() / "out"));
}

TEST(Pipeline, SegmentationFailuresAreCounted) {
  oracle::TempDir tmp;
  auto c = synth_config(tmp.path(), 20);
  stage_synth(c);
  std::ofstream(tmp.path() / "gen" / "docs" / "douai" / "broken.txt") << "APPELANT\nX\nsans conclusion\n";
  c.output_dir = (tmp.path() / "out").string();
  const auto m = run_pipeline(c);
  EXPECT_EQ(m["counts"]["docs_segmentation_failed"].get<std::size_t>(), 1u);
  EXPECT_EQ(m["counts"]["docs_extracted"].get<std::size_t>(), 20u);
}

TEST(Cli, StagesExitCodesAndMonotoneK) {
  oracle::TempDir tmp;
  const std::string gen = (tmp.path() / "gen").string();
  const std::string out = (tmp.path() / "out").string();
  ASSERT_EQ(cli("synth --seed 7 --n-docs 60 --output " + gen), 0);
  EXPECT_EQ(cli("ingest --input " + gen + "/docs --output " + out), 0);
  EXPECT_EQ(cli("rank --output " + out), 2);  // networks not run yet
  EXPECT_EQ(cli("segment --output " + out), 0);
  EXPECT_EQ(cli("extract --output " + out), 0);
  EXPECT_EQ(cli("networks --k 2 --output " + out), 0);
  EXPECT_EQ(cli("networks --k 3 --output " + out), 0);
  EXPECT_EQ(cli("communities --output " + out), 0);
  EXPECT_EQ(cli("rank --output " + out), 0);
  EXPECT_EQ(cli("flowgraph --output " + out), 0);
  EXPECT_TRUE(fs::exists(tmp.path() / "out" / "flow_douai.graphml"));

  auto edge_set = [](const fs::path& p) {
    std::set<std::pair<std::string, std::string>> s;
    for (const auto& e : load_graphml(p).edges) s.insert({e.source, e.target});
    return s;
  };
  const auto k2 = edge_set(tmp.path() / "out" / "cases_k2.graphml");
  const auto k3 = edge_set(tmp.path() / "out" / "cases_k3.graphml");
  EXPECT_TRUE(std::includes(k2.begin(), k2.end(), k3.begin(), k3.end()));
  EXPECT_LE(k3.size(), k2.size());

  EXPECT_EQ(cli("run --damping 2 --output " + out), 1);
  EXPECT_EQ(cli("run --input " + (tmp.path() / "nothing").string() + " --output " + out + "2"), 2);
  EXPECT_EQ(cli("networks --config " + (tmp.path() / "missing.json").string()), 1);
  EXPECT_EQ(cli("--print-default-config"), 0);
  EXPECT_EQ(cli("synth --mix douai=0.7 --output " + gen), 1);
}

TEST(Cli, ConfigFileWithOverride) {
  oracle::TempDir tmp;
  const fs::path cfg = tmp.path() / "c.json";
  std::ofstream(cfg) << R"({"n_docs": 25, "seed": 3, "output_dir": ")" + (tmp.path() / "gen").string() + "\"}";
  ASSERT_EQ(cli("synth --config " + cfg.string() + " --n-docs 10"), 0);
  EXPECT_EQ(read_truth(tmp.path() / "gen" / "truth.jsonl").size(), 10u);
}

TEST(Pipeline, BundledProfilesAndCodeTable) {
  oracle::TempDir tmp;
  auto c = synth_config(tmp.path(), 40);
  stage_synth(c);
  c.output_dir = (tmp.path() / "out").string();
  c.profiles_path = std::string(COURTNET_DATA_DIR) + "/profiles.json";
  c.codes_path = std::string(COURTNET_DATA_DIR) + "/article_codes.json";
  const auto m = run_pipeline(c);
  EXPECT_EQ(m["counts"]["docs_segmentation_failed"].get<std::size_t>(), 0u);
  EXPECT_EQ(m["counts"]["docs_extracted"].get<std::size_t>(), 40u);
  const auto codes = load_code_table(c.codes_path);
  EXPECT_EQ(codes.canonicalize("c. trav."), "code du travail");
}
