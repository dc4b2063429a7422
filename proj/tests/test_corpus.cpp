#include <gtest/gtest.h>

#include <fstream>

#include "courtnet/corpus.hpp"
#include "courtnet/synth.hpp"
#include "oracles.hpp"

using namespace courtnet;

namespace {

void write(const std::filesystem::path& p, const std::string& body) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << body;
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::ParseError;
}

}  // namespace

TEST(Ingest, PlainTextPassthrough) {
  oracle::TempDir dir;
  write(dir.path() / "a.txt", "PAR CES MOTIFS\nConfirme.");
  const Document d = ingest(dir.path() / "a.txt", "douai");
  EXPECT_EQ(d.text, "PAR CES MOTIFS\nConfirme.");
  EXPECT_EQ(d.jurisdiction, "douai");
  EXPECT_EQ(d.doc_id, make_doc_id(d.text));
  EXPECT_EQ(d.doc_id.size(), 16u);
}

TEST(Ingest, RtfStripping) {
  oracle::TempDir dir;
  write(dir.path() / "a.rtf", R"({\rtf1\ansi Bonjour {\b Me} Dupont})");
  EXPECT_EQ(ingest(dir.path() / "a.rtf", "x").text, "Bonjour Me Dupont");
}

TEST(Ingest, RtfEscapesAndDestinations) {
  EXPECT_EQ(rtf::strip(R"({\rtf1{\fonttbl{\f0 Arial;}}INTIM\'c9E\par Me Dupont})"), "INTIMÉE\nMe Dupont");
  EXPECT_EQ(rtf::strip(R"({\rtf1 caf\u233?\par})"), "café\n");
  EXPECT_EQ(rtf::strip(R"({\rtf1{\*\generator x;}a\{b\}})"), "a{b}");
}

TEST(Ingest, CrLfNormalized) {
  oracle::TempDir dir;
  write(dir.path() / "a.txt", "A\r\nB\rC");
  EXPECT_EQ(ingest(dir.path() / "a.txt", "x").text, "A\nB\nC");
}

TEST(Ingest, Errors) {
  oracle::TempDir dir;
  write(dir.path() / "empty.txt", "");
  write(dir.path() / "blank.rtf", R"({\rtf1 {\b  }})");
  write(dir.path() / "bad.txt", std::string("abc\xFF", 4));
  EXPECT_EQ(code_of([&] { ingest(dir.path() / "empty.txt", "x"); }), Errc::EmptyDocument);
  EXPECT_EQ(code_of([&] { ingest(dir.path() / "blank.rtf", "x"); }), Errc::EmptyDocument);
  EXPECT_EQ(code_of([&] { ingest(dir.path() / "bad.txt", "x"); }), Errc::EncodingError);
  EXPECT_EQ(code_of([&] { ingest(dir.path() / "missing.txt", "x"); }), Errc::UnreadableFile);
}

TEST(IngestDirectory, JurisdictionFromSubdirectoryAndSkips) {
  oracle::TempDir dir;
  write(dir.path() / "douai" / "b.txt", "B text");
  write(dir.path() / "agen" / "a.txt", "A text");
  write(dir.path() / "top.txt", "top");
  write(dir.path() / "douai" / "empty.txt", "");
  write(dir.path() / "notes.md", "ignored");
  const auto r = ingest_directory(dir.path(), "generic", 2);
  ASSERT_EQ(r.documents.size(), 3u);
  EXPECT_EQ(r.documents[0].source_path, "agen/a.txt");
  EXPECT_EQ(r.documents[0].jurisdiction, "agen");
  EXPECT_EQ(r.documents[1].source_path, "douai/b.txt");
  EXPECT_EQ(r.documents[1].jurisdiction, "douai");
  EXPECT_EQ(r.documents[2].jurisdiction, "generic");
  ASSERT_EQ(r.skipped.size(), 1u);
  EXPECT_EQ(r.skipped[0].reason, Errc::EmptyDocument);
}

TEST(IngestDirectory, DuplicateTextsGetDistinctIds) {
  oracle::TempDir dir;
  write(dir.path() / "a.txt", "same");
  write(dir.path() / "b.txt", "same");
  const auto r = ingest_directory(dir.path(), "x");
  ASSERT_EQ(r.documents.size(), 2u);
  EXPECT_EQ(r.id_collisions, 1u);
  EXPECT_EQ(r.documents[1].doc_id, r.documents[0].doc_id + "-2");
}

TEST(CorpusStore, JsonlRoundTrip) {
  oracle::TempDir dir;
  std::vector<Document> docs = {make_document("Ligne 1\n\"quoted\" é", "douai", "x.txt"),
                                make_document("autre", "agen", "y.txt")};
  write_corpus(dir.path() / "c.jsonl", docs);
  EXPECT_EQ(read_corpus(dir.path() / "c.jsonl"), docs);
}

TEST(Synth, Deterministic) {
  const auto a = generate_synthetic_corpus(7, 5, {{"douai", 1.0}});
  const auto b = generate_synthetic_corpus(7, 5, {{"douai", 1.0}});
  ASSERT_EQ(a.documents.size(), 5u);
  EXPECT_EQ(a.documents, b.documents);
  const auto c = generate_synthetic_corpus(8, 5, {{"douai", 1.0}});
  EXPECT_NE(a.documents, c.documents);
}

TEST(Synth, InvalidMix) {
  EXPECT_EQ(code_of([] { generate_synthetic_corpus(7, 5, {{"douai", 0.7}}); }), Errc::InvalidMix);
  EXPECT_EQ(code_of([] { generate_synthetic_corpus(7, 5, {}); }), Errc::InvalidMix);
  EXPECT_EQ(code_of([] { generate_synthetic_corpus(7, 5, {{"lyon", 1.0}}); }), Errc::InvalidMix);
  EXPECT_EQ(code_of([] { parse_mix("douai"); }), Errc::InvalidMix);
  EXPECT_EQ(code_of([] { parse_mix("douai=x"); }), Errc::InvalidMix);
}

TEST(Synth, ParseMix) {
  const auto m = parse_mix("douai=0.25, agen=0.75");
  EXPECT_DOUBLE_EQ(m.at("douai"), 0.25);
  EXPECT_DOUBLE_EQ(m.at("agen"), 0.75);
}

TEST(Synth, GroundTruthSpansTileTheText) {
  const auto c = generate_synthetic_corpus(7, 100, {{"douai", 0.5}, {"agen", 0.5}});
  ASSERT_EQ(c.documents.size(), 100u);
  ASSERT_EQ(c.truth.records.size(), 100u);
  std::set<std::string> ids;
  for (std::size_t d = 0; d < 100; ++d) {
    const auto& doc = c.documents[d];
    const auto& rec = c.truth.records[d];
    EXPECT_TRUE(ids.insert(doc.doc_id).second);
    EXPECT_EQ(rec.doc_id, doc.doc_id);
    ASSERT_FALSE(rec.segments.empty());
    EXPECT_EQ(rec.segments.front().start, 0u);
    EXPECT_EQ(rec.segments.back().end, doc.text.size());
    EXPECT_EQ(rec.segments.back().name, "conclusion");
    for (std::size_t s = 1; s < rec.segments.size(); ++s) EXPECT_EQ(rec.segments[s].start, rec.segments[s - 1].end);
  }
}

TEST(Synth, TruthJsonlRoundTrip) {
  oracle::TempDir dir;
  const auto c = generate_synthetic_corpus(3, 20, {{"agen", 1.0}});
  write_truth(dir.path() / "t.jsonl", c.truth);
  const auto back = read_truth(dir.path() / "t.jsonl");
  ASSERT_EQ(back.size(), c.truth.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].doc_id, c.truth.records[i].doc_id);
    EXPECT_EQ(back[i].articles, c.truth.records[i].articles);
    EXPECT_EQ(back[i].segments, c.truth.records[i].segments);
    EXPECT_EQ(back[i].outcome, c.truth.records[i].outcome);
  }
}

TEST(Synth, PlantedCountsAgreeWithOutcome) {
  SynthRng rng(1);
  for (int i = 0; i < 300; ++i) {
    for (Outcome o : {Outcome::AppelleeWins, Outcome::AppellantWins, Outcome::Undetermined}) {
      const auto [c, r] = planted_keyword_counts(rng, o);
      if (o == Outcome::AppelleeWins) EXPECT_GT(c, r);
      if (o == Outcome::AppellantWins) EXPECT_GT(r, c);
      if (o == Outcome::Undetermined) EXPECT_EQ(c, r);
    }
  }
}
