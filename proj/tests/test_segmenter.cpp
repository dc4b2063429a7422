#include <gtest/gtest.h>

#include "courtnet/segmenter.hpp"
#include "courtnet/synth.hpp"

using namespace courtnet;

namespace {

Document doc_of(std::string text, std::string jurisdiction = "douai") {
  return make_document(std::move(text), std::move(jurisdiction), "t.txt");
}

std::vector<SegmentSpan> spans(const SegmentedJudgment& s) {
  std::vector<SegmentSpan> out;
  for (const auto& seg : s.segments) out.push_back(seg.span());
  return out;
}

}  // namespace

TEST(Segment, DouaiStyleByHand) {
  const std::string text =
      "COUR D'APPEL DE DOUAI\n\nAPPELANT\nM. X\nreprésenté par Me Jean Dupont\n\nINTIMEE\nMme Y\n\n"
      "PAR CES MOTIFS\nConfirme le jugement.\n";
  const auto s = segment(doc_of(text), douai_profile());
  ASSERT_EQ(s.segments.size(), 4u);
  EXPECT_EQ(s.segments[0].name, "header");
  EXPECT_EQ(s.segments[1].name, "appellant");
  EXPECT_EQ(s.segments[1].start, text.find("APPELANT"));
  EXPECT_EQ(s.segments[1].content_start, text.find("M. X"));
  EXPECT_EQ(s.segments[2].name, "appellee");
  EXPECT_EQ(s.segments[2].start, text.find("INTIMEE"));
  EXPECT_EQ(s.segments[3].name, "conclusion");
  EXPECT_EQ(s.segments[3].end, text.size());
  EXPECT_EQ(segment_text(doc_of(text), s.segments[3]), "Confirme le jugement.\n");
}

TEST(Segment, MissingConclusion) {
  try {
    segment(doc_of("APPELANT\nX\nINTIME\nY\n"), douai_profile());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MissingConclusion);
  }
}

TEST(Segment, OutOfOrderMarkers) {
  try {
    segment(doc_of("INTIME\nY\nAPPELANT\nX\nPAR CES MOTIFS\nConfirme.\n"), douai_profile());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OutOfOrderMarkers);
  }
}

TEST(Segment, EmptyDocument) {
  Document d{"id", "douai", "  \n", "x"};
  EXPECT_THROW(segment(d, douai_profile()), Error);
}

TEST(Segment, FuzzyMarker) {
  const std::string text = "APPELANT\nX\nINTIME\nY\nFAITS PROCÉDURE\nblabla\nPAR CES MOTIFS\nConfirme.\n";
  const auto s = segment(doc_of(text), douai_profile());
  ASSERT_NE(s.find("debate"), nullptr);
  EXPECT_EQ(s.find("debate")->start, text.find("FAITS"));
}

TEST(Segment, ProseLinesDoNotMatchShortMarkers) {
  const std::string text =
      "ENTRE :\nSARL X\nreprésentée par Me Paul Roux\nET :\nM. Y\nEt il est dit que le contrat est nul.\n"
      "PAR CES MOTIFS :\nInfirme.\n";
  const auto s = segment(doc_of(text, "agen"), agen_profile());
  ASSERT_NE(s.find("appellee"), nullptr);
  EXPECT_EQ(s.find("appellee")->start, text.find("ET :"));
  EXPECT_EQ(s.find("conclusion")->start, text.find("PAR CES MOTIFS"));
}

TEST(Segment, SyntheticGroundTruthBothStyles) {
  const auto c = generate_synthetic_corpus(7, 100, {{"douai", 0.5}, {"agen", 0.5}});
  const auto profiles = default_profiles();
  std::size_t douai = 0, agen = 0;
  for (std::size_t d = 0; d < c.documents.size(); ++d) {
    const auto& doc = c.documents[d];
    const auto s = segment(doc, profiles.at(doc.jurisdiction));
    EXPECT_EQ(spans(s), c.truth.records[d].segments) << doc.doc_id;
    ++(doc.jurisdiction == "douai" ? douai : agen);
    // Generic profile recovers the same boundaries.
    EXPECT_EQ(spans(segment(doc, generic_profile())), c.truth.records[d].segments) << doc.doc_id;
  }
  EXPECT_GT(douai, 0u);
  EXPECT_GT(agen, 0u);
}

TEST(Profile, ValidationAndJson) {
  for (const auto& [name, p] : default_profiles()) {
    EXPECT_NO_THROW(validate(p));
    const auto back = profile_from_json(nlohmann::json::parse(to_json(p).dump()));
    EXPECT_EQ(back.markers.size(), p.markers.size());
  }
  KeywordProfile bad{"x", {{"appellant", {"ENTRE"}}}, 0.8};
  EXPECT_THROW(validate(bad), Error);
  bad.markers.push_back({"conclusion", {"PAR CES MOTIFS"}});
  EXPECT_NO_THROW(validate(bad));
  bad.markers.push_back({"nonsense", {"X"}});
  EXPECT_THROW(validate(bad), Error);
}

TEST(SplitSentences, Examples) {
  EXPECT_TRUE(split_sentences("").empty());
  EXPECT_EQ(split_sentences("Confirme le jugement. Condamne X aux dépens.").size(), 2u);
  EXPECT_EQ(split_sentences("représenté par Me J. Dupont, avocat.").size(), 1u);
}

TEST(SplitSentences, AbbreviationsAndHeadings) {
  EXPECT_EQ(split_sentences("Vu l'art. 700 du code. Rejette.").size(), 2u);
  EXPECT_EQ(split_sentences("M. Dupont est présent. Mme. Durand aussi.").size(), 2u);
  const auto s = split_sentences("PAR CES MOTIFS\nLa cour confirme le jugement");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], "PAR CES MOTIFS");
  EXPECT_EQ(split_sentences("une phrase\ncontinue ici").size(), 1u);
  EXPECT_EQ(split_sentences("un paragraphe\n\nun autre").size(), 2u);
  EXPECT_EQ(split_sentences("Il pleut; Il vente.").size(), 2u);
  EXPECT_EQ(split_sentences("valeur 3.5 euros").size(), 1u);
}

TEST(FlowGraph, IdenticalDocuments) {
  const std::string text = "APPELANT\n\nINTIME\n\nPAR CES MOTIFS\n";
  const std::vector<Document> corpus = {{"a", "douai", text, ""}, {"b", "douai", text, ""}};
  const auto g = build_flow_graph(corpus, "douai");
  ASSERT_EQ(g.nodes.size(), 3u);
  for (const auto& n : g.nodes) EXPECT_EQ(n.occurrence, 2u);
  ASSERT_EQ(g.edges.size(), 2u);
  for (const auto& e : g.edges) EXPECT_EQ(e.count, 2u);
}

TEST(FlowGraph, ContractsSimilarLabels) {
  const std::vector<Document> corpus = {{"a", "douai", "faits et procedure", ""}, {"b", "douai", "faits procedure", ""}};
  const auto g = build_flow_graph(corpus, "douai", 0.8);
  ASSERT_EQ(g.nodes.size(), 1u);
  EXPECT_EQ(g.nodes[0].label, "faits et procedure");
  EXPECT_EQ(g.nodes[0].occurrence, 2u);
}

TEST(FlowGraph, LongTextNaming) {
  const std::vector<Document> corpus = {{"a", "douai", "un deux trois quatre cinq six", ""}};
  const auto g = build_flow_graph(corpus, "douai");
  ASSERT_EQ(g.nodes.size(), 1u);
  EXPECT_EQ(g.nodes[0].label, "Long_Text_0_0");
  EXPECT_EQ(g.nodes[0].occurrence, 1u);
}

TEST(FlowGraph, LongTextsNeverMerge) {
  const std::string s = "un deux trois quatre cinq six";
  const std::vector<Document> corpus = {{"a", "douai", s, ""}, {"b", "douai", s, ""}};
  const auto g = build_flow_graph(corpus, "douai");
  EXPECT_EQ(g.nodes.size(), 2u);
}

TEST(FlowGraph, Errors) {
  EXPECT_THROW(build_flow_graph({}, "douai"), Error);
  EXPECT_THROW(build_flow_graph({{"a", "agen", "x", ""}}, "douai"), Error);
  EXPECT_THROW(build_flow_graph({{"a", "douai", "x", ""}}, "douai", 1.2), Error);
}
