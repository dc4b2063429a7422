#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "courtnet/networks.hpp"
#include "oracles.hpp"

using namespace courtnet;

namespace {

LawyerName L(const std::string& name) { return {name, name}; }

CaseResult case_of(std::string id, std::vector<std::string> appellant, std::vector<std::string> appellee, Outcome o) {
  CaseResult r{std::move(id), {}, {}, o};
  for (auto& n : appellant) r.appellant_lawyers.push_back(L(n));
  for (auto& n : appellee) r.appellee_lawyers.push_back(L(n));
  return r;
}

const OpposingEdge* edge(const OpposingNetwork& net, const std::string& from, const std::string& to) {
  for (const auto& e : net.edges)
    if (e.from == from && e.to == to) return &e;
  return nullptr;
}

}  // namespace

TEST(PairWins, FormulaBranches) {
  const NetworkParams p{2.0, 1.0, 1, 2};
  auto w = pair_wins({case_of("d1", {"i"}, {"j"}, Outcome::AppellantWins)}, p);
  EXPECT_DOUBLE_EQ((w[{"i", "j"}]), 2.0);
  EXPECT_EQ(w.count(std::pair<std::string, std::string>{"j", "i"}), 0u);
  w = pair_wins({case_of("d1", {"i"}, {"j"}, Outcome::AppelleeWins)}, p);
  EXPECT_DOUBLE_EQ((w[{"j", "i"}]), 1.0);
  EXPECT_EQ(w.count(std::pair<std::string, std::string>{"i", "j"}), 0u);
  EXPECT_TRUE(pair_wins({}, p).empty());
  EXPECT_TRUE(pair_wins({case_of("d1", {"i"}, {"j"}, Outcome::Undetermined)}, p).empty());
}

TEST(PairWins, EveryCrossSidePair) {
  const auto w = pair_wins({case_of("d", {"a", "b"}, {"c", "d"}, Outcome::AppellantWins)}, {});
  EXPECT_EQ(w.size(), 4u);
  for (const auto& [key, v] : w) EXPECT_DOUBLE_EQ(v, 2.0);
}

TEST(Collapse, Examples) {
  auto e = collapse_pair("i", "j", 2.0, 0.0);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->from, "j");
  EXPECT_EQ(e->to, "i");
  EXPECT_NEAR(e->weight, 2.0 * std::log(3.0), 1e-12);
  EXPECT_FALSE(collapse_pair("i", "j", 3.0, 3.0));
  e = collapse_pair("i", "j", 3.0, 2.0);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->from, "j");
  EXPECT_NEAR(e->weight, std::log(6.0), 1e-12);
  e = collapse_pair("i", "j", 1.0, 4.0);
  EXPECT_EQ(e->from, "i");
  EXPECT_EQ(e->to, "j");
  EXPECT_NEAR(e->weight, 3.0 * std::log(6.0), 1e-12);
}

TEST(Collapse, RandomPairs) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double fw = static_cast<double>(rng() % 20) * (rng() % 2 ? 1.0 : 0.5);
    const double bw = static_cast<double>(rng() % 20) * (rng() % 2 ? 1.0 : 0.5);
    const auto e = collapse_pair("i", "j", fw, bw);
    if (fw == bw) {
      EXPECT_FALSE(e);
      continue;
    }
    ASSERT_TRUE(e);
    EXPECT_EQ(e->to, fw > bw ? "i" : "j");
    EXPECT_NEAR(e->weight, std::abs(fw - bw) * std::log(fw + bw + 1.0), 1e-12);
  }
}

TEST(Opposing, DirectionWeightsAndPruning) {
  const NetworkParams p{2.0, 1.0, 2, 2};
  const std::vector<CaseResult> rs = {case_of("d1", {"i"}, {"j"}, Outcome::AppellantWins),
                                      case_of("d2", {"i"}, {"j"}, Outcome::AppelleeWins),
                                      case_of("d3", {"i"}, {"j"}, Outcome::AppellantWins),
                                      case_of("d4", {"i"}, {"k"}, Outcome::AppellantWins)};
  const auto net = build_opposing_network(rs, p);
  ASSERT_EQ(net.nodes.size(), 2u);  // k has one case
  EXPECT_EQ(net.nodes[0].id, "i");
  EXPECT_EQ(net.nodes[0].total_cases, 4u);
  ASSERT_EQ(net.edges.size(), 1u);
  const auto* e = edge(net, "j", "i");
  ASSERT_NE(e, nullptr);
  EXPECT_DOUBLE_EQ(e->wins_fw, 4.0);
  EXPECT_DOUBLE_EQ(e->wins_bw, 1.0);
  EXPECT_NEAR(e->weight, 3.0 * std::log(6.0), 1e-12);
}

TEST(Opposing, EvenPairHasNoEdge) {
  const NetworkParams p{1.0, 1.0, 1, 2};
  const auto net = build_opposing_network({case_of("d1", {"i"}, {"j"}, Outcome::AppellantWins),
                                           case_of("d2", {"i"}, {"j"}, Outcome::AppelleeWins)},
                                          p);
  EXPECT_EQ(net.nodes.size(), 2u);
  EXPECT_TRUE(net.edges.empty());
}

TEST(Opposing, SelfPairsDroppedAndCounted) {
  const auto net = build_opposing_network({case_of("d1", {"i"}, {"i", "j"}, Outcome::AppellantWins)}, {2, 1, 1, 2});
  EXPECT_EQ(net.self_pairs_dropped, 1u);
  for (const auto& e : net.edges) EXPECT_NE(e.from, e.to);
}

TEST(Opposing, InvalidParams) {
  EXPECT_THROW(build_opposing_network({}, {1.0, 2.0, 1, 2}), Error);
  EXPECT_THROW(build_opposing_network({}, {0.0, 0.0, 1, 2}), Error);
}

TEST(Collaboration, Counting) {
  const NetworkParams p{2, 1, 1, 2};
  std::vector<CaseResult> rs = {case_of("d1", {"x"}, {"a", "b"}, Outcome::AppelleeWins),
                                case_of("d2", {"a", "b"}, {"y"}, Outcome::AppellantWins),
                                case_of("d3", {"a", "b"}, {"y"}, Outcome::AppelleeWins),
                                case_of("d4", {"c", "d"}, {"y"}, Outcome::AppelleeWins),
                                case_of("d5", {"e", "f"}, {"y"}, Outcome::AppelleeWins),
                                case_of("d6", {"y"}, {"e", "f"}, Outcome::AppelleeWins)};
  const auto net = build_collaboration_network(rs, p);
  ASSERT_EQ(net.edges.size(), 2u);
  EXPECT_EQ(net.edges[0].a, "a");
  EXPECT_EQ(net.edges[0].b, "b");
  EXPECT_EQ(net.edges[0].weight(), 1);  // 3 collaborations, 2 wins
  EXPECT_EQ(net.edges[1].a, "e");
  EXPECT_EQ(net.edges[1].weight(), 0);  // one win, one loss, retained
  EXPECT_EQ(net.nodes.size(), 4u);
}

TEST(CaseGraph, ThresholdExamples) {
  const std::map<std::string, std::set<ArticleRef>> arts = {
      {"a", {{"c", "1"}, {"c", "2"}, {"c", "3"}}}, {"b", {{"c", "1"}, {"c", "2"}, {"c", "3"}, {"c", "4"}}}};
  const std::map<std::string, Outcome> outs = {{"a", Outcome::AppelleeWins}, {"b", Outcome::AppellantWins}};
  auto g = build_case_graph(arts, outs, 3);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].shared, 3u);
  EXPECT_EQ(g.nodes[1].outcome, Outcome::AppellantWins);
  g = build_case_graph(arts, outs, 4);
  EXPECT_TRUE(g.edges.empty());
  EXPECT_EQ(g.nodes.size(), 2u);
  EXPECT_THROW(build_case_graph(arts, outs, 0), Error);
}

TEST(CaseGraph, MatchesAllPairsOracleAndIsMonotone) {
  std::mt19937_64 rng(21);
  std::map<std::string, std::set<ArticleRef>> arts;
  for (int d = 0; d < 60; ++d) {
    auto& s = arts["doc" + std::to_string(100 + d)];
    for (int k = 0, n = static_cast<int>(rng() % 7); k < n; ++k) s.insert({"code", std::to_string(rng() % 12)});
  }
  std::vector<std::set<ArticleRef>> sets;
  for (const auto& [id, s] : arts) sets.push_back(s);
  std::set<std::pair<std::size_t, std::size_t>> previous;
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto g = build_case_graph(arts, {}, k);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> got;
    for (const auto& e : g.edges) got[{e.a, e.b}] = e.shared;
    EXPECT_EQ(got, oracle::shared_pairs(sets, k));
    std::set<std::pair<std::size_t, std::size_t>> keys;
    for (const auto& [key, v] : got) keys.insert(key);
    if (k > 1) EXPECT_TRUE(std::includes(previous.begin(), previous.end(), keys.begin(), keys.end()));
    previous = keys;
  }
}

TEST(LawyerStats, ExperienceWinsLosses) {
  const auto stats = lawyer_stats({case_of("d2", {"i"}, {"j"}, Outcome::AppellantWins),
                                   case_of("d1", {"i"}, {"j"}, Outcome::Undetermined),
                                   case_of("d3", {"j"}, {"i"}, Outcome::AppellantWins)});
  EXPECT_EQ(stats.at("i").total_cases, 3u);
  EXPECT_EQ(stats.at("i").wins, 1u);
  EXPECT_EQ(stats.at("i").losses, 1u);
}
