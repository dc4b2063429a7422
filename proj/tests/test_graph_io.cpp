#include <gtest/gtest.h>

#include <sstream>

#include "courtnet/graph_io.hpp"
#include "oracles.hpp"

using namespace courtnet;

TEST(GraphIo, GraphmlRoundTripWithEscaping) {
  ExportGraph g;
  g.name = "demo";
  g.directed = true;
  g.node_keys = {{"label", AttrType::String}, {"size", AttrType::Long}};
  g.edge_keys = {{"weight", AttrType::Double}};
  g.nodes = {{"a&b", {std::string("<x> \"q\" 'é'"), 3LL}}, {"c", {std::string(""), -1LL}}};
  g.edges = {{"a&b", "c", {0.1 + 0.2}}};
  std::ostringstream os;
  write_graphml(os, g);
  const auto back = read_graphml(os.str());
  EXPECT_EQ(back.name, "demo");
  EXPECT_TRUE(back.directed);
  ASSERT_EQ(back.nodes.size(), 2u);
  EXPECT_EQ(back.nodes[0].id, "a&b");
  EXPECT_EQ(std::get<std::string>(back.nodes[0].attrs[0]), "<x> \"q\" 'é'");
  EXPECT_EQ(std::get<long long>(back.nodes[1].attrs[1]), -1);
  ASSERT_EQ(back.edges.size(), 1u);
  EXPECT_EQ(std::get<double>(back.edges[0].attrs[0]), 0.1 + 0.2);
}

TEST(GraphIo, DotOutput) {
  ExportGraph g;
  g.directed = false;
  g.node_keys = {{"label", AttrType::String}};
  g.nodes = {{"n0", {std::string("say \"hi\"")}}, {"n1", {std::string("x")}}};
  g.edges = {{"n0", "n1", {}}};
  std::ostringstream os;
  write_dot(os, g);
  const std::string s = os.str();
  EXPECT_NE(s.find("graph \"G\" {"), std::string::npos);
  EXPECT_NE(s.find("\"n0\" -- \"n1\""), std::string::npos);
  EXPECT_NE(s.find("label=\"say \\\"hi\\\"\""), std::string::npos);
}

TEST(GraphIo, OpposingNetworkRoundTrip) {
  OpposingNetwork net;
  net.nodes = {{"a", "A", 3, 2, 1}, {"b", "B", 2, 0, 2}};
  net.edges = {{"b", "a", 2.1972245773362196, 2.0, 0.0}};
  std::ostringstream os;
  write_graphml(os, to_export(net));
  const auto back = opposing_from_export(read_graphml(os.str()));
  ASSERT_EQ(back.nodes.size(), 2u);
  EXPECT_EQ(back.nodes[0].display, "A");
  EXPECT_EQ(back.nodes[1].losses, 2u);
  ASSERT_EQ(back.edges.size(), 1u);
  EXPECT_EQ(back.edges[0].weight, net.edges[0].weight);
  EXPECT_EQ(back.edges[0].from, "b");
}

TEST(GraphIo, MalformedInput) {
  EXPECT_THROW(read_graphml("<node id=\"x\"><data key=\"zz\">1</data></node>"), Error);
  EXPECT_THROW(read_graphml("<graphml><node"), Error);
}

TEST(GraphIo, CaseAndFlowExports) {
  CaseGraph cg;
  cg.k = 3;
  cg.nodes = {{"d1", Outcome::AppelleeWins, 0}, {"d2", Outcome::Undetermined, std::nullopt}};
  cg.edges = {{0, 1, 4}};
  const auto g = to_export(cg);
  EXPECT_EQ(g.name, "cases_k3");
  EXPECT_EQ(std::get<long long>(g.nodes[1].attrs[1]), -1);
  EXPECT_EQ(g.edges[0].source, "d1");

  FlowGraph fg{"douai", {{"PAR CES MOTIFS", 2}}, {{0, 0, 1}}};
  const auto f = to_export(fg);
  EXPECT_TRUE(f.directed);
  EXPECT_EQ(std::get<std::string>(f.nodes[0].attrs[0]), "PAR CES MOTIFS");
}
