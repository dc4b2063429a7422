#include <gtest/gtest.h>

#include <random>

#include "courtnet/text.hpp"
#include "courtnet/textmetrics.hpp"
#include "oracles.hpp"

using namespace courtnet;

TEST(Text, FoldStripsDiacriticsAndCase) {
  EXPECT_EQ(text::fold("INTIMÉE"), "intimee");
  EXPECT_EQ(text::fold("Procédure"), "procedure");
  EXPECT_EQ(text::fold("Œuvre"), "oeuvre");
  EXPECT_EQ(text::fold("Noël"), "noel");
}

TEST(Text, Utf8Validation) {
  EXPECT_TRUE(text::is_valid_utf8("déjà"));
  EXPECT_FALSE(text::is_valid_utf8(std::string("\xC3\x28", 2)));
  EXPECT_FALSE(text::is_valid_utf8(std::string("\xFF", 1)));
}

TEST(Text, SqueezeAndTrim) {
  EXPECT_EQ(text::squeeze_spaces("  a \t b\n c  "), "a b c");
  EXPECT_EQ(text::trim("  x  "), "x");
}

TEST(Text, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 2.0, 1e-10, 0.0}) EXPECT_EQ(std::stod(text::format_double(v)), v);
}

TEST(Jaro, IdenticalAndDisjoint) {
  EXPECT_DOUBLE_EQ(jaro_similarity("abc", "abc"), 1.0);
  EXPECT_DOUBLE_EQ(jaro_similarity("abc", "xyz"), 0.0);
  EXPECT_DOUBLE_EQ(jaro_similarity("", ""), 0.0);
  EXPECT_DOUBLE_EQ(jaro_similarity("abc", ""), 0.0);
}

TEST(Jaro, Martha) { EXPECT_NEAR(jaro_similarity("MARTHA", "MARHTA"), 17.0 / 18.0, 1e-4); }

TEST(Jaro, TableOnePairs) {
  EXPECT_NEAR(jaro_similarity("faits et procedure", "faits procedure"), 0.86, 0.01);
  EXPECT_NEAR(jaro_similarity("procedure et pretentions des parties", "procedure et moyens des parties"), 0.83, 0.01);
  EXPECT_NEAR(jaro_similarity("moyens et pretentions des parties", "pretentions et moyens des parties"), 0.92, 0.01);
}

TEST(Jaro, CaseAndAccentInsensitive) {
  EXPECT_DOUBLE_EQ(jaro_similarity("FAITS ET PROCÉDURE", "faits et procedure"), 1.0);
}

TEST(Jaro, MatchesBruteForceOracle) {
  std::mt19937_64 rng(11);
  const std::u32string alphabet = U"abcde é";
  for (int trial = 0; trial < 2000; ++trial) {
    std::u32string a, b;
    const auto la = rng() % 12, lb = rng() % 12;
    for (std::size_t i = 0; i < la; ++i) a += alphabet[rng() % alphabet.size()];
    for (std::size_t i = 0; i < lb; ++i) b += alphabet[rng() % alphabet.size()];
    ASSERT_NEAR(jaro_folded(a, b).value(), oracle::jaro(a, b), 1e-12) << text::encode(a) << " / " << text::encode(b);
  }
}

TEST(Jaro, SymmetricBounded) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::u32string a, b;
    for (std::size_t i = 0, n = rng() % 9; i < n; ++i) a += static_cast<char32_t>('a' + rng() % 4);
    for (std::size_t i = 0, n = rng() % 9; i < n; ++i) b += static_cast<char32_t>('a' + rng() % 4);
    const double ab = jaro_folded(a, b), ba = jaro_folded(b, a);
    EXPECT_DOUBLE_EQ(ab, ba);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
  }
}

TEST(SameNode, Examples) {
  EXPECT_TRUE(same_node("par ces motifs", "par ces motifs", 0.8));
  EXPECT_TRUE(same_node("moyens et pretentions des parties", "pretentions et moyens des parties", 0.8));
  EXPECT_FALSE(same_node("abc", "xyz", 0.8));
  EXPECT_TRUE(same_node("faits et procedure", "faits procedure"));
}

TEST(SameNode, StrictThreshold) {
  EXPECT_FALSE(same_node("abc", "abc", 1.0));
  EXPECT_TRUE(same_node("abc", "xyz", 0.0) == false);
}

TEST(SameNode, RejectsBadThreshold) {
  EXPECT_THROW(same_node("a", "a", 1.5), Error);
  EXPECT_THROW(same_node("a", "a", -0.1), Error);
  try {
    same_node("a", "a", 2.0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidThreshold);
  }
}
