#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "vdw/core.hpp"

using vdw::Coloring;
using vdw::Instance;

namespace {

Coloring seq(std::initializer_list<vdw::Color> c) { return Coloring(c); }

}  // namespace

TEST(Codec, ExpandsRuns) {
  EXPECT_EQ(vdw::parse_coloring("0^2 1^3"), seq({0, 0, 1, 1, 1}));
  EXPECT_EQ(vdw::parse_coloring("2"), seq({2}));
  EXPECT_EQ(vdw::parse_coloring("0^3 1"), seq({0, 0, 0, 1}));
}

TEST(Codec, LongRunsPlaceTheMiddleColor) {
  const Coloring c = vdw::parse_coloring("0^10 1 0^10");
  ASSERT_EQ(c.size(), 21u);
  EXPECT_EQ(c.at_position(11), 1);
  for (std::size_t p = 1; p <= 21; ++p)
    if (p != 11) EXPECT_EQ(c.at_position(p), 0) << p;
}

TEST(Codec, AcceptsSeparatorFreeDigits) {
  EXPECT_EQ(vdw::parse_coloring("00111"), seq({0, 0, 1, 1, 1}));
  EXPECT_EQ(vdw::parse_coloring("0^21").size(), 21u);
  EXPECT_EQ(vdw::parse_coloring("(12)^2 3"), seq({12, 12, 3}));
  EXPECT_EQ(vdw::parse_coloring(" 0\t1\n"), seq({0, 1}));
}

TEST(Codec, EmptyTextIsTheEmptyColoring) {
  EXPECT_TRUE(vdw::parse_coloring("").empty());
  EXPECT_TRUE(vdw::parse_coloring("   ").empty());
}

TEST(Codec, RejectsMalformedInput) {
  EXPECT_THROW(vdw::parse_coloring("0^0"), vdw::parse_error);
  EXPECT_THROW(vdw::parse_coloring("0^"), vdw::parse_error);
  EXPECT_THROW(vdw::parse_coloring("^2"), vdw::parse_error);
  EXPECT_THROW(vdw::parse_coloring("a"), vdw::parse_error);
  EXPECT_THROW(vdw::parse_coloring("(12"), vdw::parse_error);
  EXPECT_THROW(vdw::parse_coloring("()"), vdw::parse_error);
  EXPECT_THROW(vdw::parse_coloring("0^99999999999999999999"), vdw::parse_error);
}

TEST(Codec, ReportsErrorPosition) {
  try {
    vdw::parse_coloring("0 1 x");
    FAIL();
  } catch (const vdw::parse_error& e) {
    EXPECT_EQ(e.position, 4u);
  }
}

TEST(Codec, Formats) {
  EXPECT_EQ(vdw::format_coloring(seq({0, 0, 1, 1, 1}), true), "0^2 1^3");
  EXPECT_EQ(vdw::format_coloring(seq({0, 1, 0}), true), "0 1 0");
  EXPECT_EQ(vdw::format_coloring(Coloring{}, true), "");
  EXPECT_EQ(vdw::format_coloring(Coloring{}, false), "");
  EXPECT_EQ(vdw::format_coloring(seq({0, 0, 1, 1, 1}), false), "00111");
  EXPECT_EQ(vdw::format_coloring(seq({10, 10, 2}), false), "(10)(10)2");
  EXPECT_EQ(vdw::format_coloring(seq({10, 10, 2}), true), "(10)^2 2");
}

TEST(Codec, RoundTripsRandomColorings) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 14);
    const int n = static_cast<int>(rng() % 40);
    const auto raw = oracle::random_sequence(rng, r, n);
    Coloring c(std::vector<vdw::Color>(raw.begin(), raw.end()));
    for (bool compact : {false, true}) {
      const std::string text = vdw::format_coloring(c, compact);
      EXPECT_EQ(vdw::parse_coloring(text), c) << text;
      if (compact) {
        EXPECT_EQ(text.find("^0"), std::string::npos);
        EXPECT_EQ(text.find("^1 "), std::string::npos);
        EXPECT_FALSE(text.size() >= 2 && text.substr(text.size() - 2) == "^1");
      }
    }
  }
}

TEST(Reverse, MirrorsPositions) {
  EXPECT_EQ(vdw::reverse(seq({0, 0, 1, 1, 0})), seq({0, 1, 1, 0, 0}));
  EXPECT_TRUE(vdw::reverse(Coloring{}).empty());
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto raw = oracle::random_sequence(rng, 3, static_cast<int>(rng() % 30));
    Coloring c(std::vector<vdw::Color>(raw.begin(), raw.end()));
    const Coloring r = vdw::reverse(c);
    for (std::size_t p = 1; p <= c.size(); ++p) EXPECT_EQ(r.at_position(p), c.at_position(c.size() + 1 - p));
    EXPECT_EQ(vdw::reverse(r), c);
  }
}

TEST(Instance, ParsesAndLabels) {
  const Instance inst = vdw::parse_instance("4,3,2");
  EXPECT_EQ(inst.r(), 3u);
  EXPECT_EQ(inst.k(0), 4);
  EXPECT_EQ(inst.label(), "(4,3,2)");
  EXPECT_EQ(vdw::parse_instance(" 3 3 "), Instance({3, 3}));
}

TEST(Instance, RejectsBadInput) {
  EXPECT_THROW(vdw::parse_instance(""), vdw::invalid_instance);
  EXPECT_THROW(vdw::parse_instance("0"), vdw::invalid_instance);
  EXPECT_THROW(vdw::parse_instance("0,3"), vdw::invalid_instance);
  EXPECT_THROW(vdw::parse_instance("-1,3"), vdw::invalid_instance);
  EXPECT_THROW(vdw::parse_instance("3;3"), vdw::parse_error);
  EXPECT_THROW(Instance(std::vector<int>{}), vdw::invalid_instance);
}

TEST(Instance, Classification) {
  const auto plain = vdw::validate_instance(std::vector<int>{3, 3});
  EXPECT_TRUE(plain.unusable.empty());
  EXPECT_TRUE(plain.at_most_once.empty());
  EXPECT_FALSE(plain.trivial);

  const auto one = vdw::validate_instance(std::vector<int>{1, 3});
  EXPECT_EQ(one.unusable, std::vector<vdw::Color>{0});
  EXPECT_FALSE(one.trivial);

  const auto once = vdw::validate_instance(std::vector<int>{4, 3, 2, 2});
  EXPECT_EQ(once.at_most_once, (std::vector<vdw::Color>{2, 3}));

  EXPECT_TRUE(vdw::validate_instance(std::vector<int>{1, 1}).trivial);
  EXPECT_THROW(vdw::validate_instance(std::vector<int>{0}), vdw::invalid_instance);
}
