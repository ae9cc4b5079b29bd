#include <gtest/gtest.h>

#include "oracle.hpp"
#include "vdw/formula.hpp"
#include "vdw/validity.hpp"

using vdw::FormulaCase;
using vdw::FormulaStatus;

TEST(NumberTheory, Context) {
  const auto ctx = vdw::number_theory(7);
  EXPECT_EQ(ctx.primes, (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(ctx.pi_r, 4u);
  EXPECT_EQ(ctx.primorial, 210u);
  EXPECT_EQ(vdw::number_theory(52).primorial, oracle::primorial(52));
  EXPECT_THROW(vdw::number_theory(1), vdw::hypothesis_violated);
  EXPECT_THROW(vdw::number_theory(53), vdw::range_too_large);
}

TEST(NumberTheory, JValueExamples) {
  EXPECT_EQ(vdw::j_value(5, 3), 0);
  EXPECT_EQ(vdw::j_value(10, 3), 3);
  EXPECT_EQ(vdw::j_value(9, 4), 2);
}

TEST(NumberTheory, LValueExamples) {
  EXPECT_EQ(vdw::l_value(9, 3), 0);
  EXPECT_EQ(vdw::l_value(10, 3), 1);
  EXPECT_FALSE(vdw::l_value(10, 4));
  EXPECT_FALSE(vdw::l_value(3, 5)) << "k - l never reaches r";
}

TEST(NumberTheory, Minimality) {
  for (int r = 2; r <= 13; ++r) {
    const std::uint64_t P = oracle::primorial(r);
    for (std::int64_t k = 2; k <= 200; ++k) {
      const std::int64_t j = vdw::j_value(k, r);
      ASSERT_LT(j, k);
      EXPECT_EQ(oracle::gcd(static_cast<std::uint64_t>(k - j), P), 1u);
      for (std::int64_t i = 0; i < j; ++i) EXPECT_NE(oracle::gcd(static_cast<std::uint64_t>(k - i), P), 1u);

      const auto l = vdw::l_value(k, r);
      std::optional<std::int64_t> expect_l;
      for (std::int64_t i = 0; i <= k - 2 && !expect_l; ++i)
        if (oracle::gcd(static_cast<std::uint64_t>(k - i), P) == static_cast<std::uint64_t>(r)) expect_l = i;
      EXPECT_EQ(l, expect_l) << k << ' ' << r;
    }
  }
}

TEST(Jacobsthal, SmallValues) {
  EXPECT_EQ(vdw::jacobsthal_run(2), 1u);
  EXPECT_EQ(vdw::jacobsthal_run(3), 3u);
  EXPECT_EQ(vdw::jacobsthal_run(4), 3u);
  EXPECT_LT(vdw::jacobsthal_run(5), 27u);
  EXPECT_THROW(vdw::jacobsthal_run(29), vdw::range_too_large);
}

TEST(Jacobsthal, MatchesGcdScanAndPublishedValues) {
  // Longest runs for the first primorials: 1, 3, 5, 9, 13, 21.
  const std::vector<std::pair<int, std::uint64_t>> known{{2, 1}, {3, 3}, {5, 5}, {7, 9}, {11, 13}, {13, 21}};
  for (auto [r, c] : known) EXPECT_EQ(vdw::jacobsthal_run(r), c) << r;
  for (int r = 2; r <= 13; ++r) EXPECT_EQ(vdw::jacobsthal_run(r), oracle::jacobsthal_run(r)) << r;
}

// C(2) = 1 = pi(2)^3, so the strict bound starts at r = 3.
TEST(Jacobsthal, BoundsJ) {
  EXPECT_EQ(vdw::jacobsthal_run(2), 1u);
  for (std::int64_t k = 2; k <= 400; ++k) EXPECT_LE(vdw::j_value(k, 2), 1);
  for (int r = 3; r <= 13; ++r) {
    const auto c = static_cast<std::int64_t>(vdw::jacobsthal_run(r));
    const auto pi = static_cast<std::int64_t>(vdw::number_theory(r).pi_r);
    EXPECT_LT(c, pi * pi * pi);
    for (std::int64_t k = 2; k <= 400; ++k) EXPECT_LT(vdw::j_value(k, r), c + 1);
  }
}

TEST(W2Formula, Examples) {
  auto check = [](std::int64_t k, int r, std::int64_t value, FormulaStatus s, FormulaCase c) {
    const auto f = vdw::w2_formula(k, r);
    EXPECT_EQ(f.value, value) << k << ' ' << r;
    EXPECT_EQ(f.status, s) << k << ' ' << r;
    EXPECT_EQ(f.which, c) << k << ' ' << r;
    return f;
  };
  check(5, 3, 15, FormulaStatus::exact, FormulaCase::I);
  check(6, 4, 21, FormulaStatus::exact, FormulaCase::II_i);
  const auto f10_3 = check(10, 3, 29, FormulaStatus::exact, FormulaCase::IV_i);
  EXPECT_EQ(f10_3.j, 3);
  EXPECT_EQ(f10_3.l, 1);
  EXPECT_EQ(f10_3.m, 1);
  check(9, 4, 32, FormulaStatus::exact, FormulaCase::III_i);
  const auto f10_4 = check(10, 4, 34, FormulaStatus::lower_bound_only, FormulaCase::III_bound);
  EXPECT_TRUE(f10_4.remark_override);
  EXPECT_FALSE(vdw::w2_formula(9, 4).remark_override);
  check(9, 3, 25, FormulaStatus::exact, FormulaCase::II_ii);
}

TEST(W2Formula, Hypothesis) {
  EXPECT_THROW(vdw::w2_formula(3, 4), vdw::hypothesis_violated);
  EXPECT_THROW(vdw::w2_formula(4, 4), vdw::hypothesis_violated);
  EXPECT_THROW(vdw::w2_formula(5, 1), vdw::hypothesis_violated);
  EXPECT_THROW(vdw::extremal_coloring(3, 3), vdw::hypothesis_violated);
}

TEST(W2Formula, ResiduesModSixForThreeColors) {
  for (std::int64_t k = 4; k <= 100; ++k) {
    const auto f = vdw::w2_formula(k, 3);
    std::int64_t expect;
    switch (k % 6) {
      case 1:
      case 5: expect = 3 * k; break;
      case 4: expect = 3 * k - 1; break;
      default: expect = 3 * k - 2;
    }
    EXPECT_EQ(f.value, expect) << k;
    EXPECT_EQ(f.status, FormulaStatus::exact) << k;
  }
}

TEST(W2Formula, StatusMatchesSideConditions) {
  for (int r = 2; r <= 10; ++r) {
    const auto ctx = vdw::number_theory(r);
    const std::int64_t pi3 = static_cast<std::int64_t>(ctx.pi_r * ctx.pi_r * ctx.pi_r);
    for (std::int64_t k = r + 1; k <= 300; ++k) {
      const auto f = vdw::w2_formula(k, r);
      const std::int64_t rk = r * k;
      const bool prime = ctx.primes.back() == static_cast<std::uint64_t>(r);
      bool exact;
      if (f.j == 0) {
        EXPECT_EQ(f.value, rk);
        exact = true;
      } else if (f.j == 1 || (prime && f.l == 0)) {
        EXPECT_EQ(f.value, rk - r + 1);
        exact = true;
      } else if (!prime) {
        EXPECT_EQ(f.value, rk - f.j * (r - 2));
        exact = (f.j == 2 && k >= 2 * r - 3) || (f.j >= 3 && k >= pi3 * (r - 2));
      } else {
        EXPECT_EQ(f.value, rk - f.m * (r - 2));
        exact = f.l == 1 || (f.m == 2 && k >= 2 * r - 3) || (f.m >= 3 && k >= pi3 * (r - 2));
      }
      EXPECT_EQ(f.status == FormulaStatus::exact, exact) << k << ' ' << r;
      EXPECT_EQ(f.m, f.l ? std::min(f.j, *f.l) : f.j);
    }
  }
}

TEST(W2Formula, PeriodicInK) {
  for (int r = 2; r <= 7; ++r) {
    const auto P = static_cast<std::int64_t>(vdw::number_theory(r).primorial);
    for (std::int64_t k = r + 1; k <= r + 60; ++k) {
      const auto a = vdw::w2_formula(k, r);
      const auto b = vdw::w2_formula(k + P, r);
      EXPECT_EQ(a.value - r * k, b.value - r * (k + P)) << k << ' ' << r;
      EXPECT_EQ(a.j, b.j);
      EXPECT_EQ(a.l, b.l);
      // The exactness threshold can flip the bound labels; the case family cannot.
      auto family = [](FormulaCase c) {
        switch (c) {
          case FormulaCase::III_i:
          case FormulaCase::III_ii:
          case FormulaCase::III_bound: return 3;
          case FormulaCase::IV_i:
          case FormulaCase::IV_ii:
          case FormulaCase::IV_iii:
          case FormulaCase::IV_bound: return 4;
          default: return static_cast<int>(c);
        }
      };
      EXPECT_EQ(family(a.which), family(b.which));
    }
  }
}

TEST(ExtremalColoring, Examples) {
  EXPECT_EQ(vdw::format_coloring(vdw::extremal_coloring(5, 3), true), "0^4 1 0^4 2 0^4");
  EXPECT_EQ(vdw::format_coloring(vdw::extremal_coloring(6, 4), true), "0^5 1 0^4 2 0^4 3 0^4");
  EXPECT_EQ(vdw::format_coloring(vdw::extremal_coloring(9, 4), true), "0^8 1 0^6 2 0^6 3 0^8");
  EXPECT_EQ(vdw::format_coloring(vdw::extremal_coloring(9, 3), true), "0^8 1 0^8 2 0^6");
}

TEST(ExtremalColoring, RealizesTheBound) {
  for (int r = 2; r <= 6; ++r) {
    for (std::int64_t k = r + 1; k <= 40; ++k) {
      const auto f = vdw::w2_formula(k, r);
      const auto c = vdw::extremal_coloring(k, r);
      EXPECT_EQ(static_cast<std::int64_t>(c.size()), f.value - 1) << k << ' ' << r;
      EXPECT_TRUE(vdw::is_valid(c, vdw::w2_instance(k, r))) << k << ' ' << r;
    }
  }
}

TEST(ToString, Labels) {
  EXPECT_EQ(vdw::to_string(FormulaCase::II_i), "II.i");
  EXPECT_EQ(vdw::to_string(FormulaCase::III_bound), "III-bound");
  EXPECT_EQ(vdw::to_string(FormulaStatus::lower_bound_only), "lower-bound");
}
