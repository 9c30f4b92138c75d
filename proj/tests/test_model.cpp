#include <gtest/gtest.h>

#include "support.hpp"

using namespace promises;
using namespace promises::testing;

TEST(Committee, SortsAndCountsExampleOne) {
  const auto c = make({-4, 1, 5}, 2);
  EXPECT_EQ(c.kappa_hat(), 2U);
  EXPECT_EQ(c.opponents(), 1U);
  EXPECT_EQ(c.total(), 2);
}

TEST(Committee, UnsortedInputKeepsPermutation) {
  const auto sorted = make({-4, 1, 5}, 2);
  const auto shuffled = make({5, 1, -4}, 2);
  EXPECT_EQ(shuffled.intensities(), sorted.intensities());
  EXPECT_EQ(shuffled.perm(), (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_EQ(shuffled.raw_intensities(), rv({5, 1, -4}));
  EXPECT_EQ(shuffled.from_user_order(rv({1, 2, 3})), rv({3, 2, 1}));
}

TEST(Committee, ZeroIntensityCountsAsSupporter) {
  const auto c = make({-1, 0, 3}, 2);
  EXPECT_EQ(c.opponents(), 1U);
  EXPECT_EQ(c.supporters(), 2U);
}

TEST(Committee, RejectsInefficientReform) {
  try {
    make({-1, -1, 1}, 2);
    FAIL() << "expected EfficiencyViolated";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EfficiencyViolated);
  }
  EXPECT_THROW(make({-1, 1}, 1), Error);
}

TEST(Committee, RejectsKappaOutsideRange) {
  for (long long kappa : {0LL, 4LL, -2LL}) {
    try {
      make({-4, 1, 5}, kappa);
      FAIL() << "kappa " << kappa;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::KappaOutOfRange);
    }
  }
  EXPECT_THROW(build_committee({}, 1), Error);
}

TEST(PromiseProfile, RequiresZeroSum) {
  try {
    pp({1, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotZeroSum);
  }
  EXPECT_NO_THROW(pp({q(1, 3), q(-1, 3), 0}));
}

TEST(PairedProfile, RequiresMatchingLengths) {
  EXPECT_THROW(PairedProfile(pp({1, -1}), pp({0, 0, 0})), Error);
}

TEST(Decision, ExampleOneWithoutPromisesEnactsReform) {
  // Members 2 and 3 vote for the reform and kappa is 2.
  const auto c = make({-4, 1, 5}, 2);
  const auto p = PairedProfile::reform_only(PromiseProfile::zero(3));
  EXPECT_EQ(decision(c, p), Decision::Reform);
  EXPECT_EQ(ex_post_intensities(c, p).values, rv({-4, 1, 5}));
}

TEST(Decision, ExampleOneStatusQuoPromisesDefeatReform) {
  const auto c = make({-4, 1, 5}, 2);
  const PairedProfile p(PromiseProfile::zero(3), pp({-2, 2, 0}));
  EXPECT_EQ(decision(c, p), Decision::StatusQuo);
  EXPECT_EQ(ex_post_intensities(c, p).values, rv({-2, 2, 0}));
}

TEST(Decision, TiesVoteReform) {
  const auto c = make({-4, 1, 5}, 2);
  // u + r = (0, 1, 3): member 1 is indifferent and votes reform.
  EXPECT_EQ(decision(c, PairedProfile::reform_only(pp({4, 0, -4}))), Decision::Reform);
}

TEST(TotalTransfer, HalfTheAbsoluteSums) {
  EXPECT_EQ(total_transfer(pp({3, 0, -3})), 3);
  EXPECT_EQ(total_transfer(PairedProfile(pp({3, 0, -3}), pp({1, -1, 0}))), 4);
  EXPECT_EQ(total_transfer(PromiseProfile::zero(4)), 0);
}

TEST(Reduction, DifferenceOfBranches) {
  const PairedProfile p(pp({3, 0, -3}), pp({1, -1, 0}));
  EXPECT_EQ(reduce_to_reform_contingent(p).values(), rv({2, 1, -3}));
}

TEST(CoalitionType, SortsAndRejectsDuplicates) {
  const Coalition s({2, 0}, 3);
  EXPECT_EQ(std::vector<std::size_t>(s.begin(), s.end()), (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(1));
  EXPECT_THROW(Coalition({1, 1}, 3), Error);
  EXPECT_THROW(Coalition({3}, 3), Error);
}

TEST(Rationals, ParseForms) {
  EXPECT_EQ(parse_rational("7"), 7);
  EXPECT_EQ(parse_rational(" -16/9 "), q(-16, 9));
  EXPECT_EQ(parse_rational("4/6"), q(2, 3));
  EXPECT_EQ(parse_rational("1.25"), q(5, 4));
  EXPECT_EQ(parse_rational("-.5"), q(-1, 2));
  EXPECT_EQ(to_string(q(4, 6)), "2/3");
  EXPECT_EQ(to_string(q(-8, 2)), "-4");
  for (const char* bad : {"", "1/0", "a", "1/-2", "1.2.3", "--1", "1e3"})
    EXPECT_THROW(parse_rational(bad), Error) << bad;
}

// Paired profiles decide like their reform-contingent reduction.
TEST(ModelProperties, DecisionInvariantUnderReduction) {
  Corpus corpus(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto c = corpus.committee(1, 7);
    const PairedProfile p(corpus.profile(c), corpus.profile(c));
    const auto reduced = PairedProfile::reform_only(reduce_to_reform_contingent(p));
    ASSERT_EQ(decision(c, p), decision(c, reduced));
    ASSERT_LE(total_transfer(reduced), total_transfer(p));
  }
}

TEST(ModelProperties, TotalTransferScalesAndIsNonnegative) {
  Corpus corpus(12);
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = corpus.committee(1, 7);
    const auto r = corpus.profile(c);
    const Rational lambda = q(corpus.integer(1, 9), corpus.integer(1, 4));
    ASSERT_GE(total_transfer(r), 0);
    ASSERT_EQ(total_transfer(r.scaled(lambda)), lambda * total_transfer(r));
  }
}

TEST(ModelProperties, PermutedInputGivesSameCommittee) {
  Corpus corpus(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = corpus.committee(1, 8);
    auto raw = c.raw_intensities();
    std::shuffle(raw.begin(), raw.end(), corpus.engine());
    const auto d = build_committee(raw, static_cast<long long>(c.kappa()));
    ASSERT_EQ(d.intensities(), c.intensities());
    ASSERT_EQ(d.to_user_order(d.intensities()), raw);
  }
}
