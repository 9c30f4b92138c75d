#include <gtest/gtest.h>

#include "support.hpp"

using namespace promises;
using namespace promises::testing;

TEST(Phi, MovesBetweenTiedBlocks) {
  const IntensityProfile v{rv({-14, -8, 2, 4, 6, 8, 8})};
  const auto split = split_indices(v);
  EXPECT_EQ(split.bottom, 1U);
  EXPECT_EQ(split.top_start, 5U);
  EXPECT_EQ(max_step(v), 4);  // min(1 * 6, 2 * 2)
  EXPECT_EQ(phi(v, 4).values, rv({-10, -8, 2, 4, 6, 6, 6}));
  EXPECT_EQ(phi(v, 1).values, rv({-13, -8, 2, 4, 6, q(15, 2), q(15, 2)}));
}

TEST(Phi, IncrementIsZeroSum) {
  const IntensityProfile v{rv({-3, -3, 1, q(5, 2), 7, 7, 7})};
  const auto w = phi(v, q(9, 4));
  EXPECT_EQ(sum(w.values), sum(v.values));
}

TEST(Phi, ConstantProfileRejected) {
  try {
    split_indices(IntensityProfile{rv({2, 2, 2})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllEqual);
  }
}

TEST(Selection, ExampleFiveTrace) {
  const auto c = make({-14, -8, 2, 4, 6, 8, 8}, 3);
  const auto [r, trace] = run_selection(c);
  ASSERT_EQ(trace.steps.size(), 3U);
  EXPECT_EQ(trace.steps[0].intensities.values, rv({-10, -8, 2, 4, 6, 6, 6}));
  EXPECT_EQ(trace.steps[0].amount, 4);
  EXPECT_EQ(trace.steps[1].intensities.values,
            rv({-8, -8, 2, 4, q(16, 3), q(16, 3), q(16, 3)}));
  EXPECT_EQ(trace.steps[1].amount, 2);
  EXPECT_EQ(trace.steps[2].intensities.values, rv({-6, -6, 2, 4, 4, 4, 4}));
  EXPECT_EQ(trace.steps[2].amount, 4);
  EXPECT_EQ(trace.final_amount, 4);
  EXPECT_EQ(trace.final_intensities.values, rv({-4, -4, 2, 3, 3, 3, 3}));
  EXPECT_EQ(r.values(), rv({10, 4, 0, -1, -3, -5, -5}));
  EXPECT_TRUE(is_equilibrium(c, r).is_equilibrium);
}

TEST(Selection, ExampleOneStopsInsideFirstStep) {
  // max_step is min(1 * 5, 1 * 4) = 4, but three units already make
  // u_1 + u_2 vanish.
  const auto c = make({-4, 1, 5}, 2);
  const auto [r, trace] = run_selection(c);
  EXPECT_TRUE(trace.steps.empty());
  EXPECT_EQ(trace.final_amount, 3);
  EXPECT_EQ(trace.final_intensities.values, rv({-1, 1, 2}));
  EXPECT_EQ(r.values(), rv({3, 0, -3}));
}

TEST(Selection, NoPromisesNeeded) {
  const auto c = make({1, 2, 3}, 2);
  const auto [r, trace] = run_selection(c);
  EXPECT_TRUE(r.is_zero());
  EXPECT_TRUE(trace.steps.empty());
  EXPECT_EQ(trace.final_amount, 0);
  EXPECT_FALSE(trace.final_split);
}

TEST(Selection, ResultMapsBackToUserOrder) {
  const auto c = make({8, -14, 6, 2, -8, 8, 4}, 3);
  const auto [r, trace] = run_selection(c);
  EXPECT_EQ(c.to_user_order(r.values()), rv({-5, 10, -3, 0, 4, -5, -1}));
}

TEST(SelectionProperties, ReplayedTraceReproducesResult) {
  Corpus corpus(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto c = corpus.committee(2, 9, trial % 3 + 1);
    const auto [r, trace] = run_selection(c);
    IntensityProfile v{c.intensities()};
    for (const auto& step : trace.steps) {
      ASSERT_EQ(split_indices(v), step.split);
      ASSERT_EQ(step.amount, max_step(v));
      v = phi(v, step.amount);
      ASSERT_EQ(v, step.intensities);
      Rational prefix = 0;
      for (std::size_t k = 0; k < c.kappa_hat(); ++k) prefix += v[k];
      ASSERT_LT(prefix, 0);
    }
    if (trace.final_amount > 0) {
      ASSERT_LE(trace.final_amount, max_step(v));
      v = phi(v, trace.final_amount);
    }
    ASSERT_EQ(v, trace.final_intensities);
    ASSERT_TRUE(std::is_sorted(v.values.begin(), v.values.end()));
    for (std::size_t k = 0; k < c.size(); ++k) ASSERT_EQ(c.u(k) + r[k], v[k]);
  }
}

TEST(SelectionProperties, SelectedProfileIsAnEquilibrium) {
  Corpus corpus(42);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto c = corpus.committee(1, 10, trial % 4 + 1);
    const auto [r, trace] = run_selection(c);
    ASSERT_TRUE(is_equilibrium(c, r).is_equilibrium) << show(c.intensities()) << " k=" << c.kappa();
    if (!r.is_zero()) {
      Rational prefix = 0;
      for (std::size_t k = 0; k < c.kappa_hat(); ++k) prefix += trace.final_intensities[k];
      ASSERT_EQ(prefix, 0);
    }
  }
}

// The selection only ever pulls the extremes toward each other.
TEST(SelectionProperties, PushesTowardEquality) {
  Corpus corpus(43);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto c = corpus.committee(2, 9);
    const auto [r, trace] = run_selection(c);
    const auto& v = trace.final_intensities.values;
    ASSERT_GE(v.front(), c.u(0));
    ASSERT_LE(v.back(), c.u(c.size() - 1));
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (r[k] > 0) {
        ASSERT_EQ(v[k], v.front());
      }
      if (r[k] < 0) {
        ASSERT_EQ(v[k], v.back());
      }
    }
  }
}

TEST(SelectionProperties, DispersionNoLargerThanAnySample) {
  Corpus corpus(44);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = corpus.committee(2, 7);
    const auto [r, trace] = run_selection(c);
    const auto& v = trace.final_intensities.values;
    const Rational best = v.back() - v.front();
    for (const auto& s : sample_equilibria(c, 5, static_cast<std::uint64_t>(trial))) {
      RationalVector w(c.intensities());
      for (std::size_t k = 0; k < w.size(); ++k) w[k] += s[k];
      const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
      if (s == r) {
        ASSERT_EQ(*hi - *lo, best);
      } else {
        ASSERT_LT(best, *hi - *lo);
      }
    }
  }
}
