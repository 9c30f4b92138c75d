#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "promises/model.hpp"

namespace promises {

/// Sizes of the tied extreme blocks of a non-decreasing profile:
/// `bottom` = number of entries equal to the minimum, `top_start` = I minus
/// the number of entries equal to the maximum. Positions [0, bottom) form the
/// bottom block and [top_start, I) the top block.
struct SplitIndices {
  std::size_t bottom;
  std::size_t top_start;

  friend bool operator==(const SplitIndices&, const SplitIndices&) = default;
};

inline SplitIndices split_indices(const IntensityProfile& v) {
  const auto& x = v.values;
  if (x.empty() || x.front() == x.back())
    throw Error(ErrorCode::AllEqual, "equalizing transfer undefined on a constant profile");
  std::size_t bottom = 1;
  while (x[bottom] == x.front()) ++bottom;
  std::size_t top_start = x.size() - 1;
  while (x[top_start - 1] == x.back()) --top_start;
  return {bottom, top_start};
}

/// Moves X from the top tied block to the bottom tied block, splitting it
/// evenly within each block. The increment is zero-sum.
inline IntensityProfile phi(const IntensityProfile& v, const Rational& amount) {
  const auto split = split_indices(v);
  const auto n = v.size();
  IntensityProfile out = v;
  const Rational up = amount / Rational(static_cast<long long>(split.bottom));
  const Rational down = amount / Rational(static_cast<long long>(n - split.top_start));
  for (std::size_t k = 0; k < split.bottom; ++k) out.values[k] += up;
  for (std::size_t k = split.top_start; k < n; ++k) out.values[k] -= down;
  return out;
}

/// Largest transfer that keeps the profile ordered: the bottom block reaches
/// its upper neighbour or the top block reaches its lower neighbour.
inline Rational max_step(const IntensityProfile& v) {
  const auto split = split_indices(v);
  const auto& x = v.values;
  const auto n = x.size();
  Rational lift = Rational(static_cast<long long>(split.bottom)) *
                  (x[split.bottom] - x[split.bottom - 1]);
  Rational drop = Rational(static_cast<long long>(n - split.top_start)) *
                  (x[split.top_start] - x[split.top_start - 1]);
  return lift < drop ? lift : drop;
}

struct SelectionStep {
  IntensityProfile intensities;  ///< profile after this full step
  Rational amount;               ///< transfer X_l
  SplitIndices split;            ///< blocks of the profile the step was applied to
};

struct SelectionTrace {
  std::vector<SelectionStep> steps;
  Rational final_amount;  ///< X*, zero when no promises are needed
  std::optional<SplitIndices> final_split;
  IntensityProfile final_intensities;
};

struct SelectionResult {
  PromiseProfile profile;
  SelectionTrace trace;
};

namespace detail {

inline Rational prefix_sum(const IntensityProfile& v, std::size_t count) {
  Rational s = 0;
  for (std::size_t k = 0; k < count; ++k) s += v[k];
  return s;
}

}  // namespace detail

/// Equalizing-transfer selection: repeatedly move the largest order-preserving
/// amount from the top block to the bottom block until the weakest
/// kappa_hat members would reach a nonnegative sum, then take the exact
/// partial step that makes that sum zero.
inline SelectionResult run_selection(const Committee& c) {
  const std::size_t kh = c.kappa_hat();
  const std::size_t n = c.size();
  SelectionTrace trace;
  IntensityProfile v{c.intensities()};

  if (detail::prefix_sum(v, kh) >= 0) {
    trace.final_amount = 0;
    trace.final_intensities = v;
    return {PromiseProfile::zero(n), std::move(trace)};
  }

  for (;;) {
    // A constant profile has a positive prefix sum, so the split is defined.
    const auto split = split_indices(v);
    const Rational full = max_step(v);
    auto next = phi(v, full);
    const Rational after = detail::prefix_sum(next, kh);
    if (after < 0) {
      trace.steps.push_back({next, full, split});
      v = std::move(next);
      assert(trace.steps.size() <= n);
      continue;
    }

    // The prefix sum of phi(v, X) is affine in X with positive slope.
    const Rational before = detail::prefix_sum(v, kh);
    const Rational lifted = Rational(static_cast<long long>(std::min(split.bottom, kh))) /
                            Rational(static_cast<long long>(split.bottom));
    const Rational lowered =
        kh > split.top_start ? Rational(static_cast<long long>(kh - split.top_start)) /
                                   Rational(static_cast<long long>(n - split.top_start))
                             : Rational(0);
    const Rational slope = lifted - lowered;
    const Rational amount = after == 0 ? full : Rational(-before / slope);
    trace.final_amount = amount;
    trace.final_split = split;
    trace.final_intensities = phi(v, amount);
    break;
  }

  RationalVector r(trace.final_intensities.values);
  for (std::size_t k = 0; k < n; ++k) r[k] -= c.u(k);
  return {PromiseProfile(std::move(r)), std::move(trace)};
}

}  // namespace promises
