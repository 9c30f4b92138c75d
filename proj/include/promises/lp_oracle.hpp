#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "promises/model.hpp"
#include "promises/simplex.hpp"

namespace promises {

inline constexpr std::size_t kDefaultLpCap = 16;

/// Which status-quo-decisive coalitions enter the constraint system.
enum class CoalitionFamily {
  ThresholdSize,  ///< exactly kappa_hat members (sufficient)
  AllDecisive,    ///< every size >= kappa_hat
};

struct LpSolution {
  Rational optimum;
  PromiseProfile profile;
  /// Coalitions (sorted positions) whose stability constraint is tight at `profile`.
  std::vector<Coalition> active;
  std::size_t pivots = 0;
};

namespace detail {

inline std::vector<std::uint64_t> decisive_masks(std::size_t n, std::size_t kappa_hat,
                                                 CoalitionFamily family) {
  std::vector<std::uint64_t> out;
  const std::size_t top = family == CoalitionFamily::ThresholdSize ? kappa_hat : n;
  for (std::size_t size = kappa_hat; size <= top; ++size) {
    // Gosper's hack over all masks with `size` bits.
    std::uint64_t mask = (std::uint64_t{1} << size) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (mask < limit) {
      out.push_back(mask);
      const std::uint64_t low = mask & (~mask + 1);
      const std::uint64_t ripple = mask + low;
      mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
  }
  return out;
}

inline void check_lp_size(const Committee& c, std::size_t cap) {
  if (c.size() > cap || c.size() >= 63)
    throw Error(ErrorCode::InstanceTooLarge, "LP oracle limited to " + std::to_string(cap) +
                                                 " members, got " + std::to_string(c.size()));
}

/// Dual of  min g.(a, b)  s.t.  sum_C (a - b) >= -sum_C u  for each C,
///           sum (a - b) = 0,  [ (a + b).1 / 2 <= pinned ],  a, b >= 0.
/// Rows are the primal variables a_0..a_{I-1}, b_0..b_{I-1}; the origin is
/// feasible because g > 0, and the primal point is read off the duals.
inline lp::Problem transfer_dual(const Committee& c, const std::vector<std::uint64_t>& masks,
                                 const RationalVector& weights,
                                 const std::optional<Rational>& pinned) {
  const std::size_t n = c.size();
  const std::size_t cols = masks.size() + 2 + (pinned ? 1 : 0);
  lp::Problem p;
  p.rows.assign(2 * n, RationalVector(cols));
  p.rhs = weights;
  p.objective.assign(cols, Rational(0));
  for (std::size_t col = 0; col < masks.size(); ++col) {
    Rational w = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(masks[col] >> i & 1U)) continue;
      w -= c.u(i);
      p.rows[i][col] = 1;
      p.rows[n + i][col] = -1;
    }
    p.objective[col] = w;
  }
  const std::size_t mu = masks.size();
  for (std::size_t i = 0; i < n; ++i) {
    p.rows[i][mu] = 1;
    p.rows[i][mu + 1] = -1;
    p.rows[n + i][mu] = -1;
    p.rows[n + i][mu + 1] = 1;
  }
  if (pinned) {
    const std::size_t theta = mu + 2;
    p.objective[theta] = -*pinned;
    for (std::size_t i = 0; i < 2 * n; ++i) p.rows[i][theta] = Rational(-1, 2);
  }
  return p;
}

inline PromiseProfile profile_from_duals(const RationalVector& y, std::size_t n) {
  RationalVector r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = y[i] - y[n + i];
  return PromiseProfile(std::move(r));
}

}  // namespace detail

/// Exact minimum of T_r = sum|r|/2 over the stable profiles, by simplex on
/// the coalition constraint system.
inline LpSolution lp_min_transfer(const Committee& c, std::size_t cap = kDefaultLpCap,
                                  CoalitionFamily family = CoalitionFamily::ThresholdSize) {
  detail::check_lp_size(c, cap);
  const std::size_t n = c.size();
  const auto masks = detail::decisive_masks(n, c.kappa_hat(), family);
  const auto problem =
      detail::transfer_dual(c, masks, RationalVector(2 * n, Rational(1, 2)), std::nullopt);
  const auto sol = lp::maximize(problem);
  // The primal is feasible (any large equalizing profile is stable), so the dual is bounded.
  if (sol.status != lp::Status::Optimal)
    throw Error(ErrorCode::InstanceTooLarge, "transfer LP reported unbounded dual");

  LpSolution out{sol.value, detail::profile_from_duals(sol.dual, n), {}, sol.pivots};
  for (auto mask : detail::decisive_masks(n, c.kappa_hat(), CoalitionFamily::ThresholdSize)) {
    Rational s = 0;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) {
        s += c.u(i) + out.profile[i];
        members.push_back(i);
      }
    if (s == 0) out.active.emplace_back(std::move(members), n);
  }
  return out;
}

/// Seeded equilibria: vertices of the minimum-transfer face reached under
/// random positive objectives, mixed with random exact convex weights.
inline std::vector<PromiseProfile> sample_equilibria(const Committee& c, std::size_t count,
                                                     std::uint64_t seed,
                                                     std::size_t cap = kDefaultLpCap) {
  if (count == 0) return {};
  detail::check_lp_size(c, cap);
  const std::size_t n = c.size();
  const auto optimum = lp_min_transfer(c, cap).optimum;
  const auto masks = detail::decisive_masks(n, c.kappa_hat(), CoalitionFamily::ThresholdSize);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(1, 32);
  std::vector<PromiseProfile> vertices;
  for (std::size_t v = 0; v < count + 1; ++v) {
    RationalVector g(2 * n);
    for (auto& x : g) x = Rational(weight(rng), 8);
    const auto sol = lp::maximize(detail::transfer_dual(c, masks, g, optimum));
    vertices.push_back(detail::profile_from_duals(sol.dual, n));
  }

  std::uniform_int_distribution<int> mix(0, 4);
  std::vector<PromiseProfile> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<int> w(vertices.size());
    int total = 0;
    for (auto& x : w) total += x = mix(rng);
    if (total == 0) {
      w[s % w.size()] = 1;
      total = 1;
    }
    RationalVector r(n);
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (w[v] == 0) continue;
      const Rational share(w[v], total);
      for (std::size_t i = 0; i < n; ++i) r[i] += share * vertices[v][i];
    }
    out.emplace_back(std::move(r));
  }
  return out;
}

}  // namespace promises
