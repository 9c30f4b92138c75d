#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "promises/model.hpp"

namespace promises {

/// Deviation launched by a blocking coalition: the new profile differs from
/// the original only on the coalition members' transfers contingent on
/// `direction`, installs `direction`, and leaves every member strictly better off.
struct BlockingDeviation {
  Coalition coalition;
  PairedProfile new_profile;
  Decision direction;
};

inline constexpr std::size_t kDefaultEnumerationCap = 20;

/// Positions of the kappa_hat smallest entries of `v`, ties broken by lowest position.
inline std::vector<std::size_t> weakest_decisive_members(const RationalVector& v,
                                                         std::size_t kappa_hat) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  order.resize(kappa_hat);
  std::sort(order.begin(), order.end());
  return order;
}

/// Minimum over every status-quo-decisive coalition of its summed net
/// intensity u + r - s. Any coalition of size >= kappa_hat contains a
/// kappa_hat-subset no larger than its weakest members, so the minimum is
/// the sum of the kappa_hat smallest entries.
inline Rational stability_margin(const Committee& c, const PairedProfile& p) {
  auto v = net_intensities(c, p);
  std::sort(v.begin(), v.end());
  Rational margin = 0;
  for (std::size_t k = 0; k < c.kappa_hat(); ++k) margin += v[k];
  return margin;
}

inline Rational stability_margin(const Committee& c, const PromiseProfile& r) {
  return stability_margin(c, PairedProfile::reform_only(r));
}

inline bool is_stable(const Committee& c, const PairedProfile& p) {
  return stability_margin(c, p) >= 0;
}

inline bool is_stable(const Committee& c, const PromiseProfile& r) {
  return stability_margin(c, r) >= 0;
}

/// Literal check of every coalition with at least kappa_hat members.
/// Exponential; meant as a test oracle.
inline bool is_stable_bruteforce(const Committee& c, const PairedProfile& p,
                                 std::size_t cap = kDefaultEnumerationCap) {
  const std::size_t n = c.size();
  if (n > cap || n >= 63)
    throw Error(ErrorCode::InstanceTooLarge, "brute-force stability limited to " +
                                                 std::to_string(cap) + " members, got " +
                                                 std::to_string(n));
  const auto v = net_intensities(c, p);
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) < c.kappa_hat()) continue;
    Rational s = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1U) s += v[k];
    if (s < 0) return false;
  }
  return true;
}

/// Builds a witness deviation when `p` is unstable, following the two
/// constructions that prove necessity of the coalition inequalities:
///
///  * decision StatusQuo: the grand coalition re-promises
///    r'_k = s_k - u_k + sum(u)/I, so everyone votes Reform and gains sum(u)/I.
///  * decision Reform: the weakest kappa_hat members C (by u + r - s) have a
///    negative sum. Members with nonnegative net intensity get
///    s'_k = u_k + r_k + eps; the others pay them out of their slack,
///    s'_k = s_k - alpha * |u~_k|, with alpha < 1. eps is half the value that
///    would make alpha equal to 1.
inline std::optional<BlockingDeviation> find_blocking_coalition(const Committee& c,
                                                                const PairedProfile& p) {
  if (is_stable(c, p)) return std::nullopt;
  const std::size_t n = c.size();

  if (decision(c, p) == Decision::StatusQuo) {
    const Rational share = c.total() / Rational(static_cast<long long>(n));
    RationalVector r_new(n);
    std::vector<std::size_t> changed;
    for (std::size_t k = 0; k < n; ++k) {
      r_new[k] = p.status_quo[k] - c.u(k) + share;
      if (r_new[k] != p.reform[k]) changed.push_back(k);
    }
    return BlockingDeviation{Coalition(std::move(changed), n),
                             PairedProfile(PromiseProfile(std::move(r_new)), p.status_quo),
                             Decision::Reform};
  }

  const auto net = net_intensities(c, p);
  const auto members = weakest_decisive_members(net, c.kappa_hat());

  Rational above = 0;  // sum of nonnegative net intensities in C
  Rational below = 0;  // sum of |net| over negative entries in C
  std::size_t above_count = 0;
  for (auto k : members) {
    if (net[k] >= 0) {
      above += net[k];
      ++above_count;
    } else {
      below -= net[k];
    }
  }
  // A reform decision means some member of C votes Reform, so above_count > 0.
  const Rational eps = (below - above) / Rational(static_cast<long long>(above_count)) / 2;
  const Rational alpha = (above + eps * static_cast<long long>(above_count)) / below;

  RationalVector s_new(p.status_quo.values());
  for (auto k : members) {
    if (net[k] >= 0)
      s_new[k] = c.u(k) + p.reform[k] + eps;
    else
      s_new[k] = p.status_quo[k] + alpha * net[k];
  }
  return BlockingDeviation{Coalition(members, n),
                           PairedProfile(p.reform, PromiseProfile(std::move(s_new))),
                           Decision::StatusQuo};
}

inline std::optional<BlockingDeviation> find_blocking_coalition(const Committee& c,
                                                                const PromiseProfile& r) {
  return find_blocking_coalition(c, PairedProfile::reform_only(r));
}

/// Replays a deviation against the blocking-coalition definition.
inline bool deviation_is_valid(const Committee& c, const PairedProfile& original,
                               const BlockingDeviation& d) {
  const auto& before = d.direction == Decision::StatusQuo ? original.status_quo : original.reform;
  const auto& after =
      d.direction == Decision::StatusQuo ? d.new_profile.status_quo : d.new_profile.reform;
  const auto& untouched_before =
      d.direction == Decision::StatusQuo ? original.reform : original.status_quo;
  const auto& untouched_after =
      d.direction == Decision::StatusQuo ? d.new_profile.reform : d.new_profile.status_quo;
  if (untouched_before != untouched_after) return false;

  const auto old_decision = decision(c, original);
  if (old_decision == d.direction || decision(c, d.new_profile) != d.direction) return false;

  for (std::size_t k = 0; k < c.size(); ++k)
    if ((before[k] != after[k]) != d.coalition.contains(k)) return false;
  if (d.coalition.size() == 0) return false;

  const auto v_old = ex_post_intensities(c, original);
  const auto v_new = ex_post_intensities(c, d.new_profile);
  return std::all_of(d.coalition.begin(), d.coalition.end(),
                     [&](std::size_t k) { return v_new[k] > v_old[k]; });
}

}  // namespace promises
