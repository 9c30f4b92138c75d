#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "promises/error.hpp"
#include "promises/rational.hpp"

namespace promises {

enum class Decision { Reform, StatusQuo };

constexpr std::string_view decision_name(Decision d) {
  return d == Decision::Reform ? "Reform" : "StatusQuo";
}

/// A committee voting on a binary reform under a kappa-majority rule.
///
/// Intensities are held sorted non-decreasing; `perm()[k]` is the position
/// in the caller's original sequence of the member at sorted position k.
/// All indices in this library are 0-based sorted positions unless a
/// function says otherwise.
class Committee {
 public:
  /// Sorts `raw`, checks efficiency (sum > 0) and 1 <= kappa <= I.
  static Committee build(const RationalVector& raw, long long kappa) {
    if (raw.empty())
      throw Error(ErrorCode::KappaOutOfRange, "committee must have at least one member");
    if (kappa < 1 || kappa > static_cast<long long>(raw.size()))
      throw Error(ErrorCode::KappaOutOfRange,
                  "kappa " + std::to_string(kappa) + " outside [1, " +
                      std::to_string(raw.size()) + "]");
    Rational total = sum(raw);
    if (total <= 0)
      throw Error(ErrorCode::EfficiencyViolated,
                  "sum of intensities is " + to_string(total) + ", reform must be efficient");

    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });

    Committee c;
    c.kappa_ = static_cast<std::size_t>(kappa);
    c.perm_ = std::move(order);
    c.u_.reserve(raw.size());
    for (auto k : c.perm_) c.u_.push_back(raw[k]);
    c.total_ = std::move(total);
    c.opponents_ = static_cast<std::size_t>(
        std::count_if(c.u_.begin(), c.u_.end(), [](const Rational& x) { return x < 0; }));
    return c;
  }

  std::size_t size() const noexcept { return u_.size(); }
  std::size_t kappa() const noexcept { return kappa_; }
  /// Defeat threshold I - kappa + 1.
  std::size_t kappa_hat() const noexcept { return u_.size() - kappa_ + 1; }
  /// n: number of members with u_i < 0. They occupy sorted positions [0, n).
  std::size_t opponents() const noexcept { return opponents_; }
  std::size_t supporters() const noexcept { return u_.size() - opponents_; }

  const RationalVector& intensities() const noexcept { return u_; }
  const Rational& u(std::size_t k) const { return u_.at(k); }
  const Rational& total() const noexcept { return total_; }

  const std::vector<std::size_t>& perm() const noexcept { return perm_; }
  std::size_t user_index(std::size_t sorted) const { return perm_.at(sorted); }

  /// Reorders a sorted-position vector into the caller's original order.
  template <typename T>
  std::vector<T> to_user_order(const std::vector<T>& sorted) const {
    check_length(sorted.size());
    std::vector<T> out(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k) out[perm_[k]] = sorted[k];
    return out;
  }

  template <typename T>
  std::vector<T> from_user_order(const std::vector<T>& user) const {
    check_length(user.size());
    std::vector<T> out(user.size());
    for (std::size_t k = 0; k < user.size(); ++k) out[k] = user[perm_[k]];
    return out;
  }

  /// Intensities in the caller's original order.
  RationalVector raw_intensities() const { return to_user_order(u_); }

  void check_length(std::size_t n) const {
    if (n != u_.size())
      throw Error(ErrorCode::LengthMismatch, "profile has " + std::to_string(n) +
                                                 " entries, committee has " +
                                                 std::to_string(u_.size()));
  }

  friend bool operator==(const Committee&, const Committee&) = default;

 private:
  Committee() = default;

  RationalVector u_;
  std::size_t kappa_ = 1;
  std::vector<std::size_t> perm_;
  Rational total_;
  std::size_t opponents_ = 0;
};

inline Committee build_committee(const RationalVector& raw, long long kappa) {
  return Committee::build(raw, kappa);
}

/// Zero-sum vector of outcome-contingent net transfers.
class PromiseProfile {
 public:
  PromiseProfile() = default;

  explicit PromiseProfile(RationalVector transfers) : r_(std::move(transfers)) {
    if (auto s = promises::sum(r_); s != 0)
      throw Error(ErrorCode::NotZeroSum, "promise profile sums to " + to_string(s));
  }

  static PromiseProfile zero(std::size_t n) { return PromiseProfile(RationalVector(n)); }

  std::size_t size() const noexcept { return r_.size(); }
  const Rational& operator[](std::size_t k) const { return r_[k]; }
  const RationalVector& values() const noexcept { return r_; }
  auto begin() const { return r_.begin(); }
  auto end() const { return r_.end(); }

  bool is_zero() const {
    return std::all_of(r_.begin(), r_.end(), [](const Rational& x) { return x == 0; });
  }

  PromiseProfile scaled(const Rational& lambda) const {
    RationalVector out(r_);
    for (auto& x : out) x *= lambda;
    return PromiseProfile(std::move(out));
  }

  friend PromiseProfile operator-(const PromiseProfile& a, const PromiseProfile& b) {
    if (a.size() != b.size())
      throw Error(ErrorCode::LengthMismatch, "profiles of different lengths");
    RationalVector out(a.r_);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= b.r_[k];
    return PromiseProfile(std::move(out));
  }

  friend bool operator==(const PromiseProfile&, const PromiseProfile&) = default;

 private:
  RationalVector r_;
};

/// (r, s): transfers paid if the reform passes, and if it fails.
struct PairedProfile {
  PromiseProfile reform;
  PromiseProfile status_quo;

  PairedProfile(PromiseProfile r, PromiseProfile s)
      : reform(std::move(r)), status_quo(std::move(s)) {
    if (reform.size() != status_quo.size())
      throw Error(ErrorCode::LengthMismatch, "reform and status-quo profiles differ in length");
  }

  /// (r, 0).
  static PairedProfile reform_only(PromiseProfile r) {
    auto n = r.size();
    return {std::move(r), PromiseProfile::zero(n)};
  }

  std::size_t size() const noexcept { return reform.size(); }

  friend bool operator==(const PairedProfile&, const PairedProfile&) = default;
};

/// Ex-post (or interim) utility vector.
struct IntensityProfile {
  RationalVector values;

  std::size_t size() const noexcept { return values.size(); }
  const Rational& operator[](std::size_t k) const { return values[k]; }

  friend bool operator==(const IntensityProfile&, const IntensityProfile&) = default;
};

/// Set of member positions, kept sorted.
class Coalition {
 public:
  Coalition() = default;

  Coalition(std::vector<std::size_t> members, std::size_t committee_size)
      : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
      throw Error(ErrorCode::LengthMismatch, "coalition lists a member twice");
    if (!members_.empty() && members_.back() >= committee_size)
      throw Error(ErrorCode::LengthMismatch, "coalition member index out of range");
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool contains(std::size_t k) const {
    return std::binary_search(members_.begin(), members_.end(), k);
  }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  std::vector<std::size_t> members_;
};

/// Sincere voting: member k votes Reform when u_k + r_k >= s_k.
inline Decision decision(const Committee& c, const PairedProfile& p) {
  c.check_length(p.size());
  std::size_t votes = 0;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c.u(k) + p.reform[k] >= p.status_quo[k]) ++votes;
  return votes >= c.kappa() ? Decision::Reform : Decision::StatusQuo;
}

inline IntensityProfile ex_post_intensities(const Committee& c, const PairedProfile& p) {
  if (decision(c, p) == Decision::StatusQuo) return {p.status_quo.values()};
  IntensityProfile v{c.intensities()};
  for (std::size_t k = 0; k < c.size(); ++k) v.values[k] += p.reform[k];
  return v;
}

/// Half the L1 norm of a single profile.
inline Rational total_transfer(const PromiseProfile& r) {
  Rational t = 0;
  for (const auto& x : r) t += abs(x);
  return t / 2;
}

inline Rational total_transfer(const PairedProfile& p) {
  return total_transfer(p.reform) + total_transfer(p.status_quo);
}

/// (r, s) -> r - s; stability is invariant under this reduction.
inline PromiseProfile reduce_to_reform_contingent(const PairedProfile& p) {
  return p.reform - p.status_quo;
}

/// u + r - s, the quantity every stability test works on.
inline RationalVector net_intensities(const Committee& c, const PairedProfile& p) {
  c.check_length(p.size());
  RationalVector v(c.intensities());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += p.reform[k] - p.status_quo[k];
  return v;
}

}  // namespace promises
