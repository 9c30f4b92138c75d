#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "promises/model.hpp"
#include "promises/stability.hpp"

namespace promises {

/// Which characterization of the minimum-transfer stable profiles applies.
enum class Regime {
  FrustratedDeep,         ///< supporters are at least two votes short of kappa
  FrustratedPivotal,      ///< supporters are exactly one vote short
  NoGainsFromTrade,       ///< supporters decisive and opponents cannot profit from bribing
  FirstOrderPreemption,   ///< strong supporters can afford to preempt the bribe
  HigherOrderPreemption,  ///< preemption cascades down to the critical member
};

constexpr std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::FrustratedDeep: return "frustrated-deep";
    case Regime::FrustratedPivotal: return "frustrated-pivotal";
    case Regime::NoGainsFromTrade: return "no-gains-from-trade";
    case Regime::FirstOrderPreemption: return "first-order-preemption";
    case Regime::HigherOrderPreemption: return "higher-order-preemption";
  }
  return "unknown";
}

/// Committee-level aggregate quantities. Positions are 0-based sorted.
struct Aggregates {
  Rational support;           ///< sum of u over supporters (u >= 0)
  Rational opposition;        ///< sum of -u over opponents (u < 0)
  Rational gains_from_trade;  ///< -(sum of the kappa_hat smallest u)
  /// Surplus of the members above kappa_hat relative to each weak supporter
  /// k in [n, kappa_hat): sum_{j >= kappa_hat} (u_j - u_k).
  std::vector<std::pair<std::size_t, Rational>> surplus;
  /// Surplus relative to the last member of the defeat-threshold block.
  Rational threshold_surplus;
  /// Common ex-post intensity of equalized promisers, sum(u) / (kappa - 1); kappa >= 2 only.
  std::optional<Rational> promiser_level;
  /// First member strictly above promiser_level; higher-order regime only.
  std::optional<std::size_t> critical_position;
  /// Minimum transfer in the higher-order regime.
  std::optional<Rational> higher_order_transfer;
};

namespace detail {

inline Regime classify_with(const Committee& c, const Rational& gains, const Rational& surplus) {
  if (c.kappa() == 1) return Regime::NoGainsFromTrade;
  if (c.supporters() + 1 < c.kappa()) return Regime::FrustratedDeep;
  if (c.supporters() + 1 == c.kappa()) return Regime::FrustratedPivotal;
  if (gains <= 0) return Regime::NoGainsFromTrade;
  if (gains <= surplus) return Regime::FirstOrderPreemption;
  return Regime::HigherOrderPreemption;
}

}  // namespace detail

inline Aggregates aggregates(const Committee& c) {
  Aggregates a;
  const std::size_t n = c.opponents();
  const std::size_t kh = c.kappa_hat();
  for (const auto& x : c.intensities()) {
    if (x < 0)
      a.opposition -= x;
    else
      a.support += x;
  }
  for (std::size_t k = 0; k < kh; ++k) a.gains_from_trade -= c.u(k);

  auto surplus_at = [&](std::size_t k) {
    Rational s = 0;
    for (std::size_t j = kh; j < c.size(); ++j) s += c.u(j) - c.u(k);
    return s;
  };
  for (std::size_t k = n; k < kh; ++k) a.surplus.emplace_back(k, surplus_at(k));
  a.threshold_surplus = surplus_at(kh - 1);

  if (c.kappa() >= 2) {
    a.promiser_level = c.total() / Rational(static_cast<long long>(c.kappa() - 1));
    if (detail::classify_with(c, a.gains_from_trade, a.threshold_surplus) ==
        Regime::HigherOrderPreemption) {
      const auto& level = *a.promiser_level;
      std::size_t k = 0;
      while (c.u(k) <= level) ++k;
      a.critical_position = k;
      Rational t = 0;
      for (std::size_t j = k; j < c.size(); ++j) t += c.u(j) - level;
      a.higher_order_transfer = t;
    }
  }
  return a;
}

inline Regime classify(const Committee& c, const Aggregates& a) {
  return detail::classify_with(c, a.gains_from_trade, a.threshold_surplus);
}

inline Regime classify(const Committee& c) { return classify(c, aggregates(c)); }

inline Rational min_total_transfer(const Committee& c) {
  const auto a = aggregates(c);
  switch (classify(c, a)) {
    case Regime::FrustratedDeep:
    case Regime::FrustratedPivotal: return a.opposition;
    case Regime::NoGainsFromTrade: return 0;
    case Regime::FirstOrderPreemption: return a.gains_from_trade;
    case Regime::HigherOrderPreemption: return *a.higher_order_transfer;
  }
  return 0;
}

/// Sorted position k such that, in every nonzero equilibrium, members below k
/// receive and members from k on pay. None when the only equilibrium is zero.
inline std::optional<std::size_t> critical_member(const Committee& c) {
  const auto a = aggregates(c);
  switch (classify(c, a)) {
    case Regime::FrustratedDeep:
    case Regime::FrustratedPivotal: return c.opponents();
    case Regime::NoGainsFromTrade: return std::nullopt;
    case Regime::FirstOrderPreemption: return c.kappa_hat();
    case Regime::HigherOrderPreemption: return a.critical_position;
  }
  return std::nullopt;
}

enum class Condition {
  IndividualRationality,  ///< a promiser gives away more than u_j
  SignPattern,            ///< a member is on the wrong side of the promiser/promisee split
  Ordering,               ///< a promisee ends up above a promiser
  Total,                  ///< total or block transfer differs from the minimum
  Equalization,           ///< a member's ex-post intensity is not pinned where required
};

constexpr std::string_view condition_name(Condition c) {
  switch (c) {
    case Condition::IndividualRationality: return "individual-rationality";
    case Condition::SignPattern: return "sign-pattern";
    case Condition::Ordering: return "ordering";
    case Condition::Total: return "total";
    case Condition::Equalization: return "equalization";
  }
  return "unknown";
}

struct Violation {
  Condition condition;
  std::vector<std::size_t> members;  ///< sorted positions involved, may be empty
  std::string detail;
};

struct EquilibriumVerdict {
  bool is_equilibrium = true;
  std::vector<Violation> violations;

  bool has(Condition c) const {
    return std::any_of(violations.begin(), violations.end(),
                       [c](const Violation& v) { return v.condition == c; });
  }
};

namespace detail {

class VerdictBuilder {
 public:
  void add(Condition c, std::vector<std::size_t> members, std::string detail) {
    verdict_.violations.push_back({c, std::move(members), std::move(detail)});
  }
  EquilibriumVerdict finish() && {
    verdict_.is_equilibrium = verdict_.violations.empty();
    return std::move(verdict_);
  }

 private:
  EquilibriumVerdict verdict_;
};

inline std::string pos(std::size_t k) { return "member@" + std::to_string(k); }

// Promisers in [from, I): -u_j <= r_j <= 0.
inline void check_promisers(const Committee& c, const PromiseProfile& r, std::size_t from,
                            VerdictBuilder& out) {
  for (std::size_t j = from; j < c.size(); ++j) {
    if (r[j] > 0)
      out.add(Condition::SignPattern, {j}, pos(j) + " should pay but receives " + to_string(r[j]));
    if (r[j] < -c.u(j))
      out.add(Condition::IndividualRationality, {j},
              pos(j) + " promises " + to_string(-r[j]) + " above its intensity " +
                  to_string(c.u(j)));
  }
}

// Promisees in [0, to): r_i >= 0.
inline void check_promisees(const PromiseProfile& r, std::size_t to, VerdictBuilder& out) {
  for (std::size_t i = 0; i < to; ++i)
    if (r[i] < 0)
      out.add(Condition::SignPattern, {i}, pos(i) + " should receive but pays " + to_string(-r[i]));
}

// max over [0, split) of v must not exceed min over [split, I).
inline void check_ordering(const RationalVector& v, std::size_t split, VerdictBuilder& out) {
  if (split == 0 || split >= v.size()) return;
  auto low = std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(split));
  auto high = std::min_element(v.begin() + static_cast<std::ptrdiff_t>(split), v.end());
  if (*low > *high) {
    auto i = static_cast<std::size_t>(low - v.begin());
    auto j = static_cast<std::size_t>(high - v.begin());
    out.add(Condition::Ordering, {i, j},
            "ex-post " + pos(i) + "=" + to_string(*low) + " exceeds " + pos(j) + "=" +
                to_string(*high));
  }
}

inline Rational block_sum(const PromiseProfile& r, std::size_t from, std::size_t to) {
  Rational s = 0;
  for (std::size_t k = from; k < to; ++k) s += r[k];
  return s;
}

}  // namespace detail

/// Checks `r` against the exact characterization of the equilibrium set for
/// the committee's regime and reports every failed condition.
inline EquilibriumVerdict is_equilibrium(const Committee& c, const PromiseProfile& r) {
  c.check_length(r.size());
  const auto a = aggregates(c);
  const auto regime = classify(c, a);
  const std::size_t n = c.opponents();
  const std::size_t kh = c.kappa_hat();
  const std::size_t size = c.size();
  RationalVector v(c.intensities());
  for (std::size_t k = 0; k < size; ++k) v[k] += r[k];

  detail::VerdictBuilder out;
  switch (regime) {
    case Regime::FrustratedDeep:
    case Regime::FrustratedPivotal: {
      detail::check_promisers(c, r, n, out);
      if (auto paid = detail::block_sum(r, n, size); paid != -a.opposition)
        out.add(Condition::Total, {},
                "supporters promise " + to_string(-paid) + ", required " + to_string(a.opposition));
      if (regime == Regime::FrustratedDeep) {
        for (std::size_t i = 0; i < n; ++i)
          if (v[i] != 0)
            out.add(Condition::Equalization, {i},
                    detail::pos(i) + " ex-post " + to_string(v[i]) + ", required 0");
      } else {
        detail::check_promisees(r, n, out);
        detail::check_ordering(v, n, out);
      }
      break;
    }
    case Regime::NoGainsFromTrade: {
      if (!r.is_zero())
        out.add(Condition::Total, {},
                "only the zero profile is an equilibrium, total is " + to_string(total_transfer(r)));
      break;
    }
    case Regime::FirstOrderPreemption: {
      detail::check_promisees(r, kh, out);
      detail::check_promisers(c, r, kh, out);
      detail::check_ordering(v, kh, out);
      const auto received = detail::block_sum(r, 0, kh);
      const auto total = total_transfer(r);
      if (received != a.gains_from_trade || total != a.gains_from_trade)
        out.add(Condition::Total, {},
                "defeat-threshold block receives " + to_string(received) + " (total " +
                    to_string(total) + "), required " + to_string(a.gains_from_trade));
      break;
    }
    case Regime::HigherOrderPreemption: {
      const std::size_t ks = *a.critical_position;
      const auto& level = *a.promiser_level;
      for (std::size_t j = ks; j < size; ++j)
        if (v[j] != level)
          out.add(Condition::Equalization, {j},
                  detail::pos(j) + " ex-post " + to_string(v[j]) + ", required " + to_string(level));
      detail::check_promisees(r, ks, out);
      for (std::size_t i = 0; i < ks; ++i)
        if (v[i] > level)
          out.add(Condition::Ordering, {i},
                  detail::pos(i) + " ex-post " + to_string(v[i]) + " exceeds promiser level " +
                      to_string(level));
      if (auto total = total_transfer(r); total != *a.higher_order_transfer)
        out.add(Condition::Total, {},
                "total " + to_string(total) + ", required " + to_string(*a.higher_order_transfer));
      break;
    }
  }
  return std::move(out).finish();
}

/// A closed-form member of the equilibrium set, for every regime.
inline PromiseProfile canonical_equilibrium(const Committee& c) {
  const auto a = aggregates(c);
  const std::size_t n = c.opponents();
  const std::size_t kh = c.kappa_hat();
  RationalVector r(c.size());
  switch (classify(c, a)) {
    case Regime::FrustratedDeep:
    case Regime::FrustratedPivotal: {
      const Rational share = a.opposition / a.support;
      for (std::size_t k = 0; k < c.size(); ++k) r[k] = k < n ? Rational(-c.u(k)) : -share * c.u(k);
      break;
    }
    case Regime::NoGainsFromTrade: break;
    case Regime::FirstOrderPreemption: {
      const Rational to_opponents = a.gains_from_trade / a.opposition;
      const Rational from_strong = a.gains_from_trade / a.threshold_surplus;
      for (std::size_t i = 0; i < n; ++i) r[i] = -to_opponents * c.u(i);
      for (std::size_t k = kh; k < c.size(); ++k) r[k] = -from_strong * (c.u(k) - c.u(kh - 1));
      break;
    }
    case Regime::HigherOrderPreemption: {
      const Rational to_opponents = *a.higher_order_transfer / a.opposition;
      for (std::size_t i = 0; i < n; ++i) r[i] = -to_opponents * c.u(i);
      for (std::size_t j = *a.critical_position; j < c.size(); ++j)
        r[j] = *a.promiser_level - c.u(j);
      break;
    }
  }
  return PromiseProfile(std::move(r));
}

enum class TransferPattern {
  Empty,        ///< no promises at all
  AcrossAisle,  ///< opponents only receive, supporters only pay
  CircleWagon,  ///< some supporter is a promisee
  Other,        ///< some opponent pays while no supporter receives
};

constexpr std::string_view pattern_name(TransferPattern p) {
  switch (p) {
    case TransferPattern::Empty: return "empty";
    case TransferPattern::AcrossAisle: return "across-aisle";
    case TransferPattern::CircleWagon: return "circle-wagon";
    case TransferPattern::Other: return "other";
  }
  return "unknown";
}

inline TransferPattern classify_transfer_pattern(const Committee& c, const PromiseProfile& r) {
  c.check_length(r.size());
  if (r.is_zero()) return TransferPattern::Empty;
  const std::size_t n = c.opponents();
  for (std::size_t j = n; j < c.size(); ++j)
    if (r[j] > 0) return TransferPattern::CircleWagon;
  for (std::size_t i = 0; i < n; ++i)
    if (r[i] < 0) return TransferPattern::Other;
  return TransferPattern::AcrossAisle;
}

namespace detail {

inline void require_kappa_two(const Committee& c) {
  if (c.kappa() < 2)
    throw Error(ErrorCode::KappaTooSmall, "aisle analysis requires kappa >= 2");
}

inline bool constant_on(const Committee& c, std::size_t from, std::size_t to) {
  for (std::size_t k = from + 1; k < to; ++k)
    if (c.u(k) != c.u(from)) return false;
  return true;
}

}  // namespace detail

/// True when every equilibrium is of the across-the-aisle type.
inline bool all_equilibria_across_aisle(const Committee& c) {
  detail::require_kappa_two(c);
  const auto a = aggregates(c);
  const std::size_t n = c.opponents();
  const std::size_t kh = c.kappa_hat();
  switch (classify(c, a)) {
    case Regime::FrustratedDeep:
    case Regime::FrustratedPivotal:
    case Regime::NoGainsFromTrade: return true;
    case Regime::FirstOrderPreemption: {
      if (!detail::constant_on(c, n, kh)) return false;
      return a.gains_from_trade == a.threshold_surplus || c.u(kh) == c.u(n);
    }
    case Regime::HigherOrderPreemption:
      // Weak supporters below the critical member sit at or below the promiser
      // level, so they all equal it exactly when the weakest one does.
      return !(c.u(n) < *a.promiser_level);
  }
  return true;
}

/// An equilibrium in which the weakest supporter receives a positive
/// transfer, or none when every equilibrium reaches across the aisle.
/// eps is half the tightest strict upper bound the construction allows.
inline std::optional<PromiseProfile> circle_wagon_witness(const Committee& c) {
  if (all_equilibria_across_aisle(c)) return std::nullopt;
  const auto a = aggregates(c);
  const std::size_t n = c.opponents();
  const std::size_t kh = c.kappa_hat();
  RationalVector r(c.size());

  if (classify(c, a) == Regime::FirstOrderPreemption) {
    const auto& gains = a.gains_from_trade;
    Rational bound = gains;
    if (c.u(n) < c.u(kh - 1)) {
      bound = std::min(bound, Rational(c.u(kh - 1) - c.u(n)));
    } else {
      bound = std::min(bound, Rational((1 - gains / a.threshold_surplus) * (c.u(kh) - c.u(kh - 1))));
    }
    const Rational eps = bound / 2;
    for (std::size_t i = 0; i < n; ++i) r[i] = -(gains - eps) / a.opposition * c.u(i);
    r[n] = eps;
    const Rational from_strong = gains / a.threshold_surplus;
    for (std::size_t k = kh; k < c.size(); ++k) r[k] = -from_strong * (c.u(k) - c.u(kh - 1));
  } else {
    const auto& total = *a.higher_order_transfer;
    const auto& level = *a.promiser_level;
    const Rational eps = std::min(total, Rational(level - c.u(n))) / 2;
    for (std::size_t i = 0; i < n; ++i) r[i] = -(total - eps) / a.opposition * c.u(i);
    r[n] = eps;
    for (std::size_t j = *a.critical_position; j < c.size(); ++j) r[j] = level - c.u(j);
  }
  return PromiseProfile(std::move(r));
}

/// Multiplies every intensity by lambda > 0, keeping kappa and member order.
inline Committee scale_committee(const Committee& c, const Rational& lambda) {
  if (lambda <= 0)
    throw Error(ErrorCode::NonpositiveScale, "scale factor must be positive, got " + to_string(lambda));
  auto raw = c.raw_intensities();
  for (auto& x : raw) x *= lambda;
  return Committee::build(raw, static_cast<long long>(c.kappa()));
}

}  // namespace promises
