#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "promises/promises.hpp"

namespace promises::testing {

inline RationalVector rv(std::initializer_list<Rational> xs) { return RationalVector(xs); }

inline Rational q(long long num, long long den = 1) { return Rational(num, den); }

inline PromiseProfile pp(std::initializer_list<Rational> xs) { return PromiseProfile(rv(xs)); }

/// Committee described in user order, the way the examples are written.
inline Committee make(std::initializer_list<Rational> u, long long kappa) {
  return build_committee(rv(u), kappa);
}

/// Reform-contingent profile given in user order.
inline PromiseProfile user_profile(const Committee& c, std::initializer_list<Rational> r) {
  return PromiseProfile(c.from_user_order(rv(r)));
}

/// 1-based user indices of a coalition held in sorted positions.
inline std::vector<std::size_t> user_members(const Committee& c, const Coalition& s) {
  std::vector<std::size_t> out;
  for (auto k : s) out.push_back(c.user_index(k) + 1);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string show(const RationalVector& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + to_string(xs[i]);
  return out + ")";
}

/// Seeded generator of small efficient committees and zero-sum profiles.
class Corpus {
 public:
  explicit Corpus(std::uint64_t seed) : rng_(seed) {}

  long long integer(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng_);
  }

  /// Intensities in [-12, 12] with denominators up to `max_den`, resampled
  /// until the sum is positive.
  Committee committee(std::size_t min_size, std::size_t max_size, long long max_den = 1) {
    const auto size = static_cast<std::size_t>(
        integer(static_cast<long long>(min_size), static_cast<long long>(max_size)));
    for (;;) {
      RationalVector u;
      for (std::size_t i = 0; i < size; ++i) u.push_back(q(integer(-12, 12), integer(1, max_den)));
      if (sum(u) <= 0) continue;
      return build_committee(u, integer(1, static_cast<long long>(size)));
    }
  }

  /// Zero-sum profile with entries of magnitude up to `scale`. Every third
  /// draw is the negation of part of u, which lands near the stability boundary.
  PromiseProfile profile(const Committee& c, long long scale = 12) {
    const std::size_t n = c.size();
    RationalVector r(n);
    const auto mode = integer(0, 2);
    for (std::size_t k = 0; k < n; ++k) {
      if (mode == 0 && integer(0, 1) == 1)
        r[k] = -c.u(k);
      else
        r[k] = q(integer(-scale, scale), integer(1, 3));
    }
    const auto fix = static_cast<std::size_t>(integer(0, static_cast<long long>(n) - 1));
    Rational rest = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (k != fix) rest += r[k];
    r[fix] = -rest;
    return PromiseProfile(std::move(r));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Literal coalition check written independently of the library: every
/// subset with at least kappa_hat members must have a nonnegative sum of u + r - s.
inline bool stable_by_enumeration(const Committee& c, const RationalVector& r,
                                  const RationalVector& s) {
  const std::size_t n = c.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::size_t members = 0;
    Rational total = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1U) {
        ++members;
        total += c.u(k) + r[k] - s[k];
      }
    if (members >= c.kappa_hat() && total < 0) return false;
  }
  return true;
}

}  // namespace promises::testing
