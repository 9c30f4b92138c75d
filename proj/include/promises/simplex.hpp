#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "promises/rational.hpp"

namespace promises::lp {

/// maximize c.x  subject to  A x <= b,  x >= 0,  with b >= 0 so the origin
/// is a feasible starting vertex. Exact arithmetic, Bland's rule.
struct Problem {
  std::vector<RationalVector> rows;  ///< A, one entry per constraint
  RationalVector rhs;                ///< b
  RationalVector objective;          ///< c
};

enum class Status { Optimal, Unbounded };

struct Solution {
  Status status = Status::Optimal;
  Rational value;
  RationalVector primal;  ///< x
  RationalVector dual;    ///< y >= 0 with y.A >= c and y.b = value
  std::size_t pivots = 0;
};

class Tableau {
 public:
  explicit Tableau(const Problem& p)
      : m_(p.rows.size()), n_(p.objective.size()), basis_(m_), cost_(n_ + m_ + 1) {
    cells_.assign(m_, RationalVector(n_ + m_ + 1));
    for (std::size_t i = 0; i < m_; ++i) {
      if (p.rows[i].size() != n_)
        throw Error(ErrorCode::LengthMismatch, "constraint row width differs from objective");
      if (p.rhs[i] < 0)
        throw Error(ErrorCode::LengthMismatch, "origin must be feasible (negative right-hand side)");
      for (std::size_t j = 0; j < n_; ++j) cells_[i][j] = p.rows[i][j];
      cells_[i][n_ + i] = 1;
      cells_[i][n_ + m_] = p.rhs[i];
      basis_[i] = n_ + i;
    }
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = -p.objective[j];
  }

  Solution solve() {
    Solution out;
    const std::size_t width = n_ + m_;
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < width; ++j)
        if (cost_[j] < 0) {
          entering = j;
          break;
        }
      if (!entering) break;

      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        const auto& a = cells_[i][*entering];
        if (a <= 0) continue;
        Rational ratio = cells_[i][width] / a;
        if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best = std::move(ratio);
        }
      }
      if (!leaving) {
        out.status = Status::Unbounded;
        return out;
      }
      pivot(*leaving, *entering);
      ++out.pivots;
    }

    out.value = cost_[width];
    out.primal.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) out.primal[basis_[i]] = cells_[i][width];
    out.dual.assign(cost_.begin() + static_cast<std::ptrdiff_t>(n_),
                    cost_.begin() + static_cast<std::ptrdiff_t>(width));
    return out;
  }

 private:
  void pivot(std::size_t row, std::size_t col) {
    const std::size_t width = n_ + m_ + 1;
    auto& pr = cells_[row];
    const Rational inv = 1 / pr[col];
    for (auto& x : pr)
      if (x != 0) x *= inv;
    auto eliminate = [&](RationalVector& target) {
      const Rational factor = target[col];
      if (factor == 0) return;
      for (std::size_t j = 0; j < width; ++j)
        if (pr[j] != 0) target[j] -= factor * pr[j];
    };
    for (std::size_t i = 0; i < m_; ++i)
      if (i != row) eliminate(cells_[i]);
    eliminate(cost_);
    basis_[row] = col;
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<std::size_t> basis_;
  std::vector<RationalVector> cells_;
  RationalVector cost_;  ///< reduced costs, last entry is the objective value
};

inline Solution maximize(const Problem& p) { return Tableau(p).solve(); }

}  // namespace promises::lp
