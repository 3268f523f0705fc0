#include "fraclocal/exact_lp.hpp"

#include <stdexcept>

namespace fraclocal {

// Dictionary form: basic_i = rhs_i - sum_j coef[i][j] * nonbasic_j,
//                  z = z0 + sum_j cost[j] * nonbasic_j.
// Variables 0..n-1 are the y_j, n.. the slacks in row order.

PackingLp::PackingLp(int columns) : n_(columns), cost_(columns, 1), nonbasic_(columns) {
  for (int j = 0; j < n_; ++j) nonbasic_[j] = j;
}

void PackingLp::add_row(const std::vector<int>& row) {
  // slack = 1 - sum_{j in row} y_j, rewritten over the current nonbasics
  std::vector<Rational> coef(n_, 0);
  Rational rhs = 1;
  std::vector<int> position(n_ + static_cast<int>(basic_.size()), -1);
  for (int i = 0; i < static_cast<int>(basic_.size()); ++i) position[basic_[i]] = i;
  std::vector<int> nonbasic_at(position.size(), -1);
  for (int j = 0; j < n_; ++j) nonbasic_at[nonbasic_[j]] = j;
  for (int y : row) {
    if (y < 0 || y >= n_) throw std::out_of_range("row entry outside the column range");
    if (nonbasic_at[y] >= 0) {
      coef[nonbasic_at[y]] += 1;
      continue;
    }
    const int i = position[y];
    rhs -= rhs_[i];
    for (int j = 0; j < n_; ++j) coef[j] -= coef_[i][j];
  }
  coef_.push_back(std::move(coef));
  rhs_.push_back(rhs);
  basic_.push_back(n_ + static_cast<int>(basic_.size()));
}

void PackingLp::pivot(int leave, int enter) {
  const int m = static_cast<int>(basic_.size());
  const Rational p = coef_[leave][enter];
  rhs_[leave] /= p;
  for (int j = 0; j < n_; ++j)
    if (j != enter) coef_[leave][j] /= p;
  coef_[leave][enter] = 1 / p;

  for (int i = 0; i < m; ++i) {
    if (i == leave || coef_[i][enter] == 0) continue;
    const Rational factor = coef_[i][enter];
    rhs_[i] -= factor * rhs_[leave];
    for (int j = 0; j < n_; ++j)
      if (j != enter && coef_[leave][j] != 0) coef_[i][j] -= factor * coef_[leave][j];
    coef_[i][enter] = -factor * coef_[leave][enter];
  }
  const Rational c = cost_[enter];
  z0_ += c * rhs_[leave];
  for (int j = 0; j < n_; ++j)
    if (j != enter && coef_[leave][j] != 0) cost_[j] -= c * coef_[leave][j];
  cost_[enter] = -c * coef_[leave][enter];

  std::swap(basic_[leave], nonbasic_[enter]);
  ++pivots_;
}

PackingSolution PackingLp::solve() {
  const int m = static_cast<int>(basic_.size());
  // dual simplex while some row is violated (only after rows were added to a
  // solved dictionary; costs are then already nonpositive)
  while (true) {
    int leave = -1;
    for (int i = 0; i < m; ++i)
      if (rhs_[i] < 0 && (leave == -1 || basic_[i] < basic_[leave])) leave = i;
    if (leave == -1) break;
    int enter = -1;
    Rational best_ratio;
    for (int j = 0; j < n_; ++j) {
      if (coef_[leave][j] >= 0) continue;
      if (cost_[j] > 0) throw std::logic_error("dual simplex needs a dual feasible dictionary");
      Rational ratio = cost_[j] / coef_[leave][j];
      if (enter == -1 || ratio < best_ratio || (ratio == best_ratio && nonbasic_[j] < nonbasic_[enter])) {
        enter = j;
        best_ratio = ratio;
      }
    }
    if (enter == -1) throw std::logic_error("packing LP infeasible");
    pivot(leave, enter);
  }
  // primal simplex, Bland's rule
  while (true) {
    int enter = -1;
    for (int j = 0; j < n_; ++j)
      if (cost_[j] > 0 && (enter == -1 || nonbasic_[j] < nonbasic_[enter])) enter = j;
    if (enter == -1) break;

    int leave = -1;
    Rational best_ratio;
    for (int i = 0; i < m; ++i) {
      if (coef_[i][enter] <= 0) continue;
      Rational ratio = rhs_[i] / coef_[i][enter];
      if (leave == -1 || ratio < best_ratio || (ratio == best_ratio && basic_[i] < basic_[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == -1) throw std::logic_error("packing LP unbounded");
    pivot(leave, enter);
  }

  PackingSolution out;
  out.value = z0_;
  out.pivots = pivots_;
  out.primal.assign(n_, 0);
  out.dual.assign(m, 0);
  for (int i = 0; i < m; ++i)
    if (basic_[i] < n_) out.primal[basic_[i]] = rhs_[i];
  for (int j = 0; j < n_; ++j)
    if (nonbasic_[j] >= n_) out.dual[nonbasic_[j] - n_] = -cost_[j];
  return out;
}

PackingSolution solve_packing_lp(int columns, const std::vector<std::vector<int>>& rows) {
  std::vector<bool> covered(columns, false);
  for (const auto& r : rows)
    for (int j : r) {
      if (j < 0 || j >= columns) throw std::out_of_range("row entry outside the column range");
      covered[j] = true;
    }
  for (int j = 0; j < columns; ++j)
    if (!covered[j]) throw std::invalid_argument("uncovered column makes the packing LP unbounded");
  PackingLp lp(columns);
  for (const auto& r : rows) lp.add_row(r);
  return lp.solve();
}

}  // namespace fraclocal
