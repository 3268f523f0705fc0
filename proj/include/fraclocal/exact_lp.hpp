#pragma once

#include <gmpxx.h>

#include <vector>

namespace fraclocal {

using Rational = mpq_class;

struct PackingSolution {
  Rational value;
  std::vector<Rational> primal;  // one weight per column
  std::vector<Rational> dual;    // one weight per row
  int pivots = 0;
};

// maximize sum(y) subject to sum_{j in row} y_j <= 1 for every row, y >= 0.
// Every column must appear in some row (otherwise the LP is unbounded).
// The dual solution minimizes sum(lambda) subject to covering every column.
// Exact simplex with Bland's rule.
PackingSolution solve_packing_lp(int columns, const std::vector<std::vector<int>>& rows);

// The same LP kept as a dictionary, so rows can be added to a solved LP and
// reoptimized with dual simplex pivots (column generation adds one row at a time).
class PackingLp {
 public:
  explicit PackingLp(int columns);
  void add_row(const std::vector<int>& row);
  PackingSolution solve();
  int rows() const { return static_cast<int>(basic_.size()); }

 private:
  void pivot(int leave, int enter);
  int n_;
  std::vector<std::vector<Rational>> coef_;
  std::vector<Rational> rhs_;
  std::vector<Rational> cost_;
  Rational z0_ = 0;
  std::vector<int> nonbasic_, basic_;
  int pivots_ = 0;
};

}  // namespace fraclocal
