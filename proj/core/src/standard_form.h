// Equality form shared by the exact and floating-point simplex codes.

#ifndef POWERDOWN_SRC_STANDARD_FORM_H_
#define POWERDOWN_SRC_STANDARD_FORM_H_

#include <optional>
#include <vector>

#include "powerdown/lp.h"
#include "powerdown/rational.h"

namespace powerdown::internal {

struct SparseRow {
  std::vector<int> cols;
  std::vector<Rational> vals;

  const Rational* Find(int col) const;
};

// row -= factor * pivot
void SubtractMultiple(SparseRow& row, const Rational& factor, const SparseRow& pivot);

// Every row is brought to equality form with a slack (<=: +s, >=: -s) and
// sign-normalized so its right-hand side is non-negative. Rows whose slack
// enters with +1 start with the slack basic; the rest get an artificial.
// Columns: structurals, then slacks, then artificials.
struct StandardForm {
  int num_structural = 0;
  int first_artificial = 0;
  int num_cols = 0;
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> cost;  // model objective, zero past the structurals
  std::vector<std::optional<Rational>> upper;
  std::vector<int> initial_basis;
};

StandardForm BuildStandardForm(const LpModel& model);

// A basis found elsewhere: the basic column of each row and, for every
// column, whether it rests at its upper bound when nonbasic.
struct Basis {
  std::vector<int> basic;
  std::vector<bool> at_upper;
};

// Floating-point bounded revised simplex. Returns the final basis
// when it reports an optimum and nullopt otherwise (infeasible, unbounded,
// iteration limit); the caller must not trust either answer without an
// exact check.
std::optional<Basis> FloatSimplex(const StandardForm& form, const SimplexOptions& options,
                                  std::size_t* iterations);

// Exact primal and dual feasibility of `basis`. On success returns the
// structural values of the basic solution, which is then optimal.
std::optional<std::vector<Rational>> CertifyBasis(const StandardForm& form, const Basis& basis);

}  // namespace powerdown::internal

#endif  // POWERDOWN_SRC_STANDARD_FORM_H_
