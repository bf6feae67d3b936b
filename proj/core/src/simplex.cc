// Bounded-variable primal simplex on a sparse tableau of exact rationals.
//
// Phase 1 minimizes the sum of artificials, then basic artificials at zero are
// pivoted out where possible (a row where that fails is redundant and keeps
// its artificial pinned at zero, since no other column touches it).

#include <algorithm>
#include <optional>

#include "powerdown/errors.h"
#include "powerdown/lp.h"
#include "standard_form.h"

namespace powerdown {
namespace internal {

const Rational* SparseRow::Find(int col) const {
  auto it = std::lower_bound(cols.begin(), cols.end(), col);
  if (it == cols.end() || *it != col) return nullptr;
  return &vals[it - cols.begin()];
}

void SubtractMultiple(SparseRow& row, const Rational& factor, const SparseRow& pivot) {
  SparseRow out;
  out.cols.reserve(row.cols.size() + pivot.cols.size());
  out.vals.reserve(row.cols.size() + pivot.cols.size());
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < row.cols.size() || b < pivot.cols.size()) {
    if (b == pivot.cols.size() || (a < row.cols.size() && row.cols[a] < pivot.cols[b])) {
      out.cols.push_back(row.cols[a]);
      out.vals.push_back(std::move(row.vals[a]));
      ++a;
    } else if (a == row.cols.size() || pivot.cols[b] < row.cols[a]) {
      out.cols.push_back(pivot.cols[b]);
      out.vals.push_back(-factor * pivot.vals[b]);
      ++b;
    } else {
      Rational value = row.vals[a] - factor * pivot.vals[b];
      if (sgn(value) != 0) {
        out.cols.push_back(row.cols[a]);
        out.vals.push_back(std::move(value));
      }
      ++a;
      ++b;
    }
  }
  row = std::move(out);
}

StandardForm BuildStandardForm(const LpModel& model) {
  StandardForm form;
  form.num_structural = static_cast<int>(model.variables.size());
  for (const LpVariable& var : model.variables) {
    form.upper.push_back(var.upper);
    form.cost.push_back(var.cost);
  }
  const int m = static_cast<int>(model.rows.size());
  form.rows.resize(m);
  form.initial_basis.resize(m);
  std::vector<int> slack_sign(m, 0);
  for (int i = 0; i < m; ++i) {
    const LpRow& row = model.rows[i];
    const bool negate = row.rhs < 0;
    std::vector<std::pair<int, Rational>> terms;
    for (const LpTerm& term : row.terms) {
      if (term.variable < 0 || term.variable >= form.num_structural) {
        throw DomainError("LP row " + row.name + " references an unknown variable");
      }
      terms.emplace_back(term.variable, negate ? Rational(-term.coefficient) : term.coefficient);
    }
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseRow& out = form.rows[i];
    for (auto& [col, val] : terms) {  // merge repeated variables
      if (!out.cols.empty() && out.cols.back() == col) {
        out.vals.back() += val;
      } else {
        out.cols.push_back(col);
        out.vals.push_back(val);
      }
    }
    for (std::size_t k = out.cols.size(); k-- > 0;) {
      if (sgn(out.vals[k]) == 0) {
        out.cols.erase(out.cols.begin() + k);
        out.vals.erase(out.vals.begin() + k);
      }
    }
    if (row.sense == RowSense::kLessEqual) slack_sign[i] = 1;
    if (row.sense == RowSense::kGreaterEqual) slack_sign[i] = -1;
    if (negate) slack_sign[i] = -slack_sign[i];
    form.rhs.push_back(negate ? Rational(-row.rhs) : row.rhs);
  }
  int next = form.num_structural;
  std::vector<int> slack_col(m, -1);
  for (int i = 0; i < m; ++i) {
    if (slack_sign[i] != 0) {
      slack_col[i] = next++;
      form.upper.push_back(std::nullopt);
    }
  }
  form.first_artificial = next;
  for (int i = 0; i < m; ++i) {
    if (slack_col[i] >= 0) {
      form.rows[i].cols.push_back(slack_col[i]);
      form.rows[i].vals.push_back(Rational(slack_sign[i]));
    }
    if (slack_sign[i] == 1) {
      form.initial_basis[i] = slack_col[i];
    } else {
      form.rows[i].cols.push_back(next);
      form.rows[i].vals.push_back(Rational(1));
      form.initial_basis[i] = next++;
      form.upper.push_back(std::nullopt);
    }
  }
  form.num_cols = next;
  form.cost.resize(form.num_cols, Rational(0));
  return form;
}

}  // namespace internal

namespace {

using internal::SparseRow;
using internal::StandardForm;

class Tableau {
 public:
  Tableau(const StandardForm& form, const SimplexOptions& options)
      : options_(options),
        num_structural_(form.num_structural),
        first_artificial_(form.first_artificial),
        num_cols_(form.num_cols),
        rows_(form.rows),
        basis_(form.initial_basis),
        upper_(form.upper) {
    value_.assign(num_cols_, Rational(0));
    at_upper_.assign(num_cols_, false);
    row_of_.assign(num_cols_, -1);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      row_of_[basis_[i]] = static_cast<int>(i);
      value_[basis_[i]] = form.rhs[i];
    }
  }

  // Phase 1. Returns false when infeasible.
  bool FindFeasible() {
    if (first_artificial_ == num_cols_) return true;
    std::vector<Rational> cost(num_cols_, Rational(0));
    for (int j = first_artificial_; j < num_cols_; ++j) cost[j] = 1;
    Run(cost, num_cols_);
    for (int j = first_artificial_; j < num_cols_; ++j) {
      if (sgn(value_[j]) > 0) return false;
    }
    DriveOutArtificials();
    return true;
  }

  // Phase 2; artificial columns never enter. Returns false when unbounded.
  bool Optimize(const std::vector<Rational>& cost) { return Run(cost, first_artificial_); }

  std::vector<Rational> StructuralValues() const { return {value_.begin(), value_.begin() + num_structural_}; }
  std::size_t iterations() const { return iterations_; }

 private:
  bool Movable(int j) const { return !upper_[j] || sgn(*upper_[j]) > 0; }

  bool Run(const std::vector<Rational>& cost, int allowed_cols) {
    // reduced costs d_j = c_j - sum_i c_B(i) T[i][j]
    reduced_ = cost;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t k = 0; k < rows_[i].cols.size(); ++k) {
        reduced_[rows_[i].cols[k]] -= cb * rows_[i].vals[k];
      }
    }
    int degenerate_run = 0;
    for (;;) {
      const bool bland = options_.pricing == SimplexOptions::Pricing::kBland ||
                         degenerate_run >= options_.degenerate_run_before_bland;
      int entering = -1;
      Rational best = 0;
      for (int j = 0; j < allowed_cols; ++j) {
        if (row_of_[j] >= 0 || !Movable(j)) continue;
        const Rational& d = reduced_[j];
        const bool improves = at_upper_[j] ? sgn(d) > 0 : sgn(d) < 0;
        if (!improves) continue;
        if (bland) {
          entering = j;
          break;
        }
        Rational magnitude = abs(d);
        if (entering < 0 || magnitude > best) {
          entering = j;
          best = std::move(magnitude);
        }
      }
      if (entering < 0) return true;
      ++iterations_;
      const int dir = at_upper_[entering] ? -1 : 1;

      // Ratio test. Ties go to the smallest basic column index.
      std::optional<Rational> theta = upper_[entering];
      int leave_row = -1;
      bool leave_at_upper = false;
      std::vector<std::pair<int, Rational>> column;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational* a = rows_[i].Find(entering);
        if (a == nullptr) continue;
        column.emplace_back(static_cast<int>(i), *a);
        const int b = basis_[i];
        const int s = sgn(*a) * dir;
        std::optional<Rational> limit;
        bool to_upper = false;
        if (s > 0) {
          limit = value_[b] / abs(*a);
        } else if (upper_[b]) {
          limit = (*upper_[b] - value_[b]) / abs(*a);
          to_upper = true;
        }
        if (!limit) continue;
        const bool better =
            !theta || *limit < *theta || (*limit == *theta && leave_row >= 0 && b < basis_[leave_row]);
        if (better) {
          theta = std::move(limit);
          leave_row = static_cast<int>(i);
          leave_at_upper = to_upper;
        }
      }
      if (!theta) return false;

      if (sgn(*theta) == 0) {
        ++degenerate_run;
      } else {
        degenerate_run = 0;
      }
      const Rational step = dir > 0 ? *theta : Rational(-*theta);
      value_[entering] += step;
      for (const auto& [i, a] : column) value_[basis_[i]] -= a * step;

      if (leave_row < 0) {  // bound flip
        at_upper_[entering] = !at_upper_[entering];
        value_[entering] = at_upper_[entering] ? *upper_[entering] : Rational(0);
        continue;
      }
      const int leaving = basis_[leave_row];
      value_[leaving] = leave_at_upper ? *upper_[leaving] : Rational(0);
      at_upper_[leaving] = leave_at_upper;
      Pivot(leave_row, entering, column);
    }
  }

  void Pivot(int r, int entering, const std::vector<std::pair<int, Rational>>& column) {
    SparseRow& pivot = rows_[r];
    const Rational inv = 1 / *pivot.Find(entering);
    for (Rational& v : pivot.vals) v *= inv;
    for (const auto& [i, a] : column) {
      if (i != r) SubtractMultiple(rows_[i], a, pivot);
    }
    if (!reduced_.empty()) {
      const Rational d = reduced_[entering];
      if (sgn(d) != 0) {
        for (std::size_t k = 0; k < pivot.cols.size(); ++k) reduced_[pivot.cols[k]] -= d * pivot.vals[k];
      }
    }
    row_of_[basis_[r]] = -1;
    basis_[r] = entering;
    row_of_[entering] = r;
    at_upper_[entering] = false;
  }

  void DriveOutArtificials() {
    reduced_.clear();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < first_artificial_) continue;
      int entering = -1;
      for (int col : rows_[i].cols) {
        if (col < first_artificial_ && row_of_[col] < 0) {
          entering = col;
          break;
        }
      }
      if (entering < 0) continue;  // redundant row
      std::vector<std::pair<int, Rational>> column;
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (const Rational* a = rows_[k].Find(entering)) column.emplace_back(static_cast<int>(k), *a);
      }
      // Degenerate: the artificial is at zero and the entering column keeps its value.
      value_[basis_[i]] = 0;
      Pivot(static_cast<int>(i), entering, column);
    }
  }

  SimplexOptions options_;
  int num_structural_ = 0;
  int first_artificial_ = 0;
  int num_cols_ = 0;
  std::vector<SparseRow> rows_;
  std::vector<int> basis_;
  std::vector<int> row_of_;
  std::vector<std::optional<Rational>> upper_;
  std::vector<Rational> value_;
  std::vector<bool> at_upper_;
  std::vector<Rational> reduced_;
  std::size_t iterations_ = 0;
};

Rational Objective(const StandardForm& form, const std::vector<Rational>& values) {
  Rational total = 0;
  for (int j = 0; j < form.num_structural; ++j) total += form.cost[j] * values[j];
  return total;
}

}  // namespace

SimplexResult RunSimplex(const LpModel& model, const SimplexOptions& options) {
  SimplexResult result;
  for (const LpVariable& var : model.variables) {
    if (var.upper && *var.upper < 0) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
  }
  const StandardForm form = internal::BuildStandardForm(model);

  if (options.float_guided) {
    std::size_t float_iterations = 0;
    if (auto basis = internal::FloatSimplex(form, options, &float_iterations)) {
      if (auto values = internal::CertifyBasis(form, *basis)) {
        result.status = LpStatus::kOptimal;
        result.objective = Objective(form, *values);
        result.values = std::move(*values);
        result.iterations = float_iterations;
        result.certified_float_basis = true;
        return result;
      }
    }
    result.iterations = float_iterations;
  }

  Tableau tableau(form, options);
  const std::size_t before = result.iterations;
  if (!tableau.FindFeasible()) {
    result.status = LpStatus::kInfeasible;
    result.iterations = before + tableau.iterations();
    return result;
  }
  if (!tableau.Optimize(form.cost)) {
    result.status = LpStatus::kUnbounded;
    result.iterations = before + tableau.iterations();
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.values = tableau.StructuralValues();
  result.objective = Objective(form, result.values);
  result.iterations = before + tableau.iterations();
  return result;
}

}  // namespace powerdown
