// Floating-point simplex used to guess an optimal basis, and the exact check
// that turns such a guess into a proof of optimality.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "standard_form.h"

namespace powerdown::internal {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kOptimalityTolerance = 1e-9;
constexpr double kFeasibilityTolerance = 1e-9;
constexpr double kPivotTolerance = 1e-9;
// Degenerate pivots are cheap here and Bland's rule is slow; cycling is caught
// by the iteration limit and the exact fallback.
constexpr int kMinDegenerateRun = 200;

// Revised simplex with a dense explicit basis inverse, refreshed from scratch
// every kRefactorInterval pivots to keep rounding errors from piling up.
class RevisedSimplex {
 public:
  RevisedSimplex(const StandardForm& form, const SimplexOptions& options)
      : options_(options),
        rows_(form.rows.size()),
        cols_(static_cast<std::size_t>(form.num_cols)),
        first_artificial_(form.first_artificial),
        columns_(cols_),
        basis_(form.initial_basis) {
    for (std::size_t i = 0; i < rows_; ++i) {
      const SparseRow& row = form.rows[i];
      for (std::size_t k = 0; k < row.cols.size(); ++k) {
        columns_[row.cols[k]].push_back({i, row.vals[k].get_d()});
      }
      rhs_.push_back(form.rhs[i].get_d());
    }
    for (const auto& u : form.upper) upper_.push_back(u ? u->get_d() : kInfinity);
    at_upper_.assign(cols_, false);
    row_of_.assign(cols_, -1);
    for (std::size_t i = 0; i < rows_; ++i) row_of_[basis_[i]] = static_cast<int>(i);
    iteration_limit_ = 50 * (rows_ + cols_) + 1000;
    Refactor();
  }

  bool FindFeasible() {
    if (static_cast<std::size_t>(first_artificial_) == cols_) return true;
    std::vector<double> cost(cols_, 0.0);
    for (std::size_t j = first_artificial_; j < cols_; ++j) cost[j] = 1;
    if (!Run(cost, cols_)) return false;
    double infeasibility = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] >= first_artificial_) infeasibility += beta_[i];
    }
    if (infeasibility > 1e-7) return false;
    DriveOutArtificials();
    for (std::size_t j = first_artificial_; j < cols_; ++j) upper_[j] = 0;
    return true;
  }

  bool Optimize(const std::vector<double>& cost) { return Run(cost, first_artificial_); }

  Basis Result() const { return {basis_, at_upper_}; }
  std::size_t iterations() const { return iterations_; }

 private:
  struct Entry {
    std::size_t row;
    double value;
  };
  static constexpr std::size_t kRefactorInterval = 100;

  double& Inv(std::size_t i, std::size_t k) { return inverse_[i * rows_ + k]; }

  double NonbasicValue(std::size_t j) const { return at_upper_[j] ? upper_[j] : 0.0; }

  // Inverse of the current basis by Gauss-Jordan elimination, then the basic
  // values from scratch. Returns false when the basis is numerically singular.
  bool Refactor() {
    std::vector<double> b(rows_ * rows_, 0.0);
    for (std::size_t c = 0; c < rows_; ++c) {
      for (const Entry& e : columns_[basis_[c]]) b[e.row * rows_ + c] = e.value;
    }
    inverse_.assign(rows_ * rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) Inv(i, i) = 1;
    for (std::size_t c = 0; c < rows_; ++c) {
      std::size_t pivot = c;
      for (std::size_t r = c + 1; r < rows_; ++r) {
        if (std::abs(b[r * rows_ + c]) > std::abs(b[pivot * rows_ + c])) pivot = r;
      }
      if (std::abs(b[pivot * rows_ + c]) < kPivotTolerance) return false;
      if (pivot != c) {
        for (std::size_t k = 0; k < rows_; ++k) {
          std::swap(b[pivot * rows_ + k], b[c * rows_ + k]);
          std::swap(Inv(pivot, k), Inv(c, k));
        }
      }
      const double inv = 1 / b[c * rows_ + c];
      for (std::size_t k = 0; k < rows_; ++k) {
        b[c * rows_ + k] *= inv;
        Inv(c, k) *= inv;
      }
      for (std::size_t r = 0; r < rows_; ++r) {
        const double f = b[r * rows_ + c];
        if (r == c || f == 0) continue;
        for (std::size_t k = 0; k < rows_; ++k) {
          b[r * rows_ + k] -= f * b[c * rows_ + k];
          Inv(r, k) -= f * Inv(c, k);
        }
      }
    }
    // B^{-1} (b - N x_N)
    std::vector<double> rest = rhs_;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (row_of_[j] >= 0 || !at_upper_[j]) continue;
      for (const Entry& e : columns_[j]) rest[e.row] -= e.value * upper_[j];
    }
    beta_.assign(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double sum = 0;
      for (std::size_t k = 0; k < rows_; ++k) sum += Inv(i, k) * rest[k];
      beta_[i] = sum;
    }
    since_refactor_ = 0;
    return true;
  }

  // alpha = B^{-1} a_j
  void Column(std::size_t j, std::vector<double>& alpha) {
    alpha.assign(rows_, 0.0);
    for (const Entry& e : columns_[j]) {
      for (std::size_t i = 0; i < rows_; ++i) alpha[i] += Inv(i, e.row) * e.value;
    }
  }

  // False when unbounded, out of iterations or singular.
  bool Run(const std::vector<double>& cost, std::size_t allowed_cols) {
    int degenerate_run = 0;
    std::vector<double> y(rows_);
    std::vector<double> alpha;
    bool fresh_duals = false;
    for (;;) {
      if (iterations_ >= iteration_limit_) return false;
      if (!fresh_duals) {  // y = c_B B^{-1}; otherwise updated after the pivot
        std::fill(y.begin(), y.end(), 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
          const double cb = cost[basis_[i]];
          if (cb == 0) continue;
          for (std::size_t k = 0; k < rows_; ++k) y[k] += cb * Inv(i, k);
        }
      }
      fresh_duals = false;
      double entering_cost = 0;
      const bool bland = options_.pricing == SimplexOptions::Pricing::kBland ||
                         degenerate_run >= std::max(options_.degenerate_run_before_bland, kMinDegenerateRun);
      // Partial pricing: Dantzig's rule within segments of the columns,
      // starting where the previous search stopped. Bland scans everything.
      int entering = -1;
      double best = 0;
      const std::size_t segment = bland ? allowed_cols : std::max<std::size_t>(512, allowed_cols / 8);
      if (price_start_ >= allowed_cols) price_start_ = 0;
      for (std::size_t scanned = 0; scanned < allowed_cols; ++scanned) {
        const std::size_t j = bland ? scanned : (price_start_ + scanned) % allowed_cols;
        if (!bland && entering >= 0 && scanned % segment == 0) {
          price_start_ = j;
          break;
        }
        if (row_of_[j] >= 0 || upper_[j] <= kFeasibilityTolerance) continue;
        double d = cost[j];
        for (const Entry& e : columns_[j]) d -= y[e.row] * e.value;
        const bool improves = at_upper_[j] ? d > kOptimalityTolerance : d < -kOptimalityTolerance;
        if (!improves) continue;
        if (bland) {
          entering = static_cast<int>(j);
          entering_cost = d;
          break;
        }
        if (std::abs(d) > best) {
          entering = static_cast<int>(j);
          entering_cost = d;
          best = std::abs(d);
        }
      }
      if (entering < 0) return true;
      ++iterations_;
      const int dir = at_upper_[entering] ? -1 : 1;
      Column(static_cast<std::size_t>(entering), alpha);

      // Two-pass ratio test: bound the step with slightly relaxed limits,
      // then take the largest pivot among rows that block within that bound.
      double relaxed = upper_[entering];
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = alpha[i] * dir;
        if (std::abs(a) <= kPivotTolerance) continue;
        const int b = basis_[i];
        if (a > 0) {
          relaxed = std::min(relaxed, (std::max(beta_[i], 0.0) + kFeasibilityTolerance) / a);
        } else if (upper_[b] < kInfinity) {
          relaxed = std::min(relaxed, (std::max(upper_[b] - beta_[i], 0.0) + kFeasibilityTolerance) / -a);
        }
      }
      if (relaxed == kInfinity) return false;
      int leave_row = -1;
      bool leave_at_upper = false;
      double theta = upper_[entering];
      double pivot_size = 0;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = alpha[i] * dir;
        if (std::abs(a) <= kPivotTolerance) continue;
        const int b = basis_[i];
        double limit;
        if (a > 0) {
          limit = std::max(beta_[i], 0.0) / a;
        } else if (upper_[b] < kInfinity) {
          limit = std::max(upper_[b] - beta_[i], 0.0) / -a;
        } else {
          continue;
        }
        if (limit <= relaxed && std::abs(a) > pivot_size) {
          pivot_size = std::abs(a);
          leave_row = static_cast<int>(i);
          leave_at_upper = a < 0;
          theta = limit;
        }
      }
      if (leave_row >= 0 && upper_[entering] <= theta) leave_row = -1;  // bound flip is shorter
      if (leave_row < 0) theta = upper_[entering];

      degenerate_run = theta <= kFeasibilityTolerance ? degenerate_run + 1 : 0;
      const double step = dir * theta;
      for (std::size_t i = 0; i < rows_; ++i) beta_[i] -= alpha[i] * step;

      if (leave_row < 0) {
        at_upper_[entering] = !at_upper_[entering];
        continue;
      }
      const double entering_value = NonbasicValue(entering) + step;
      at_upper_[basis_[leave_row]] = leave_at_upper;
      if (!Pivot(static_cast<std::size_t>(leave_row), static_cast<std::size_t>(entering), alpha)) return false;
      if (since_refactor_ > 0) {
        beta_[leave_row] = entering_value;
        for (std::size_t k = 0; k < rows_; ++k) y[k] += entering_cost * Inv(leave_row, k);
        fresh_duals = true;
      }
    }
  }

  bool Pivot(std::size_t r, std::size_t entering, const std::vector<double>& alpha) {
    row_of_[basis_[r]] = -1;
    basis_[r] = static_cast<int>(entering);
    row_of_[entering] = static_cast<int>(r);
    at_upper_[entering] = false;
    if (++since_refactor_ >= kRefactorInterval) return Refactor();
    const double inv = 1 / alpha[r];
    for (std::size_t k = 0; k < rows_; ++k) Inv(r, k) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double f = alpha[i];
      if (i == r || f == 0) continue;
      for (std::size_t k = 0; k < rows_; ++k) Inv(i, k) -= f * Inv(r, k);
    }
    return true;
  }

  void DriveOutArtificials() {
    std::vector<double> alpha;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      int entering = -1;
      double size = 1e-7;
      for (std::size_t j = 0; j < static_cast<std::size_t>(first_artificial_); ++j) {
        if (row_of_[j] >= 0) continue;
        double a = 0;
        for (const Entry& e : columns_[j]) a += Inv(i, e.row) * e.value;
        if (std::abs(a) > size) {
          entering = static_cast<int>(j);
          size = std::abs(a);
        }
      }
      if (entering < 0) continue;
      Column(static_cast<std::size_t>(entering), alpha);
      const double value = NonbasicValue(entering);
      if (!Pivot(i, static_cast<std::size_t>(entering), alpha)) return;
      if (since_refactor_ > 0) beta_[i] = value;
    }
  }

  SimplexOptions options_;
  std::size_t rows_;
  std::size_t cols_;
  int first_artificial_;
  std::vector<std::vector<Entry>> columns_;
  std::vector<double> rhs_;
  std::vector<int> basis_;
  std::vector<double> inverse_;
  std::vector<double> beta_;
  std::vector<double> upper_;
  std::vector<bool> at_upper_;
  std::vector<int> row_of_;
  std::size_t since_refactor_ = 0;
  std::size_t price_start_ = 0;
  std::size_t iterations_ = 0;
  std::size_t iteration_limit_;
};

// Solves M z = rhs by Gaussian elimination; nullopt when M is singular.
std::optional<std::vector<Rational>> SolveDense(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const std::size_t k = rhs.size();
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pivot = k;
    for (std::size_t r = c; r < k; ++r) {
      if (sgn(m[r][c]) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == k) return std::nullopt;
    std::swap(m[pivot], m[c]);
    std::swap(rhs[pivot], rhs[c]);
    const Rational inv = 1 / m[c][c];
    for (std::size_t j = c; j < k; ++j) m[c][j] *= inv;
    rhs[c] *= inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t j = c; j < k; ++j) {
        if (sgn(m[c][j]) != 0) m[r][j] -= f * m[c][j];
      }
      rhs[r] -= f * rhs[c];
    }
  }
  return rhs;
}

}  // namespace

std::optional<Basis> FloatSimplex(const StandardForm& form, const SimplexOptions& options, std::size_t* iterations) {
  RevisedSimplex tableau(form, options);
  std::vector<double> cost;
  for (const Rational& c : form.cost) cost.push_back(c.get_d());
  const bool ok = tableau.FindFeasible() && tableau.Optimize(cost);
  *iterations = tableau.iterations();
  if (!ok) return std::nullopt;
  return tableau.Result();
}

std::optional<std::vector<Rational>> CertifyBasis(const StandardForm& form, const Basis& basis) {
  const std::size_t m = form.rows.size();
  const auto n = static_cast<std::size_t>(form.num_cols);
  if (basis.basic.size() != m || basis.at_upper.size() != n) return std::nullopt;

  std::vector<int> position(n, -1);
  for (std::size_t i = 0; i < m; ++i) {
    const int col = basis.basic[i];
    if (col < 0 || static_cast<std::size_t>(col) >= n || position[col] >= 0) return std::nullopt;
    position[col] = static_cast<int>(i);
  }
  std::vector<Rational> value(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (position[j] >= 0 || !basis.at_upper[j]) continue;
    if (!form.upper[j] || static_cast<int>(j) >= form.first_artificial) return std::nullopt;
    value[j] = *form.upper[j];
  }

  // Slack and artificial columns are unit vectors; a row holding a basic one
  // is solved last, the remaining rows determine the structural basics.
  std::vector<Rational> rhs = form.rhs;
  std::vector<int> unit_basic(m, -1);
  std::vector<Rational> unit_coefficient(m);
  for (std::size_t i = 0; i < m; ++i) {
    const SparseRow& row = form.rows[i];
    for (std::size_t k = 0; k < row.cols.size(); ++k) {
      const int col = row.cols[k];
      if (sgn(value[col]) != 0) rhs[i] -= row.vals[k] * value[col];
      if (col >= form.num_structural && position[col] >= 0) {
        if (unit_basic[i] >= 0) return std::nullopt;
        unit_basic[i] = col;
        unit_coefficient[i] = row.vals[k];
      }
    }
  }
  std::vector<int> structural;
  for (int col : basis.basic) {
    if (col < form.num_structural) structural.push_back(col);
  }
  std::sort(structural.begin(), structural.end());
  std::vector<int> index_of(n, -1);
  for (std::size_t c = 0; c < structural.size(); ++c) index_of[structural[c]] = static_cast<int>(c);
  std::vector<std::size_t> free_rows;
  for (std::size_t i = 0; i < m; ++i) {
    if (unit_basic[i] < 0) free_rows.push_back(i);
  }
  const std::size_t k = structural.size();
  if (free_rows.size() != k) return std::nullopt;

  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k, Rational(0)));
  std::vector<std::vector<Rational>> at(k, std::vector<Rational>(k, Rational(0)));
  std::vector<Rational> b(k);
  std::vector<Rational> c(k);
  for (std::size_t r = 0; r < k; ++r) {
    const SparseRow& row = form.rows[free_rows[r]];
    for (std::size_t t = 0; t < row.cols.size(); ++t) {
      const int idx = index_of[row.cols[t]];
      if (idx < 0) continue;
      a[r][idx] = row.vals[t];
      at[idx][r] = row.vals[t];
    }
    b[r] = rhs[free_rows[r]];
  }
  for (std::size_t col = 0; col < k; ++col) c[col] = form.cost[structural[col]];
  auto x = SolveDense(std::move(a), std::move(b));
  if (!x) return std::nullopt;
  auto y_free = SolveDense(std::move(at), std::move(c));
  if (!y_free) return std::nullopt;

  for (std::size_t col = 0; col < k; ++col) value[structural[col]] = (*x)[col];
  for (std::size_t i = 0; i < m; ++i) {
    if (unit_basic[i] < 0) continue;
    Rational rest = rhs[i];
    const SparseRow& row = form.rows[i];
    for (std::size_t t = 0; t < row.cols.size(); ++t) {
      if (index_of[row.cols[t]] >= 0) rest -= row.vals[t] * value[row.cols[t]];
    }
    value[unit_basic[i]] = rest / unit_coefficient[i];
  }
  for (int col : basis.basic) {
    if (sgn(value[col]) < 0) return std::nullopt;
    if (form.upper[col] && value[col] > *form.upper[col]) return std::nullopt;
    if (col >= form.first_artificial && sgn(value[col]) != 0) return std::nullopt;
  }

  std::vector<Rational> y(m, Rational(0));
  for (std::size_t r = 0; r < k; ++r) y[free_rows[r]] = (*y_free)[r];
  std::vector<Rational> reduced(form.cost.begin(), form.cost.begin() + form.first_artificial);
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(y[i]) == 0) continue;
    const SparseRow& row = form.rows[i];
    for (std::size_t t = 0; t < row.cols.size(); ++t) {
      if (row.cols[t] < form.first_artificial) reduced[row.cols[t]] -= y[i] * row.vals[t];
    }
  }
  for (int j = 0; j < form.first_artificial; ++j) {
    if (position[j] >= 0) continue;
    if (form.upper[j] && sgn(*form.upper[j]) == 0) continue;
    if (basis.at_upper[j] ? sgn(reduced[j]) > 0 : sgn(reduced[j]) < 0) return std::nullopt;
  }
  value.resize(static_cast<std::size_t>(form.num_structural));
  return value;
}

}  // namespace powerdown::internal
