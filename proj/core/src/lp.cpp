#include "vsparse/lp.hpp"

#include <cmath>
#include <limits>

namespace vsp {

namespace {

template <class T>
struct Num;

template <>
struct Num<Q> {
  explicit Num(double) {}
  bool pos(const Q& v) const { return sgn(v) > 0; }
  bool neg(const Q& v) const { return sgn(v) < 0; }
  bool zero(const Q& v) const { return sgn(v) == 0; }
};

template <>
struct Num<double> {
  double tol;
  explicit Num(double t) : tol(t) {}
  bool pos(double v) const { return v > tol; }
  bool neg(double v) const { return v < -tol; }
  bool zero(double v) const { return std::fabs(v) <= tol; }
};

template <class T>
class Tableau {
 public:
  Tableau(const LpProblem<T>& lp, double tol, long max_pivots)
      : lp_(lp), num_(tol), max_pivots_(max_pivots) {}

  LpSolution<T> solve() {
    build();
    LpSolution<T> out;
    // phase 1: minimize the sum of artificials
    std::vector<T> phase1(ncols_, T(0));
    for (int j = art_begin_; j < ncols_; ++j) phase1[j] = 1;
    set_objective(phase1);
    LpStatus st = iterate(ncols_);
    out.pivots = pivots_;
    if (st == LpStatus::IterationLimit) {
      out.status = st;
      return out;
    }
    if (num_.pos(-obj_[ncols_])) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    drive_out_artificials();
    std::vector<T> phase2(ncols_, T(0));
    for (int j = 0; j < lp_.num_vars; ++j) phase2[j] = lp_.cost[j];
    set_objective(phase2);
    st = iterate(art_begin_);
    out.pivots = pivots_;
    out.status = st;
    if (st != LpStatus::Optimal) return out;
    out.x.assign(lp_.num_vars, T(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < lp_.num_vars) out.x[basis_[i]] = rows_[i][ncols_];
    out.objective = 0;
    for (int j = 0; j < lp_.num_vars; ++j) out.objective += lp_.cost[j] * out.x[j];
    // y_i = c_B B^-1 e_i; B^-1 e_i is the current column of row i's initial
    // identity column
    out.dual.assign(m_, T(0));
    for (int i = 0; i < m_; ++i) {
      T y = 0;
      for (int r = 0; r < m_; ++r) {
        int b = basis_[r];
        if (b < lp_.num_vars) y += lp_.cost[b] * rows_[r][init_col_[i]];
      }
      out.dual[i] = flipped_[i] ? T(-y) : y;
    }
    return out;
  }

 private:
  void build() {
    m_ = static_cast<int>(lp_.rows.size());
    int n = lp_.num_vars;
    int slacks = 0, arts = 0;
    flipped_.assign(m_, false);
    std::vector<RowSense> sense(m_);
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp_.rows[i];
      sense[i] = row.sense;
      if (num_.neg(row.rhs) || (row.rhs < 0)) {
        flipped_[i] = true;
        if (sense[i] == RowSense::LE)
          sense[i] = RowSense::GE;
        else if (sense[i] == RowSense::GE)
          sense[i] = RowSense::LE;
      }
      if (sense[i] != RowSense::EQ) ++slacks;
      if (sense[i] != RowSense::LE) ++arts;
    }
    art_begin_ = n + slacks;
    ncols_ = n + slacks + arts;
    rows_.assign(m_, std::vector<T>(ncols_ + 1, T(0)));
    basis_.assign(m_, -1);
    init_col_.assign(m_, -1);
    int s = n, a = art_begin_;
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp_.rows[i];
      T sign = flipped_[i] ? T(-1) : T(1);
      for (const auto& [j, c] : row.coef) rows_[i][j] += sign * c;
      rows_[i][ncols_] = sign * row.rhs;
      if (sense[i] == RowSense::LE) {
        rows_[i][s] = 1;
        basis_[i] = init_col_[i] = s++;
      } else {
        if (sense[i] == RowSense::GE) rows_[i][s++] = -1;
        rows_[i][a] = 1;
        basis_[i] = init_col_[i] = a++;
      }
    }
  }

  void set_objective(const std::vector<T>& c) {
    obj_.assign(ncols_ + 1, T(0));
    for (int j = 0; j < ncols_; ++j) obj_[j] = c[j];
    for (int i = 0; i < m_; ++i) {
      const T& cb = c[basis_[i]];
      if (num_.zero(cb) && cb == 0) continue;
      for (int j = 0; j <= ncols_; ++j) obj_[j] -= cb * rows_[i][j];
    }
  }

  void pivot(int r, int col) {
    ++pivots_;
    T p = rows_[r][col];
    for (int j = 0; j <= ncols_; ++j) rows_[r][j] /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      T f = rows_[i][col];
      if (f == 0) continue;
      for (int j = 0; j <= ncols_; ++j)
        if (rows_[r][j] != 0) rows_[i][j] -= f * rows_[r][j];
      rows_[i][col] = 0;
    }
    T f = obj_[col];
    if (f != 0) {
      for (int j = 0; j <= ncols_; ++j)
        if (rows_[r][j] != 0) obj_[j] -= f * rows_[r][j];
      obj_[col] = 0;
    }
    basis_[r] = col;
  }

  // Columns >= limit never enter.
  LpStatus iterate(int limit) {
    int degenerate = 0;
    while (true) {
      if (pivots_ >= max_pivots_) return LpStatus::IterationLimit;
      bool bland = degenerate > 50;
      int col = -1;
      for (int j = 0; j < limit; ++j) {
        if (!num_.neg(obj_[j])) continue;
        if (col < 0 || (!bland && obj_[j] < obj_[col])) col = j;
        if (bland) break;
      }
      if (col < 0) return LpStatus::Optimal;
      int r = -1;
      T best = 0;
      for (int i = 0; i < m_; ++i) {
        if (!num_.pos(rows_[i][col])) continue;
        T ratio = rows_[i][ncols_] / rows_[i][col];
        if (r < 0 || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r < 0) return LpStatus::Unbounded;
      degenerate = num_.zero(best) ? degenerate + 1 : 0;
      pivot(r, col);
      if constexpr (std::is_same_v<T, double>) {
        // keep basic values from drifting below zero
        for (int i = 0; i < m_; ++i)
          if (rows_[i][ncols_] < 0 && rows_[i][ncols_] > -num_.tol) rows_[i][ncols_] = 0;
      }
    }
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin_) continue;
      for (int j = 0; j < art_begin_; ++j) {
        if (!num_.zero(rows_[i][j])) {
          pivot(i, j);
          break;
        }
      }
      // otherwise the row is redundant; its artificial stays basic at zero
    }
  }

  const LpProblem<T>& lp_;
  Num<T> num_;
  long max_pivots_;
  long pivots_ = 0;
  int m_ = 0, ncols_ = 0, art_begin_ = 0;
  std::vector<std::vector<T>> rows_;
  std::vector<T> obj_;
  std::vector<int> basis_, init_col_;
  std::vector<bool> flipped_;
};

}  // namespace

LpSolution<Q> solve_lp_exact(const LpProblem<Q>& lp, long max_pivots) {
  return Tableau<Q>(lp, 0.0, max_pivots).solve();
}

LpSolution<double> solve_lp_float(const LpProblem<double>& lp, double tol, long max_pivots) {
  return Tableau<double>(lp, tol, max_pivots).solve();
}

}  // namespace vsp
