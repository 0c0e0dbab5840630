#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "corevote/lp/linear_system.hpp"
#include "corevote/rational.hpp"

namespace corevote::lp {

template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr double tolerance = 1e-9;
  static constexpr double pivot_tolerance = 1e-7;
  static bool is_positive(double v) { return v > tolerance; }
  static bool is_negative(double v) { return v < -tolerance; }
  static bool is_zero(double v) { return std::abs(v) <= tolerance; }
  static bool is_pivot(double v) { return v > pivot_tolerance; }
  static double magnitude(double v) { return std::abs(v); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_positive(const Rational& v) { return v.sign() > 0; }
  static bool is_negative(const Rational& v) { return v.sign() < 0; }
  static bool is_zero(const Rational& v) { return v.is_zero(); }
  static bool is_pivot(const Rational& v) { return v.sign() > 0; }
  static Rational magnitude(const Rational& v) { return abs(v); }
};

template <typename Scalar>
struct SparseColumn {
  std::vector<Index> rows;
  std::vector<Scalar> values;
};

/// Equality-form program  min c.x  subject to  A x = b, x >= 0, with b >= 0.
/// `initial_basis` lists unit columns (slacks or artificials) forming an
/// identity basis.
template <typename Scalar>
struct StandardForm {
  Index num_rows = 0;
  std::vector<SparseColumn<Scalar>> columns;
  Vector<Scalar> rhs;
  std::vector<bool> artificial;
  std::vector<Index> initial_basis;
  /// Phase-two cost per column; empty for pure feasibility problems.
  std::vector<Scalar> cost;

  Index num_columns() const { return static_cast<Index>(columns.size()); }
};

enum class PivotRule { Bland, Dantzig };
enum class SimplexStatus { Optimal, Unbounded, IterationLimit };

/// Revised simplex with an explicit basis inverse. Phase one minimizes the
/// sum of artificial variables; phase two minimizes `cost` while artificials
/// stay at zero. With PivotRule::Bland the entering column is the lowest
/// index with negative reduced cost and ties in the ratio test go to the
/// lowest basic column index, so exact runs cannot cycle. PivotRule::Dantzig
/// falls back to Bland during long degenerate stretches.
template <typename Scalar>
class RevisedSimplex {
  using Traits = ScalarTraits<Scalar>;

 public:
  RevisedSimplex(const StandardForm<Scalar>& form, PivotRule rule, std::int64_t iteration_limit)
      : form_(form), rule_(rule), iteration_limit_(iteration_limit) {}

  /// Installs a basis. Returns false (leaving the previous state) if it is
  /// singular or not primal feasible.
  bool load_basis(const std::vector<Index>& basis) {
    const Index p = form_.num_rows;
    if (static_cast<Index>(basis.size()) != p) return false;
    Matrix<Scalar> b = Matrix<Scalar>::Zero(p, p);
    for (Index i = 0; i < p; ++i) {
      const auto& col = form_.columns[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
      for (std::size_t t = 0; t < col.rows.size(); ++t) b(col.rows[t], i) = col.values[t];
    }
    Matrix<Scalar> inverse;
    if (!invert(std::move(b), inverse)) return false;
    Vector<Scalar> x = inverse * form_.rhs;
    for (Index i = 0; i < p; ++i) {
      if (Traits::is_negative(x(i))) return false;
      if constexpr (!Traits::exact) {
        if (x(i) < 0) x(i) = 0;
      }
    }
    basis_ = basis;
    binv_ = std::move(inverse);
    xb_ = std::move(x);
    is_basic_.assign(form_.columns.size(), false);
    for (Index j : basis_) is_basic_[static_cast<std::size_t>(j)] = true;
    return true;
  }

  /// B^{-1} b for the given basis of `form`, or nothing if it is singular.
  static std::optional<Vector<Scalar>> basic_values(const StandardForm<Scalar>& form,
                                                    const std::vector<Index>& basis) {
    const Index p = form.num_rows;
    if (static_cast<Index>(basis.size()) != p) return std::nullopt;
    Matrix<Scalar> b = Matrix<Scalar>::Zero(p, p);
    for (Index i = 0; i < p; ++i) {
      const auto& col = form.columns[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
      for (std::size_t t = 0; t < col.rows.size(); ++t) b(col.rows[t], i) = col.values[t];
    }
    Matrix<Scalar> inverse;
    if (!invert(std::move(b), inverse)) return std::nullopt;
    return Vector<Scalar>(inverse * form.rhs);
  }

  void load_initial_basis() {
    const bool ok = load_basis(form_.initial_basis);
    (void)ok;
  }

  SimplexStatus phase_one() {
    phase_two_ = false;
    return iterate();
  }

  SimplexStatus phase_two() {
    phase_two_ = true;
    drive_out_artificials();
    return iterate();
  }

  /// Sum of artificial variables in the current basic solution.
  Scalar infeasibility() const {
    Scalar total = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (form_.artificial[static_cast<std::size_t>(basis_[i])]) total += xb_(static_cast<Index>(i));
    }
    return total;
  }

  /// Simplex multipliers c_B^T B^{-1} for the current phase's cost.
  Vector<Scalar> duals() const {
    const Index p = form_.num_rows;
    Vector<Scalar> pi = Vector<Scalar>::Zero(p);
    for (Index i = 0; i < p; ++i) {
      const Scalar c = cost(basis_[static_cast<std::size_t>(i)]);
      if (Traits::is_zero(c)) continue;
      for (Index r = 0; r < p; ++r) {
        if (!Traits::is_zero(binv_(i, r))) pi(r) += c * binv_(i, r);
      }
    }
    return pi;
  }

  /// Value of every column in the current basic solution.
  std::vector<Scalar> primal() const {
    std::vector<Scalar> x(form_.columns.size(), Scalar(0));
    for (std::size_t i = 0; i < basis_.size(); ++i) x[static_cast<std::size_t>(basis_[i])] = xb_(static_cast<Index>(i));
    return x;
  }

  const std::vector<Index>& basis() const { return basis_; }
  const Matrix<Scalar>& inverse() const { return binv_; }
  std::int64_t iterations() const { return iterations_; }

 private:
  Scalar cost(Index column) const {
    const auto j = static_cast<std::size_t>(column);
    if (!phase_two_) return form_.artificial[j] ? Scalar(1) : Scalar(0);
    return form_.cost.empty() || form_.artificial[j] ? Scalar(0) : form_.cost[j];
  }

  Scalar reduced_cost(Index column, const Vector<Scalar>& pi) const {
    const auto& col = form_.columns[static_cast<std::size_t>(column)];
    Scalar d = cost(column);
    for (std::size_t t = 0; t < col.rows.size(); ++t) {
      if (!Traits::is_zero(pi(col.rows[t]))) d -= pi(col.rows[t]) * col.values[t];
    }
    return d;
  }

  Vector<Scalar> entering_column(Index column) const {
    const auto& col = form_.columns[static_cast<std::size_t>(column)];
    Vector<Scalar> alpha = Vector<Scalar>::Zero(form_.num_rows);
    for (std::size_t t = 0; t < col.rows.size(); ++t) {
      for (Index i = 0; i < form_.num_rows; ++i) {
        if (!Traits::is_zero(binv_(i, col.rows[t]))) alpha(i) += binv_(i, col.rows[t]) * col.values[t];
      }
    }
    return alpha;
  }

  Index choose_entering(const Vector<Scalar>& pi, bool bland) const {
    if constexpr (Traits::exact) {
      const Index j = choose_entering_filtered(pi, bland);
      if (j != kUnfiltered) return j;
    }
    // Floating-point Dantzig pricing is partial: columns are scanned in
    // chunks starting where the last search stopped, and the best candidate
    // of the first chunk that has one enters.
    const Index n = form_.num_columns();
    const bool partial = !Traits::exact && !bland;
    const Index chunk = partial ? std::max<Index>(256, n / 16) : n;
    Index best = -1;
    Scalar best_d = 0;
    for (Index scanned = 0; scanned < n; scanned += chunk) {
      for (Index t = scanned; t < std::min(n, scanned + chunk); ++t) {
        const Index j = partial ? (pricing_start_ + t) % n : t;
        const auto uj = static_cast<std::size_t>(j);
        if (is_basic_[uj] || form_.artificial[uj]) continue;
        Scalar d = reduced_cost(j, pi);
        if (!Traits::is_negative(d)) continue;
        if (bland) return j;
        if (best < 0 || d < best_d) {
          best = j;
          best_d = std::move(d);
        }
      }
      if (best >= 0) {
        if (partial) pricing_start_ = (pricing_start_ + std::min(n, scanned + chunk)) % n;
        return best;
      }
    }
    return best;
  }

  static constexpr Index kUnfiltered = -2;

  // Reduced costs are first evaluated in double together with a bound on
  // their rounding error; only columns whose sign the bound cannot settle
  // are priced exactly. Any column certified negative is a valid entering
  // choice, so the result matches an exact scan in correctness.
  static bool safe_double(double v) { return std::isfinite(v) && (v == 0.0 || std::abs(v) > 1e-250); }

  void build_double_columns() const {
    if (!double_columns_.empty() || form_.columns.empty()) return;
    double_columns_.resize(form_.columns.size());
    column_safe_.assign(form_.columns.size(), true);
    double_cost_.assign(form_.columns.size(), 0.0);
    for (std::size_t j = 0; j < form_.columns.size(); ++j) {
      const auto& col = form_.columns[j];
      auto& out = double_columns_[j];
      out.reserve(col.values.size());
      for (const Scalar& v : col.values) {
        const double d = to_double(v);
        if (!safe_double(d)) column_safe_[j] = false;
        out.push_back(d);
      }
      if (!form_.cost.empty()) {
        double_cost_[j] = to_double(form_.cost[j]);
        if (!safe_double(double_cost_[j])) column_safe_[j] = false;
      }
    }
  }

  static double to_double(const Scalar& v) {
    if constexpr (Traits::exact) {
      return v.to_double();
    } else {
      return v;
    }
  }

  Index choose_entering_filtered(const Vector<Scalar>& pi, bool bland) const {
    build_double_columns();
    const Index p = form_.num_rows;
    std::vector<double> pd(static_cast<std::size_t>(p));
    for (Index r = 0; r < p; ++r) {
      pd[static_cast<std::size_t>(r)] = to_double(pi(r));
      if (!safe_double(pd[static_cast<std::size_t>(r)])) return kUnfiltered;
    }
    constexpr double unit = 0x1p-52;
    Index best = -1;
    double best_d = 0;
    std::vector<Index> unsure;
    for (Index j = 0; j < form_.num_columns(); ++j) {
      const auto uj = static_cast<std::size_t>(j);
      if (is_basic_[uj] || form_.artificial[uj]) continue;
      const auto& col = form_.columns[uj];
      const auto& vals = double_columns_[uj];
      double d = phase_two_ ? double_cost_[uj] : 0.0;
      double mag = std::abs(d);
      for (std::size_t t = 0; t < col.rows.size(); ++t) {
        const double term = pd[static_cast<std::size_t>(col.rows[t])] * vals[t];
        d -= term;
        mag += std::abs(term);
      }
      const double bound = 4.0 * static_cast<double>(col.rows.size() + 4) * unit * mag;
      const bool settled = column_safe_[uj] && std::isfinite(d) && std::isfinite(bound);
      if (settled && d > bound) continue;
      if (settled && d < -bound) {
        if (bland) return j;
        if (best < 0 || d < best_d) {
          best = j;
          best_d = d;
        }
        continue;
      }
      if (bland) {
        if (Traits::is_negative(reduced_cost(j, pi))) return j;
        continue;
      }
      unsure.push_back(j);
    }
    if (best >= 0) return best;
    for (Index j : unsure) {
      if (Traits::is_negative(reduced_cost(j, pi))) return j;
    }
    return -1;
  }

  /// Ratio test; -1 if the column is unbounded.
  Index choose_leaving(const Vector<Scalar>& alpha) const {
    Index leave = -1;
    Scalar best_ratio = 0;
    for (Index i = 0; i < form_.num_rows; ++i) {
      if (!Traits::is_pivot(alpha(i))) continue;
      Scalar ratio = xb_(i) / alpha(i);
      if (leave < 0) {
        leave = i;
        best_ratio = std::move(ratio);
        continue;
      }
      const bool tie = Traits::exact ? ratio == best_ratio : Traits::is_zero(ratio - best_ratio);
      if ((!tie && ratio < best_ratio) ||
          (tie && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
        leave = i;
        best_ratio = std::move(ratio);
      }
    }
    return leave;
  }

  void pivot(Index leave, Index enter, const Vector<Scalar>& alpha) {
    const Index p = form_.num_rows;
    const Scalar piv = alpha(leave);
    for (Index c = 0; c < p; ++c) {
      if (!Traits::is_zero(binv_(leave, c))) binv_(leave, c) /= piv;
    }
    xb_(leave) /= piv;
    for (Index i = 0; i < p; ++i) {
      if (i == leave || Traits::is_zero(alpha(i))) continue;
      const Scalar f = alpha(i);
      for (Index c = 0; c < p; ++c) {
        if (!Traits::is_zero(binv_(leave, c))) binv_(i, c) -= f * binv_(leave, c);
      }
      xb_(i) -= f * xb_(leave);
      if constexpr (!Traits::exact) {
        if (xb_(i) < 0 && xb_(i) > -Traits::tolerance) xb_(i) = 0;
      }
    }
    is_basic_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave)])] = false;
    is_basic_[static_cast<std::size_t>(enter)] = true;
    basis_[static_cast<std::size_t>(leave)] = enter;
  }

  SimplexStatus iterate() {
    int degenerate_run = 0;
    std::int64_t since_refactor = 0;
    while (true) {
      if (iterations_ >= iteration_limit_) return SimplexStatus::IterationLimit;
      if (!phase_two_ && Traits::is_zero(infeasibility())) return SimplexStatus::Optimal;
      const bool bland = rule_ == PivotRule::Bland || degenerate_run > 50;
      const Vector<Scalar> pi = duals();
      const Index enter = choose_entering(pi, bland);
      if (enter < 0) return SimplexStatus::Optimal;
      const Vector<Scalar> alpha = entering_column(enter);
      const Index leave = choose_leaving(alpha);
      if (leave < 0) return SimplexStatus::Unbounded;
      const bool degenerate = Traits::is_zero(xb_(leave));
      pivot(leave, enter, alpha);
      ++iterations_;
      degenerate_run = degenerate ? degenerate_run + 1 : 0;
      if constexpr (!Traits::exact) {
        if (++since_refactor >= 64) {
          since_refactor = 0;
          refactor();
        }
      }
    }
  }

  /// Recomputes the inverse from scratch to shed accumulated rounding.
  /// Basic values that drift slightly negative are clamped to zero.
  void refactor() {
    const Index p = form_.num_rows;
    Matrix<Scalar> b = Matrix<Scalar>::Zero(p, p);
    for (Index i = 0; i < p; ++i) {
      const auto& col = form_.columns[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      for (std::size_t t = 0; t < col.rows.size(); ++t) b(col.rows[t], i) = col.values[t];
    }
    Matrix<Scalar> inverse;
    if (!invert(std::move(b), inverse)) return;
    Vector<Scalar> x = inverse * form_.rhs;
    for (Index i = 0; i < p; ++i) {
      if (x(i) < 0) x(i) = 0;
    }
    binv_ = std::move(inverse);
    xb_ = std::move(x);
  }

  /// Replaces basic artificials (all at level zero after a successful phase
  /// one) by structural columns where possible. Artificials left in the
  /// basis sit on redundant rows and can never change value.
  void drive_out_artificials() {
    for (Index i = 0; i < form_.num_rows; ++i) {
      if (!form_.artificial[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])]) continue;
      for (Index j = 0; j < form_.num_columns(); ++j) {
        const auto uj = static_cast<std::size_t>(j);
        if (is_basic_[uj] || form_.artificial[uj]) continue;
        const Vector<Scalar> alpha = entering_column(j);
        if (!Traits::is_zero(alpha(i))) {
          pivot(i, j, alpha);
          break;
        }
      }
    }
  }

  static bool invert(Matrix<Scalar> a, Matrix<Scalar>& out) {
    const Index n = a.rows();
    out = Matrix<Scalar>::Identity(n, n);
    for (Index c = 0; c < n; ++c) {
      Index piv = -1;
      for (Index r = c; r < n; ++r) {
        if (Traits::is_zero(a(r, c))) continue;
        if constexpr (Traits::exact) {
          piv = r;
          break;
        } else {
          if (piv < 0 || std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
        }
      }
      if (piv < 0) return false;
      if (piv != c) {
        a.row(piv).swap(a.row(c));
        out.row(piv).swap(out.row(c));
      }
      const Scalar inv = Scalar(1) / a(c, c);
      for (Index k = 0; k < n; ++k) {
        if (!Traits::is_zero(a(c, k))) a(c, k) *= inv;
        if (!Traits::is_zero(out(c, k))) out(c, k) *= inv;
      }
      for (Index r = 0; r < n; ++r) {
        if (r == c || Traits::is_zero(a(r, c))) continue;
        const Scalar f = a(r, c);
        for (Index k = 0; k < n; ++k) {
          if (!Traits::is_zero(a(c, k))) a(r, k) -= f * a(c, k);
          if (!Traits::is_zero(out(c, k))) out(r, k) -= f * out(c, k);
        }
      }
    }
    return true;
  }

  const StandardForm<Scalar>& form_;
  PivotRule rule_;
  std::int64_t iteration_limit_;
  std::int64_t iterations_ = 0;
  bool phase_two_ = false;
  std::vector<Index> basis_;
  std::vector<bool> is_basic_;
  Matrix<Scalar> binv_;
  Vector<Scalar> xb_;
  mutable Index pricing_start_ = 0;
  mutable std::vector<std::vector<double>> double_columns_;
  mutable std::vector<bool> column_safe_;
  mutable std::vector<double> double_cost_;
};

}  // namespace corevote::lp
