#include "corevote/lp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "corevote/lp/simplex.hpp"

namespace corevote::lp {

namespace {

/// Maps a LinearSystem onto equality form. General rows are scaled to
/// integer coefficients; rows stating x_j >= 0 become sign constraints, and
/// the remaining (free) variables are split into a positive and a negative
/// part.
struct Reduction {
  std::vector<Index> general_rows;  // system row index per form row
  std::vector<Rational> row_scale;  // form row = scale * system row
  std::vector<int> row_sign;        // +1 / -1 applied to make rhs >= 0
  std::vector<Index> positive_column;
  std::vector<Index> negative_column;  // -1 for sign-constrained variables
  Index num_structural = 0;
  StandardForm<Rational> exact;
  StandardForm<double> approx;
  Vector<double> loose_rhs;
};

Reduction reduce(const LinearSystem& system, const RationalVector* objective) {
  Reduction red;
  const std::vector<bool> nonnegative = system.nonnegative_variables();
  const Index n = system.num_variables();

  red.positive_column.resize(static_cast<std::size_t>(n));
  red.negative_column.assign(static_cast<std::size_t>(n), -1);
  Index next = 0;
  for (Index j = 0; j < n; ++j) {
    red.positive_column[static_cast<std::size_t>(j)] = next++;
    if (!nonnegative[static_cast<std::size_t>(j)]) red.negative_column[static_cast<std::size_t>(j)] = next++;
  }
  red.num_structural = next;

  for (Index i = 0; i < system.num_rows(); ++i) {
    if (!system.row(i).is_nonnegativity()) red.general_rows.push_back(i);
  }
  const Index p = static_cast<Index>(red.general_rows.size());

  auto& form = red.exact;
  form.num_rows = p;
  form.columns.resize(static_cast<std::size_t>(red.num_structural));
  form.rhs = RationalVector::Zero(p);

  std::vector<std::size_t> entries(static_cast<std::size_t>(red.num_structural), 0);
  for (Index i : red.general_rows) {
    for (Index j : system.row(i).columns) {
      ++entries[static_cast<std::size_t>(red.positive_column[static_cast<std::size_t>(j)])];
      if (red.negative_column[static_cast<std::size_t>(j)] >= 0) {
        ++entries[static_cast<std::size_t>(red.negative_column[static_cast<std::size_t>(j)])];
      }
    }
  }
  for (std::size_t c = 0; c < entries.size(); ++c) {
    form.columns[c].rows.reserve(entries[c]);
    form.columns[c].values.reserve(entries[c]);
  }

  std::vector<Index> slack(static_cast<std::size_t>(p));
  red.row_scale.reserve(static_cast<std::size_t>(p));
  red.row_sign.reserve(static_cast<std::size_t>(p));
  for (Index r = 0; r < p; ++r) {
    const Row& row = system.row(red.general_rows[static_cast<std::size_t>(r)]);
    mpz_class lcm = row.rhs.gmp().get_den();
    for (const Rational& v : row.coefficients) {
      if (v.gmp().get_den() != 1) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.gmp().get_den_mpz_t());
    }
    const Rational scale(lcm);
    const int sign = row.rhs.sign() < 0 ? -1 : 1;
    red.row_scale.push_back(scale);
    red.row_sign.push_back(sign);
    const Rational factor = scale * Rational(sign);
    const bool unit = factor == Rational(1);
    for (std::size_t t = 0; t < row.columns.size(); ++t) {
      const Rational v = unit ? row.coefficients[t] : row.coefficients[t] * factor;
      const auto j = static_cast<std::size_t>(row.columns[t]);
      auto& pos = form.columns[static_cast<std::size_t>(red.positive_column[j])];
      pos.rows.push_back(r);
      pos.values.push_back(v);
      if (red.negative_column[j] >= 0) {
        auto& neg = form.columns[static_cast<std::size_t>(red.negative_column[j])];
        neg.rows.push_back(r);
        neg.values.push_back(-v);
      }
    }
    form.rhs(r) = row.rhs * factor;
    slack[static_cast<std::size_t>(r)] = static_cast<Index>(form.columns.size());
    form.columns.push_back({{r}, {Rational(sign)}});
  }
  form.artificial.assign(form.columns.size(), false);
  form.initial_basis.resize(static_cast<std::size_t>(p));
  for (Index r = 0; r < p; ++r) {
    if (red.row_sign[static_cast<std::size_t>(r)] > 0) {
      form.initial_basis[static_cast<std::size_t>(r)] = slack[static_cast<std::size_t>(r)];
    } else {
      form.initial_basis[static_cast<std::size_t>(r)] = static_cast<Index>(form.columns.size());
      form.columns.push_back({{r}, {Rational(1)}});
      form.artificial.push_back(true);
    }
  }
  if (objective != nullptr) {
    // Phase two minimizes -objective.
    form.cost.assign(form.columns.size(), Rational(0));
    for (Index j = 0; j < n; ++j) {
      const Rational& c = (*objective)(j);
      if (c.is_zero()) continue;
      form.cost[static_cast<std::size_t>(red.positive_column[static_cast<std::size_t>(j)])] = -c;
      if (red.negative_column[static_cast<std::size_t>(j)] >= 0) {
        form.cost[static_cast<std::size_t>(red.negative_column[static_cast<std::size_t>(j)])] = c;
      }
    }
  }

  // The floating-point copy only steers the exact run. Rows are scaled to
  // unit max-norm. `loose_rhs` widens every original row by a tiny staggered
  // amount so a first float pass stays off degenerate vertices.
  auto& approx = red.approx;
  approx.num_rows = p;
  std::vector<double> norm(static_cast<std::size_t>(p), 0.0);
  for (const auto& col : form.columns) {
    for (std::size_t t = 0; t < col.rows.size(); ++t) {
      auto& v = norm[static_cast<std::size_t>(col.rows[t])];
      v = std::max(v, std::abs(col.values[t].to_double()));
    }
  }
  approx.rhs.resize(p);
  red.loose_rhs.resize(p);
  for (Index r = 0; r < p; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    if (norm[ur] == 0.0) norm[ur] = 1.0;
    const double b = form.rhs(r).to_double() / norm[ur];
    const double loosen = 1e-7 * (1.0 + static_cast<double>((r * 7919) % 1000) / 1000.0);
    approx.rhs(r) = b;
    red.loose_rhs(r) = red.row_sign[ur] > 0 ? b + loosen : b - std::min(loosen, 0.5 * b);
  }
  approx.columns.resize(form.columns.size());
  for (std::size_t c = 0; c < form.columns.size(); ++c) {
    const auto& src = form.columns[c];
    approx.columns[c].rows = src.rows;
    approx.columns[c].values.reserve(src.values.size());
    for (std::size_t t = 0; t < src.rows.size(); ++t) {
      approx.columns[c].values.push_back(src.values[t].to_double() /
                                         norm[static_cast<std::size_t>(src.rows[t])]);
    }
  }
  approx.artificial = form.artificial;
  approx.initial_basis = form.initial_basis;
  approx.cost.reserve(form.cost.size());
  for (const Rational& c : form.cost) approx.cost.push_back(c.to_double());
  return red;
}

/// A basis of `form` that may be infeasible becomes a feasible start: one
/// artificial column equal to minus the sum of the basic columns on the
/// negative rows replaces the most negative row. Returns the start basis
/// (empty if singular) and the widened form when a column was added.
template <typename Scalar>
std::vector<Index> repaired_start(const StandardForm<Scalar>& form, std::vector<Index> basis,
                                  std::optional<StandardForm<Scalar>>& patched) {
  using Traits = ScalarTraits<Scalar>;
  const auto x = RevisedSimplex<Scalar>::basic_values(form, basis);
  if (!x) return {};
  Index worst = -1;
  for (Index i = 0; i < x->size(); ++i) {
    if (Traits::is_negative((*x)(i)) && (worst < 0 || (*x)(i) < (*x)(worst))) worst = i;
  }
  if (worst < 0) return basis;
  Vector<Scalar> q = Vector<Scalar>::Zero(form.num_rows);
  for (Index i = 0; i < x->size(); ++i) {
    if (!Traits::is_negative((*x)(i))) continue;
    const auto& col = form.columns[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
    for (std::size_t t = 0; t < col.rows.size(); ++t) q(col.rows[t]) -= col.values[t];
  }
  SparseColumn<Scalar> extra;
  for (Index r = 0; r < q.size(); ++r) {
    if (Traits::is_zero(q(r))) continue;
    extra.rows.push_back(r);
    extra.values.push_back(q(r));
  }
  patched = form;
  basis[static_cast<std::size_t>(worst)] = patched->num_columns();
  patched->columns.push_back(std::move(extra));
  patched->artificial.push_back(true);
  if (!patched->cost.empty()) patched->cost.emplace_back(0);
  return basis;
}

/// Two float passes: the widened rows first, then the true rows starting
/// from where the first pass ended.
std::optional<std::vector<Index>> float_basis(const Reduction& red, bool with_objective) {
  const std::int64_t limit = 20 * (red.approx.num_rows + red.approx.num_columns()) + 1000;
  StandardForm<double> loose_form = red.approx;
  loose_form.rhs = red.loose_rhs;
  RevisedSimplex<double> loose(loose_form, PivotRule::Dantzig, limit);
  loose.load_initial_basis();
  loose.phase_one();

  std::optional<StandardForm<double>> patched;
  const std::vector<Index> start = repaired_start(red.approx, loose.basis(), patched);
  const StandardForm<double>& form = patched ? *patched : red.approx;
  RevisedSimplex<double> tight(form, PivotRule::Dantzig, limit);
  if (start.empty() || !tight.load_basis(start)) return loose.basis();
  const auto st = tight.phase_one();
  if (st == SimplexStatus::Optimal && with_objective && ScalarTraits<double>::is_zero(tight.infeasibility())) {
    tight.phase_two();
  }
  std::vector<Index> basis = tight.basis();
  // The exact form lacks the repair column; swap in the unit column whose
  // row keeps the basis nonsingular by the widest margin.
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] < red.approx.num_columns()) continue;
    Index row = -1;
    for (Index r = 0; r < red.approx.num_rows; ++r) {
      if (std::find(basis.begin(), basis.end(), red.approx.initial_basis[static_cast<std::size_t>(r)]) != basis.end()) continue;
      const double v = std::abs(tight.inverse()(static_cast<Index>(i), r));
      if (row < 0 || v > std::abs(tight.inverse()(static_cast<Index>(i), row))) row = r;
    }
    if (row < 0) return loose.basis();
    basis[i] = red.approx.initial_basis[static_cast<std::size_t>(row)];
  }
  return basis;
}

RationalVector recover_assignment(const LinearSystem& system, const Reduction& red,
                                  const std::vector<Rational>& columns) {
  RationalVector x = RationalVector::Zero(system.num_variables());
  for (Index j = 0; j < system.num_variables(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    x(j) = columns[static_cast<std::size_t>(red.positive_column[uj])];
    if (red.negative_column[uj] >= 0) x(j) -= columns[static_cast<std::size_t>(red.negative_column[uj])];
  }
  if (system.num_rows() > 0 && system.max_violation(x).sign() > 0) {
    throw std::logic_error("exact simplex produced a point violating the system");
  }
  return x;
}

FarkasCertificate recover_certificate(const LinearSystem& system, const Reduction& red,
                                      const RationalVector& phase_one_duals) {
  // Reduced costs of a phase-one optimum give y = -pi * sign on the scaled
  // rows; undo the scaling to get multipliers for the original rows.
  std::vector<Rational> y(static_cast<std::size_t>(system.num_rows()), Rational(0));
  for (std::size_t r = 0; r < red.general_rows.size(); ++r) {
    y[static_cast<std::size_t>(red.general_rows[r])] =
        -phase_one_duals(static_cast<Index>(r)) * Rational(red.row_sign[r]) * red.row_scale[r];
  }
  FarkasCertificate cert{to_primitive_integers(y)};
  if (!verify_farkas(system, cert)) throw std::logic_error("exact simplex produced an invalid Farkas certificate");
  return cert;
}

struct ExactRun {
  bool feasible = false;
  SimplexStatus phase_two = SimplexStatus::Optimal;
  std::vector<Rational> columns;
  RationalVector duals;
};

ExactRun run_exact(const Reduction& red, bool with_objective, const SolveOptions& options) {
  std::optional<std::vector<Index>> hint;
  if (options.float_hint && red.exact.num_rows > 0) hint = float_basis(red, with_objective);

  std::optional<StandardForm<Rational>> patched;
  std::vector<Index> start;
  if (hint) start = repaired_start(red.exact, *hint, patched);
  const StandardForm<Rational>* form = patched ? &*patched : &red.exact;

  RevisedSimplex<Rational> simplex(*form, PivotRule::Dantzig, INT64_MAX);
  const bool loaded = !start.empty() && simplex.load_basis(start);
  if (!loaded) simplex.load_initial_basis();
  simplex.phase_one();
  ExactRun run;
  run.feasible = simplex.infeasibility().is_zero();
  if (!run.feasible) {
    run.duals = simplex.duals();
    return run;
  }
  if (with_objective) run.phase_two = simplex.phase_two();
  run.columns = simplex.primal();
  return run;
}

}  // namespace

LpVerdict solve_feasibility(const LinearSystem& system, const SolveOptions& options) {
  const Reduction red = reduce(system, nullptr);
  const ExactRun run = run_exact(red, false, options);
  if (!run.feasible) return Infeasible{recover_certificate(system, red, run.duals)};
  return Feasible{recover_assignment(system, red, run.columns)};
}

MaximizeResult maximize(const LinearSystem& system, const RationalVector& objective, const SolveOptions& options) {
  if (objective.size() != system.num_variables()) throw std::invalid_argument("objective length differs from variable count");
  const Reduction red = reduce(system, &objective);
  const ExactRun run = run_exact(red, true, options);
  if (!run.feasible) return Infeasible{recover_certificate(system, red, run.duals)};
  if (run.phase_two == SimplexStatus::Unbounded) return Unbounded{};
  Optimum opt{0, recover_assignment(system, red, run.columns)};
  for (Index j = 0; j < objective.size(); ++j) opt.value += objective(j) * opt.assignment(j);
  return opt;
}

MaximizeResult minimize(const LinearSystem& system, const RationalVector& objective, const SolveOptions& options) {
  const RationalVector negated = -objective;
  MaximizeResult result = maximize(system, negated, options);
  if (auto* opt = std::get_if<Optimum>(&result)) opt->value = -opt->value;
  return result;
}

}  // namespace corevote::lp
