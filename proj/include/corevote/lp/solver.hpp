#pragma once

#include <variant>
#include <vector>

#include "corevote/lp/linear_system.hpp"
#include "corevote/rational.hpp"

namespace corevote::lp {

struct Feasible {
  RationalVector assignment;
};

struct Infeasible {
  FarkasCertificate certificate;
};

struct Unbounded {};

struct Optimum {
  Rational value;
  RationalVector assignment;
};

using LpVerdict = std::variant<Feasible, Infeasible>;
using MaximizeResult = std::variant<Optimum, Infeasible, Unbounded>;

struct SolveOptions {
  /// Run a floating-point simplex first and hand its final basis to the
  /// exact solver as a starting point. Never affects the verdict.
  bool float_hint = true;
};

/// Decides feasibility of `system` exactly. Infeasible verdicts carry a
/// certificate that passes verify_farkas; feasible ones an exact point.
LpVerdict solve_feasibility(const LinearSystem& system, const SolveOptions& options = {});

/// Maximizes objective . x over the system. `objective` has one entry per
/// variable.
MaximizeResult maximize(const LinearSystem& system, const RationalVector& objective, const SolveOptions& options = {});
MaximizeResult minimize(const LinearSystem& system, const RationalVector& objective, const SolveOptions& options = {});

}  // namespace corevote::lp
