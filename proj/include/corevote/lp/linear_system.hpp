#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "corevote/candidate_set.hpp"
#include "corevote/rational.hpp"

namespace corevote::lp {

using Index = std::ptrdiff_t;

enum class RowKind { NormalizationUpper, NormalizationLower, Swap, Deviation, Nonnegativity, Objective, General };

/// Where a row came from. Fields not meaningful for the kind stay at -1/empty.
struct RowTag {
  RowKind kind = RowKind::General;
  int step = -1;
  Candidate x = -1;
  Candidate y = -1;
  CandidateSet ballot;

  std::string str() const;
};

/// One sparse inequality  sum_j coeff_j * x_j <= rhs.
struct Row {
  std::vector<Index> columns;
  std::vector<Rational> coefficients;
  Rational rhs;
  RowTag tag;

  /// Single variable with a negative coefficient and zero right-hand side,
  /// i.e. x_j >= 0.
  bool is_nonnegativity() const {
    return columns.size() == 1 && coefficients.front().sign() < 0 && rhs.is_zero();
  }
};

/// A system of inequalities in normal form "row . x <= rhs". Equalities are
/// stored as two opposing rows. Variables may carry ballot labels.
class LinearSystem {
 public:
  explicit LinearSystem(Index num_variables);
  explicit LinearSystem(std::vector<CandidateSet> variable_labels);

  Index num_variables() const { return num_variables_; }
  Index num_rows() const { return static_cast<Index>(rows_.size()); }
  const std::vector<Row>& rows() const { return rows_; }
  const Row& row(Index i) const { return rows_[static_cast<std::size_t>(i)]; }
  const std::vector<CandidateSet>& labels() const { return labels_; }

  /// Zero coefficients are dropped; duplicate columns are summed.
  Index add_row(std::vector<std::pair<Index, Rational>> terms, Rational rhs, RowTag tag = {});
  Index add_dense_row(const RationalVector& coefficients, Rational rhs, RowTag tag = {});
  /// Adds a <= b and -a <= -b.
  void add_equality(const std::vector<std::pair<Index, Rational>>& terms, const Rational& rhs, RowTag upper = {},
                    RowTag lower = {});
  void add_nonnegativity(Index variable);

  /// Dense coefficient vector of a row (length = number of variables).
  RationalVector coefficients(Index row) const;

  /// Per variable: true if some row states x_j >= 0.
  std::vector<bool> nonnegative_variables() const;

  /// max over rows of (row . x - rhs); a point is feasible iff this is <= 0.
  Rational max_violation(const RationalVector& x) const;

 private:
  Index num_variables_;
  std::vector<CandidateSet> labels_;
  std::vector<Row> rows_;
};

/// Nonnegative integer multipliers, one per row.
struct FarkasCertificate {
  std::vector<mpz_class> multipliers;

  std::size_t support_size() const;
  friend bool operator==(const FarkasCertificate&, const FarkasCertificate&) = default;
};

/// Checks y >= 0, y^T b < 0 and A^T y >= 0 exactly, where a column may only
/// have a positive entry if the system bounds that variable below by zero
/// (free variables need A^T y = 0). Uses no solver. Throws
/// std::invalid_argument if the multiplier count differs from the row count.
bool verify_farkas(const LinearSystem& system, const FarkasCertificate& certificate);

/// Scales a nonnegative rational vector to the primitive integer vector on
/// the same ray.
std::vector<mpz_class> to_primitive_integers(const std::vector<Rational>& values);

}  // namespace corevote::lp
