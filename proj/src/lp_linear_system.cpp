#include "corevote/lp/linear_system.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace corevote::lp {

std::string RowTag::str() const {
  switch (kind) {
    case RowKind::NormalizationUpper: return "normalization-upper";
    case RowKind::NormalizationLower: return "normalization-lower";
    case RowKind::Swap:
      return "swap(c" + std::to_string(x + 1) + ",c" + std::to_string(y + 1) + ",step " + std::to_string(step + 1) + ")";
    case RowKind::Deviation: return "deviation(step " + std::to_string(step + 1) + ")";
    case RowKind::Nonnegativity: return "nonnegativity(" + ballot.str() + ")";
    case RowKind::Objective: return "objective-bound";
    case RowKind::General: break;
  }
  return "row";
}

LinearSystem::LinearSystem(Index num_variables) : num_variables_(num_variables) {
  if (num_variables < 0) throw std::invalid_argument("negative variable count");
}

LinearSystem::LinearSystem(std::vector<CandidateSet> variable_labels)
    : num_variables_(static_cast<Index>(variable_labels.size())), labels_(std::move(variable_labels)) {}

Index LinearSystem::add_row(std::vector<std::pair<Index, Rational>> terms, Rational rhs, RowTag tag) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Row row;
  row.rhs = std::move(rhs);
  row.tag = tag;
  row.columns.reserve(terms.size());
  row.coefficients.reserve(terms.size());
  for (auto& [col, value] : terms) {
    if (col < 0 || col >= num_variables_) throw std::out_of_range("row refers to a missing variable");
    if (!row.columns.empty() && row.columns.back() == col) {
      row.coefficients.back() += value;
    } else {
      row.columns.push_back(col);
      row.coefficients.push_back(std::move(value));
    }
  }
  std::size_t kept = 0;
  for (std::size_t i = 0; i < row.columns.size(); ++i) {
    if (row.coefficients[i].is_zero()) continue;
    if (kept != i) {
      row.columns[kept] = row.columns[i];
      row.coefficients[kept] = std::move(row.coefficients[i]);
    }
    ++kept;
  }
  row.columns.resize(kept);
  row.coefficients.resize(kept);
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

Index LinearSystem::add_dense_row(const RationalVector& coefficients, Rational rhs, RowTag tag) {
  if (coefficients.size() != num_variables_) throw std::invalid_argument("row length differs from variable count");
  std::vector<std::pair<Index, Rational>> terms;
  for (Index j = 0; j < coefficients.size(); ++j) {
    if (!coefficients(j).is_zero()) terms.emplace_back(j, coefficients(j));
  }
  return add_row(std::move(terms), std::move(rhs), tag);
}

void LinearSystem::add_equality(const std::vector<std::pair<Index, Rational>>& terms, const Rational& rhs,
                                RowTag upper, RowTag lower) {
  add_row(terms, rhs, upper);
  std::vector<std::pair<Index, Rational>> negated;
  negated.reserve(terms.size());
  for (const auto& [col, value] : terms) negated.emplace_back(col, -value);
  add_row(std::move(negated), -rhs, lower);
}

void LinearSystem::add_nonnegativity(Index variable) {
  RowTag tag{RowKind::Nonnegativity};
  if (!labels_.empty()) tag.ballot = labels_[static_cast<std::size_t>(variable)];
  add_row({{variable, Rational(-1)}}, 0, tag);
}

RationalVector LinearSystem::coefficients(Index row_index) const {
  RationalVector out = RationalVector::Zero(num_variables_);
  const Row& r = row(row_index);
  for (std::size_t t = 0; t < r.columns.size(); ++t) out(r.columns[t]) = r.coefficients[t];
  return out;
}

std::vector<bool> LinearSystem::nonnegative_variables() const {
  std::vector<bool> out(static_cast<std::size_t>(num_variables_), false);
  for (const Row& r : rows_) {
    if (r.is_nonnegativity()) out[static_cast<std::size_t>(r.columns.front())] = true;
  }
  return out;
}

Rational LinearSystem::max_violation(const RationalVector& x) const {
  if (x.size() != num_variables_) throw std::invalid_argument("point dimension differs from variable count");
  Rational worst;
  bool first = true;
  for (const Row& r : rows_) {
    Rational lhs = 0;
    for (std::size_t t = 0; t < r.columns.size(); ++t) lhs += r.coefficients[t] * x(r.columns[t]);
    Rational v = lhs - r.rhs;
    if (first || v > worst) worst = std::move(v);
    first = false;
  }
  return worst;
}

std::size_t FarkasCertificate::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(multipliers.begin(), multipliers.end(), [](const mpz_class& v) { return v != 0; }));
}

bool verify_farkas(const LinearSystem& system, const FarkasCertificate& certificate) {
  if (static_cast<Index>(certificate.multipliers.size()) != system.num_rows()) {
    throw std::invalid_argument("certificate has " + std::to_string(certificate.multipliers.size()) +
                                " multipliers for " + std::to_string(system.num_rows()) + " rows");
  }
  Rational combined_rhs = 0;
  std::vector<Rational> combined(static_cast<std::size_t>(system.num_variables()));
  for (Index i = 0; i < system.num_rows(); ++i) {
    const mpz_class& y = certificate.multipliers[static_cast<std::size_t>(i)];
    if (y < 0) return false;
    if (y == 0) continue;
    const Rational yr(y);
    const Row& r = system.row(i);
    combined_rhs += yr * r.rhs;
    for (std::size_t t = 0; t < r.columns.size(); ++t) {
      combined[static_cast<std::size_t>(r.columns[t])] += yr * r.coefficients[t];
    }
  }
  if (combined_rhs.sign() >= 0) return false;
  const std::vector<bool> nonnegative = system.nonnegative_variables();
  for (std::size_t j = 0; j < combined.size(); ++j) {
    const int s = combined[j].sign();
    if (s < 0 || (s > 0 && !nonnegative[j])) return false;
  }
  return true;
}

std::vector<mpz_class> to_primitive_integers(const std::vector<Rational>& values) {
  const mpz_class l = denominator_lcm(values);
  std::vector<mpz_class> out;
  out.reserve(values.size());
  mpz_class g = 0;
  for (const Rational& v : values) {
    const Rational scaled = v * Rational(l);
    out.push_back(scaled.num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g > 1) {
    for (auto& v : out) v /= g;
  }
  return out;
}

}  // namespace corevote::lp
