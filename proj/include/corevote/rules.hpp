#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "corevote/candidate_set.hpp"
#include "corevote/profile.hpp"
#include "corevote/rational.hpp"
#include "corevote/stability.hpp"

namespace corevote {

struct SearchConfig {
  /// Swaps are applied only while they improve the score by more than this.
  Rational epsilon = 0;
  /// Starting committee for local search; greedy when absent. Must contain
  /// the fixed set and have size k.
  std::optional<CandidateSet> start;
};

/// 0.1 / k^2, the tolerance under which almost-swap-stable committees are
/// still in the core for k <= 7.
Rational almost_stable_epsilon(int k);

/// Greedy PAV completion of `fixed` to k members over the given ballots.
/// Ties go to the highest candidate index.
CandidateSet greedy_pav(const ElectionInstance& instance, CandidateSet fixed, std::span<const Ballot> active);

/// Local search from the configured start: the first swap (x, y) in
/// lexicographic order with delta > epsilon is applied, x ranging over
/// W \ fixed, until no such swap remains.
CandidateSet local_pav(const ElectionInstance& instance, CandidateSet fixed, std::span<const Ballot> active,
                       const SearchConfig& config = {});
inline CandidateSet local_pav(const ElectionInstance& instance, const SearchConfig& config = {}) {
  return local_pav(instance, {}, instance.profile().ballots(), config);
}

/// True iff no swap x ∈ W \ fixed, y ∉ W raises the score over `active` by
/// more than epsilon.
bool is_local_pav(const ElectionInstance& instance, CandidateSet committee, std::span<const Ballot> active,
                  CandidateSet fixed = {}, const Rational& epsilon = 0);

struct EnumerationLimits {
  std::uint64_t max_committees = 10'000'000;
};

class EnumerationCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// All k-subsets of maximum PAV score, in ascending mask order.
std::vector<CandidateSet> global_pav(const ElectionInstance& instance, const EnumerationLimits& limits = {});

/// All k-subsets with no strictly improving swap, in ascending mask order.
std::vector<CandidateSet> all_local_pav(const ElectionInstance& instance, const EnumerationLimits& limits = {});

enum class RuleStatus { Success, Failed };

struct RuleStep {
  CandidateSet committee;
  CandidateSet deviation;
  Rational support;
};

struct RuleOutcome {
  RuleStatus status = RuleStatus::Success;
  /// Final committee on success; the last committee computed on failure.
  CandidateSet committee;
  CandidateSet fixed;
  std::vector<RuleStep> trace;
};

/// Recursive PAV: repeatedly compute a constrained local PAV committee over
/// the active ballots, and while a successful deviation T exists, fix T and
/// deactivate its supporters. Fails once the fixed set exceeds k.
RuleOutcome recursive_pav(const ElectionInstance& instance, Quota quota, const SearchConfig& config = {});

}  // namespace corevote
