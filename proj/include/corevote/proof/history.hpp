#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "corevote/candidate_set.hpp"
#include "corevote/lp/linear_system.hpp"
#include "corevote/lp/solver.hpp"
#include "corevote/profile.hpp"

namespace corevote::proof {

struct HistoryStep {
  CandidateSet committee;
  CandidateSet deviation;

  friend bool operator==(const HistoryStep&, const HistoryStep&) = default;
  friend auto operator<=>(const HistoryStep&, const HistoryStep&) = default;
};

/// Sequence of (W_t, T_t) pairs over m candidates with committee size k, as
/// traced by recursive PAV.
struct History {
  int m = 0;
  int k = 0;
  std::vector<HistoryStep> steps;

  /// T_1 ∪ ... ∪ T_r
  CandidateSet fixed() const;
  /// |T_1| + ... + |T_r|
  int total_deviation_size() const;
  History extended(HistoryStep step) const;
  /// "(W1, T1), (W2, T2)" with 1-based candidate names.
  std::string str() const;

  friend bool operator==(const History&, const History&) = default;
  friend auto operator<=>(const History&, const History&) = default;
};

/// |W_t| = k, T_t nonempty with |T_t| <= k, everything within the m
/// candidates, and T_1 ∪ ... ∪ T_{t-1} ⊆ W_t.
bool is_potential_history(const History& history);

/// Ballot variables are all nonempty subsets of the m candidates; variable
/// j has label mask j + 1.
inline lp::Index ballot_variable(CandidateSet ballot) { return static_cast<lp::Index>(ballot.mask()) - 1; }

/// Linear system whose solutions are exactly the profiles for which the
/// history is a trace of recursive PAV. Rows, in order: the normalization
/// pair; per step, swap-stability rows over the active ballots for
/// x ∈ W_t \ (T_1 ∪ ... ∪ T_{t-1}) and y ∉ W_t in (x, y) order; per step
/// the negated deviation-support row; one nonnegativity row per ballot.
lp::LinearSystem history_system(const History& history);

/// Orbit representatives of the admissible next steps (W, T): W ⊇ fixed set,
/// |W| = k, T nonempty, |T| <= k, T ⊄ W, with lexicographically first
/// members taken from each class of candidates that the history cannot
/// distinguish.
std::vector<HistoryStep> canonical_continuations(const History& history);

/// Step-one deviations that cannot succeed against a local PAV committee:
/// T ∩ W = ∅ or |T \ W| <= 1.
bool excluded_at_first_step(const HistoryStep& step);

struct HistoryVerdict {
  History history;
  /// Profile realizing the history (nonzero weights only).
  std::optional<std::vector<Ballot>> witness;
  std::optional<lp::FarkasCertificate> certificate;

  bool is_history() const { return witness.has_value(); }
};

/// Solves history_system exactly.
HistoryVerdict classify_history(const History& history, const lp::SolveOptions& options = {});

struct EnumerationOptions {
  int threads = 1;
  /// Stop (flagging the result incomplete) once this much time has passed.
  std::optional<std::chrono::steady_clock::duration> budget;
  /// Called once per solved continuation.
  std::function<void(const HistoryVerdict&)> on_verdict;
};

struct EnumerationResult {
  int m = 0;
  int k = 0;
  /// Every canonical history, the empty one first, level by level.
  std::vector<History> histories;
  /// Rejected continuations with their certificates.
  std::vector<std::pair<History, lp::FarkasCertificate>> certificates;
  /// Kept histories whose deviations add up to more than k.
  std::vector<History> proposition1_failures;
  bool complete = true;
  std::size_t lp_solves = 0;
};

/// Breadth-first search over canonical continuations, keeping those whose
/// history system is feasible. Every certificate and witness is re-checked
/// before returning.
EnumerationResult enumerate_histories(int m, int k, const EnumerationOptions& options = {});

/// True iff every history has |T_1| + ... + |T_r| <= k.
bool check_proposition1(const std::vector<History>& histories, int k);

}  // namespace corevote::proof
