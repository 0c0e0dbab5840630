#pragma once

#include <span>
#include <utility>
#include <vector>

#include "corevote/candidate_set.hpp"
#include "corevote/rational.hpp"

namespace corevote {

/// An approval set together with the fraction of the electorate casting it.
struct Ballot {
  CandidateSet approvals;
  Rational weight;

  friend bool operator==(const Ballot&, const Ballot&) = default;
};

/// Distribution of approval ballots over m candidates. Ballots are nonempty,
/// unique, sorted by mask, carry positive weight, and the weights sum to 1.
class Profile {
 public:
  /// Duplicate ballots are merged and zero-weight entries dropped. Throws
  /// std::invalid_argument if a ballot is empty or out of range, a weight is
  /// negative, or the weights do not sum to exactly 1.
  static Profile from_weights(int m, std::vector<Ballot> ballots);

  /// Integer voter counts, converted to weights count / total.
  static Profile from_counts(int m, const std::vector<std::pair<CandidateSet, long>>& counts);

  int m() const { return m_; }
  std::span<const Ballot> ballots() const { return ballots_; }
  std::size_t size() const { return ballots_.size(); }
  CandidateSet candidates() const { return CandidateSet::first(m_); }

  /// P(A), zero if A does not occur.
  Rational weight(CandidateSet approvals) const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  Profile(int m, std::vector<Ballot> ballots) : m_(m), ballots_(std::move(ballots)) {}

  int m_ = 0;
  std::vector<Ballot> ballots_;
};

/// A profile together with the committee size, 1 <= k <= m.
class ElectionInstance {
 public:
  ElectionInstance(Profile profile, int k);

  const Profile& profile() const { return profile_; }
  int k() const { return k_; }
  int m() const { return profile_.m(); }

 private:
  Profile profile_;
  int k_;
};

/// Result of intersecting every ballot with a kept candidate set. Weights are
/// not renormalized: ballots that become empty are dropped and their weight
/// is reported as inactive mass.
struct RestrictedProfile {
  int m = 0;
  std::vector<Ballot> ballots;
  Rational inactive_mass;
  /// index_map[new] = old candidate index.
  std::vector<Candidate> index_map;

  bool empty() const { return ballots.empty(); }
  /// Maps a set over the original candidates to the dense new indices,
  /// dropping candidates that were not kept.
  CandidateSet to_restricted(CandidateSet original) const;
};

RestrictedProfile restrict_profile(const Profile& profile, CandidateSet keep);

}  // namespace corevote
