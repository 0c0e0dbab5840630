#pragma once

#include <optional>
#include <span>
#include <vector>

#include "corevote/candidate_set.hpp"
#include "corevote/profile.hpp"
#include "corevote/rational.hpp"

namespace corevote {

/// Entitlement quota. Hare: a coalition succeeds with support >= |T|/k.
/// Droop: a coalition succeeds with support > |T|/(k+1).
enum class Quota { Hare, Droop };

Rational quota_threshold(Quota quota, int deviation_size, int k);
bool quota_met(Quota quota, const Rational& support, const Rational& threshold);
const char* to_string(Quota quota);

struct DeviationReport {
  CandidateSet deviation;
  Rational support;
  Rational threshold;
  /// Ballots A with u_A(T) > u_A(W).
  std::vector<CandidateSet> supporters;
  bool successful = false;
};

/// Total weight of the ballots strictly preferring T to W.
Rational deviation_support(std::span<const Ballot> ballots, CandidateSet committee, CandidateSet deviation);
inline Rational deviation_support(const Profile& profile, CandidateSet committee, CandidateSet deviation) {
  return deviation_support(profile.ballots(), committee, deviation);
}

DeviationReport evaluate_deviation(const ElectionInstance& instance, CandidateSet committee, CandidateSet deviation,
                                   Quota quota);

struct StabilityLimits {
  int max_candidates = 20;
};

/// First successful deviation in (size, mask) order, or nullopt when the
/// committee is stable under `quota`. Throws std::length_error if m exceeds
/// `limits.max_candidates`.
std::optional<DeviationReport> find_deviation(const ElectionInstance& instance, CandidateSet committee, Quota quota,
                                              const StabilityLimits& limits = {});

/// Scans only deviations with T ∩ W = ∅ or |T \ W| <= 1 under the Hare
/// quota. Local PAV committees never admit one.
std::optional<DeviationReport> check_special_deviations(const ElectionInstance& instance, CandidateSet committee);

}  // namespace corevote
