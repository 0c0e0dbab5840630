#include "corevote/rules.hpp"

#include <cassert>
#include <string>

#include "corevote/pav.hpp"

namespace corevote {

namespace {

void check_cap(const ElectionInstance& instance, const EnumerationLimits& limits) {
  const std::uint64_t count = binomial(instance.m(), instance.k());
  if (count > limits.max_committees) {
    throw EnumerationCapExceeded("C(" + std::to_string(instance.m()) + "," + std::to_string(instance.k()) + ") = " +
                                 std::to_string(count) + " committees exceeds the enumeration cap");
  }
}

Rational marginal_gain(std::span<const Ballot> ballots, CandidateSet committee, Candidate c) {
  Rational gain = 0;
  for (const Ballot& b : ballots) {
    if (b.approvals.contains(c)) gain += b.weight / Rational(utility(b.approvals, committee) + 1);
  }
  return gain;
}

}  // namespace

Rational almost_stable_epsilon(int k) { return Rational(mpz_class(1), mpz_class(10 * k * k)); }

CandidateSet greedy_pav(const ElectionInstance& instance, CandidateSet fixed, std::span<const Ballot> active) {
  if (fixed.size() > instance.k()) throw std::invalid_argument("fixed set larger than the committee size");
  CandidateSet committee = fixed;
  const CandidateSet all = instance.profile().candidates();
  while (committee.size() < instance.k()) {
    Candidate best = -1;
    Rational best_gain;
    for (Candidate c : all - committee) {
      Rational gain = marginal_gain(active, committee, c);
      if (best < 0 || gain >= best_gain) {
        best = c;
        best_gain = std::move(gain);
      }
    }
    committee.insert(best);
  }
  return committee;
}

CandidateSet local_pav(const ElectionInstance& instance, CandidateSet fixed, std::span<const Ballot> active,
                       const SearchConfig& config) {
  if (fixed.size() > instance.k()) throw std::invalid_argument("fixed set larger than the committee size");
  if (config.epsilon.sign() < 0) throw std::invalid_argument("negative swap tolerance");
  CandidateSet committee;
  if (config.start) {
    committee = *config.start;
    if (committee.size() != instance.k() || !fixed.subset_of(committee) ||
        !committee.subset_of(instance.profile().candidates())) {
      throw std::invalid_argument("start committee " + committee.str() + " is not a k-superset of the fixed set");
    }
  } else {
    committee = greedy_pav(instance, fixed, active);
  }

  const CandidateSet all = instance.profile().candidates();
  bool improved = true;
  while (improved) {
    improved = false;
    for (Candidate x : committee - fixed) {
      for (Candidate y : all - committee) {
        if (swap_delta(active, committee, x, y) > config.epsilon) {
          committee = committee.swapped(x, y);
          improved = true;
          break;
        }
      }
      if (improved) break;
    }
  }
  assert(fixed.subset_of(committee) && committee.size() == instance.k());
  assert(is_local_pav(instance, committee, active, fixed, config.epsilon));
  return committee;
}

bool is_local_pav(const ElectionInstance& instance, CandidateSet committee, std::span<const Ballot> active,
                  CandidateSet fixed, const Rational& epsilon) {
  const CandidateSet all = instance.profile().candidates();
  for (Candidate x : committee - fixed) {
    for (Candidate y : all - committee) {
      if (swap_delta(active, committee, x, y) > epsilon) return false;
    }
  }
  return true;
}

std::vector<CandidateSet> global_pav(const ElectionInstance& instance, const EnumerationLimits& limits) {
  check_cap(instance, limits);
  std::vector<CandidateSet> best;
  Rational best_score;
  for_each_subset_of_size(instance.m(), instance.k(), [&](CandidateSet w) {
    Rational score = pav_score(instance.profile(), w);
    if (best.empty() || score > best_score) {
      best.assign(1, w);
      best_score = std::move(score);
    } else if (score == best_score) {
      best.push_back(w);
    }
  });
  return best;
}

std::vector<CandidateSet> all_local_pav(const ElectionInstance& instance, const EnumerationLimits& limits) {
  check_cap(instance, limits);
  std::vector<CandidateSet> out;
  for_each_subset_of_size(instance.m(), instance.k(), [&](CandidateSet w) {
    if (is_local_pav(instance, w, instance.profile().ballots())) out.push_back(w);
  });
  return out;
}

RuleOutcome recursive_pav(const ElectionInstance& instance, Quota quota, const SearchConfig& config) {
  RuleOutcome outcome;
  std::vector<Ballot> active(instance.profile().ballots().begin(), instance.profile().ballots().end());
  SearchConfig round_config = config;
  while (true) {
    if (outcome.fixed.size() > instance.k()) {
      outcome.status = RuleStatus::Failed;
      return outcome;
    }
    outcome.committee = local_pav(instance, outcome.fixed, active, round_config);
    round_config.start.reset();
    const auto deviation = find_deviation(instance, outcome.committee, quota);
    if (!deviation) {
      outcome.status = RuleStatus::Success;
      return outcome;
    }
    outcome.trace.push_back({outcome.committee, deviation->deviation, deviation->support});
    outcome.fixed = outcome.fixed | deviation->deviation;
    std::erase_if(active, [&](const Ballot& b) {
      return utility(b.approvals, deviation->deviation) > utility(b.approvals, outcome.committee);
    });
  }
}

}  // namespace corevote
