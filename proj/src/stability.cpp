#include "corevote/stability.hpp"

#include <stdexcept>
#include <string>

#include "corevote/pav.hpp"

namespace corevote {

Rational quota_threshold(Quota quota, int deviation_size, int k) {
  const int denominator = quota == Quota::Hare ? k : k + 1;
  return Rational(mpz_class(deviation_size), mpz_class(denominator));
}

bool quota_met(Quota quota, const Rational& support, const Rational& threshold) {
  return quota == Quota::Hare ? support >= threshold : support > threshold;
}

const char* to_string(Quota quota) { return quota == Quota::Hare ? "hare" : "droop"; }

Rational deviation_support(std::span<const Ballot> ballots, CandidateSet committee, CandidateSet deviation) {
  Rational support = 0;
  for (const Ballot& b : ballots) {
    if (utility(b.approvals, deviation) > utility(b.approvals, committee)) support += b.weight;
  }
  return support;
}

DeviationReport evaluate_deviation(const ElectionInstance& instance, CandidateSet committee, CandidateSet deviation,
                                   Quota quota) {
  DeviationReport report;
  report.deviation = deviation;
  report.threshold = quota_threshold(quota, deviation.size(), instance.k());
  for (const Ballot& b : instance.profile().ballots()) {
    if (utility(b.approvals, deviation) > utility(b.approvals, committee)) {
      report.support += b.weight;
      report.supporters.push_back(b.approvals);
    }
  }
  report.successful = quota_met(quota, report.support, report.threshold);
  return report;
}

namespace {

template <typename Accept>
std::optional<DeviationReport> scan(const ElectionInstance& instance, CandidateSet committee, Quota quota,
                                    Accept&& accept) {
  std::optional<DeviationReport> found;
  const auto ballots = instance.profile().ballots();
  // Utilities against W do not depend on T.
  std::vector<int> base(ballots.size());
  for (std::size_t i = 0; i < ballots.size(); ++i) base[i] = utility(ballots[i].approvals, committee);

  for (int size = 1; size <= instance.k() && !found; ++size) {
    const Rational threshold = quota_threshold(quota, size, instance.k());
    for_each_subset_of_size(instance.m(), size, [&](CandidateSet t) {
      if (t.subset_of(committee) || !accept(t)) return true;
      Rational support = 0;
      for (std::size_t i = 0; i < ballots.size(); ++i) {
        if (utility(ballots[i].approvals, t) > base[i]) support += ballots[i].weight;
      }
      if (!quota_met(quota, support, threshold)) return true;
      found = evaluate_deviation(instance, committee, t, quota);
      return false;
    });
  }
  return found;
}

void check_committee(const ElectionInstance& instance, CandidateSet committee) {
  if (committee.size() != instance.k() || !committee.subset_of(instance.profile().candidates())) {
    throw std::invalid_argument("committee " + committee.str() + " is not a k-subset of the candidates");
  }
}

}  // namespace

std::optional<DeviationReport> find_deviation(const ElectionInstance& instance, CandidateSet committee, Quota quota,
                                              const StabilityLimits& limits) {
  check_committee(instance, committee);
  if (instance.m() > limits.max_candidates) {
    throw std::length_error("deviation search over " + std::to_string(instance.m()) + " candidates exceeds the cap of " +
                            std::to_string(limits.max_candidates));
  }
  return scan(instance, committee, quota, [](CandidateSet) { return true; });
}

std::optional<DeviationReport> check_special_deviations(const ElectionInstance& instance, CandidateSet committee) {
  check_committee(instance, committee);
  return scan(instance, committee, Quota::Hare, [committee](CandidateSet t) {
    return !t.intersects(committee) || (t - committee).size() <= 1;
  });
}

}  // namespace corevote
