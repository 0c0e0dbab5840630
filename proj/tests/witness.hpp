#pragma once

#include <vector>

#include "corevote/pav.hpp"
#include "corevote/proof/history.hpp"
#include "corevote/rules.hpp"
#include "corevote/stability.hpp"

namespace testing {

/// Checks a witness profile directly: every T_t succeeds against W_t under
/// the Hare quota, and every W_t admits no improving swap over the ballots
/// still active at step t.
inline bool witness_realizes(const corevote::proof::History& h, const std::vector<corevote::Ballot>& witness) {
  using namespace corevote;
  const ElectionInstance inst(Profile::from_weights(h.m, witness), h.k);
  std::vector<Ballot> active(inst.profile().ballots().begin(), inst.profile().ballots().end());
  CandidateSet fixed;
  for (const auto& step : h.steps) {
    if (!is_local_pav(inst, step.committee, active, fixed)) return false;
    if (!evaluate_deviation(inst, step.committee, step.deviation, Quota::Hare).successful) return false;
    std::erase_if(active, [&](const Ballot& b) {
      return utility(b.approvals, step.deviation) > utility(b.approvals, step.committee);
    });
    fixed = fixed | step.deviation;
  }
  return true;
}

}  // namespace testing
