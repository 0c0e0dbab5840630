#pragma once

#include <span>

#include "corevote/candidate_set.hpp"
#include "corevote/profile.hpp"
#include "corevote/rational.hpp"

namespace corevote {

/// H(n) = 1 + 1/2 + ... + 1/n, with H(0) = 0.
Rational harmonic(int n);

/// u_A(W) = |A ∩ W|
inline int utility(CandidateSet ballot, CandidateSet set) { return (ballot & set).size(); }

/// Sum over the given ballots of weight * H(|A ∩ W|).
Rational pav_score(std::span<const Ballot> ballots, CandidateSet committee);
inline Rational pav_score(const Profile& profile, CandidateSet committee) {
  return pav_score(profile.ballots(), committee);
}

/// PAV-score change of a single ballot when x in W is replaced by y not in W.
Rational ballot_swap_delta(CandidateSet ballot, CandidateSet committee, Candidate x, Candidate y);

/// PAV-score change of the weighted ballots under the swap W -> W \ {x} ∪ {y}.
/// Throws std::invalid_argument unless x ∈ W and y ∉ W.
Rational swap_delta(std::span<const Ballot> ballots, CandidateSet committee, Candidate x, Candidate y);
inline Rational swap_delta(const Profile& profile, CandidateSet committee, Candidate x, Candidate y) {
  return swap_delta(profile.ballots(), committee, x, y);
}

/// Largest swap delta over x ∈ W \ fixed, y ∈ candidates \ W. `exists()` is
/// false when there is no such swap.
struct BestSwap {
  Rational delta;
  Candidate x = -1;
  Candidate y = -1;
  bool exists() const { return x >= 0; }
};
BestSwap max_swap_delta(std::span<const Ballot> ballots, CandidateSet candidates, CandidateSet committee,
                        CandidateSet fixed = {});

}  // namespace corevote
