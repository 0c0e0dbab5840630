#include "corevote/pav.hpp"

#include <stdexcept>
#include <vector>

namespace corevote {

namespace {

const std::vector<Rational>& harmonic_table() {
  static const std::vector<Rational> table = [] {
    std::vector<Rational> h(kMaxCandidates + 2);
    for (int n = 1; n < static_cast<int>(h.size()); ++n) h[n] = h[n - 1] + Rational(mpz_class(1), mpz_class(n));
    return h;
  }();
  return table;
}

}  // namespace

Rational harmonic(int n) {
  if (n < 0) throw std::invalid_argument("harmonic number of a negative index");
  const auto& table = harmonic_table();
  if (n < static_cast<int>(table.size())) return table[n];
  Rational h = table.back();
  for (int i = static_cast<int>(table.size()); i <= n; ++i) h += Rational(mpz_class(1), mpz_class(i));
  return h;
}

Rational pav_score(std::span<const Ballot> ballots, CandidateSet committee) {
  const auto& h = harmonic_table();
  Rational score = 0;
  for (const Ballot& b : ballots) {
    const int u = utility(b.approvals, committee);
    if (u > 0) score += b.weight * h[u];
  }
  return score;
}

Rational ballot_swap_delta(CandidateSet ballot, CandidateSet committee, Candidate x, Candidate y) {
  const bool has_x = ballot.contains(x);
  const bool has_y = ballot.contains(y);
  if (has_y && !has_x) return Rational(mpz_class(1), mpz_class(utility(ballot, committee) + 1));
  if (has_x && !has_y) return Rational(mpz_class(-1), mpz_class(utility(ballot, committee)));
  return 0;
}

Rational swap_delta(std::span<const Ballot> ballots, CandidateSet committee, Candidate x, Candidate y) {
  if (!committee.contains(x) || committee.contains(y)) {
    throw std::invalid_argument("swap requires x in the committee and y outside it");
  }
  Rational total = 0;
  for (const Ballot& b : ballots) {
    if (b.approvals.contains(x) != b.approvals.contains(y)) {
      total += b.weight * ballot_swap_delta(b.approvals, committee, x, y);
    }
  }
  return total;
}

BestSwap max_swap_delta(std::span<const Ballot> ballots, CandidateSet candidates, CandidateSet committee,
                        CandidateSet fixed) {
  BestSwap best;
  for (Candidate x : committee - fixed) {
    for (Candidate y : candidates - committee) {
      Rational d = swap_delta(ballots, committee, x, y);
      if (!best.exists() || d > best.delta) best = {std::move(d), x, y};
    }
  }
  return best;
}

}  // namespace corevote
