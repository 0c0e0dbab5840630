#include "corevote/profile.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace corevote {

Profile Profile::from_weights(int m, std::vector<Ballot> ballots) {
  if (m < 1 || m > kMaxCandidates) throw std::invalid_argument("candidate count out of range: " + std::to_string(m));
  const CandidateSet all = CandidateSet::first(m);
  std::map<CandidateSet, Rational> merged;
  Rational total = 0;
  for (const Ballot& b : ballots) {
    if (b.approvals.empty()) throw std::invalid_argument("empty approval ballot");
    if (!b.approvals.subset_of(all)) throw std::invalid_argument("ballot " + b.approvals.str() + " exceeds m");
    if (b.weight.sign() < 0) throw std::invalid_argument("negative ballot weight");
    merged[b.approvals] += b.weight;
    total += b.weight;
  }
  if (total != 1) throw std::invalid_argument("ballot weights sum to " + total.str() + ", expected 1");
  std::vector<Ballot> out;
  out.reserve(merged.size());
  for (auto& [set, w] : merged) {
    if (!w.is_zero()) out.push_back({set, w});
  }
  return Profile(m, std::move(out));
}

Profile Profile::from_counts(int m, const std::vector<std::pair<CandidateSet, long>>& counts) {
  long total = 0;
  for (const auto& [set, n] : counts) {
    if (n < 0) throw std::invalid_argument("negative voter count");
    total += n;
  }
  if (total == 0) throw std::invalid_argument("profile has no voters");
  std::vector<Ballot> ballots;
  ballots.reserve(counts.size());
  for (const auto& [set, n] : counts) ballots.push_back({set, Rational(mpz_class(n), mpz_class(total))});
  return from_weights(m, std::move(ballots));
}

Rational Profile::weight(CandidateSet approvals) const {
  auto it = std::lower_bound(ballots_.begin(), ballots_.end(), approvals,
                             [](const Ballot& b, CandidateSet s) { return b.approvals < s; });
  return (it != ballots_.end() && it->approvals == approvals) ? it->weight : Rational(0);
}

ElectionInstance::ElectionInstance(Profile profile, int k) : profile_(std::move(profile)), k_(k) {
  if (k < 1 || k > profile_.m()) {
    throw std::invalid_argument("committee size " + std::to_string(k) + " outside 1.." + std::to_string(profile_.m()));
  }
}

CandidateSet RestrictedProfile::to_restricted(CandidateSet original) const {
  CandidateSet out;
  for (std::size_t i = 0; i < index_map.size(); ++i) {
    if (original.contains(index_map[i])) out.insert(static_cast<Candidate>(i));
  }
  return out;
}

RestrictedProfile restrict_profile(const Profile& profile, CandidateSet keep) {
  keep = keep & profile.candidates();
  if (keep.empty()) throw std::invalid_argument("restrict_profile needs a nonempty kept set");
  RestrictedProfile out;
  out.m = keep.size();
  out.index_map = keep.members();
  std::map<CandidateSet, Rational> merged;
  for (const Ballot& b : profile.ballots()) {
    const CandidateSet kept = out.to_restricted(b.approvals & keep);
    if (kept.empty()) {
      out.inactive_mass += b.weight;
    } else {
      merged[kept] += b.weight;
    }
  }
  for (auto& [set, w] : merged) out.ballots.push_back({set, w});
  return out;
}

}  // namespace corevote
