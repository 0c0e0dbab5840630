#pragma once

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "corevote/candidate_set.hpp"
#include "corevote/io.hpp"
#include "corevote/profile.hpp"

namespace corevote {

inline std::ostream& operator<<(std::ostream& os, CandidateSet s) { return os << s.str(); }

}  // namespace corevote

namespace testing {

using namespace corevote;

/// 1-based candidate list, as written in the examples.
inline CandidateSet C(std::initializer_list<int> one_based) {
  CandidateSet s;
  for (int c : one_based) s.insert(c - 1);
  return s;
}

/// c_lo .. c_hi, 1-based inclusive.
inline CandidateSet Cr(int lo, int hi) { return CandidateSet::range(lo - 1, hi); }

inline ElectionInstance load(const std::string& name) {
  return io::to_instance(io::read_profile_file(std::string(COREVOTE_DATA_DIR) + "/" + name));
}

inline ElectionInstance example1() { return load("example1.json"); }
inline ElectionInstance example_k9() { return load("example_k9.json"); }
inline ElectionInstance example2() { return load("example2_droop.json"); }
inline ElectionInstance small_swap_delta() { return load("small_swap_delta.json"); }

/// Random profile with up to `max_ballots` distinct nonempty ballots and
/// small random integer weights normalized to 1.
inline Profile random_profile(std::mt19937_64& rng, int m, int max_ballots, int max_weight = 6) {
  std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t{1} << m) - 1);
  std::uniform_int_distribution<int> count(1, max_ballots);
  std::uniform_int_distribution<long> weight(1, max_weight);
  std::vector<std::pair<CandidateSet, long>> entries;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) entries.emplace_back(CandidateSet(mask(rng)), weight(rng));
  return Profile::from_counts(m, entries);
}

}  // namespace testing
