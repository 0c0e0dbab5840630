#include "corevote/candidate_set.hpp"

#include <limits>

namespace corevote {

std::string CandidateSet::str() const {
  std::string out = "{";
  bool first = true;
  for (Candidate c : *this) {
    if (!first) out += ',';
    first = false;
    out += 'c';
    out += std::to_string(c + 1);
  }
  out += '}';
  return out;
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= r; ++i) {
    acc = acc * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace corevote
