#include <doctest.h>

#include <set>
#include <vector>

#include "orbit_oracle.hpp"

using namespace testing;
using namespace corevote::proof;

TEST_CASE("canonical enumeration matches the orbit quotient of brute force for m <= 6") {
  for (int m = 1; m <= 6; ++m) {
    const auto tables = permutation_tables(m);
    for (int k = 1; k <= m; ++k) {
      CAPTURE(m);
      CAPTURE(k);
      const auto r = enumerate_histories(m, k);
      std::set<Form> canonical;
      for (const History& h : r.histories) canonical.insert(orbit_form(h, tables));
      CHECK(canonical.size() == r.histories.size());
      CHECK(canonical == brute_force_orbits(m, k));
    }
  }
}

TEST_CASE("canonical continuations cover every relabeling class of potential continuations") {
  for (int m = 2; m <= 6; ++m) {
    const auto tables = permutation_tables(m);
    for (int k = 1; k < m; ++k) {
      std::vector<History> level{History{m, k, {}}};
      for (int depth = 0; depth < (m <= 5 ? 2 : 1); ++depth) {
        std::vector<History> next;
        for (const History& h : level) {
          std::set<Form> all, canonical;
          const CandidateSet fixed = h.fixed();
          for_each_subset_of_size(m, k, [&](CandidateSet w) {
            if (!fixed.subset_of(w)) return;
            for (int size = 1; size <= k; ++size) {
              for_each_subset_of_size(m, size, [&](CandidateSet t) {
                if (!t.subset_of(w)) all.insert(orbit_form(h.extended({w, t}), tables));
              });
            }
          });
          for (const HistoryStep& s : canonical_continuations(h)) {
            canonical.insert(orbit_form(h.extended(s), tables));
            next.push_back(h.extended(s));
          }
          CAPTURE(h.str());
          CHECK(canonical == all);
        }
        level = std::move(next);
      }
    }
  }
}
