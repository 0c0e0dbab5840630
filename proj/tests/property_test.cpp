#include <doctest.h>

#include <algorithm>
#include <random>

#include "corevote/proof/history.hpp"
#include "corevote/rules.hpp"
#include "corevote/stability.hpp"
#include "enumeration_audit.hpp"
#include "support.hpp"

using namespace testing;
using namespace corevote::proof;

TEST_CASE("every local pav committee is core stable for k up to 7") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = 2 + trial % 8;
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(m, 7)));
    const ElectionInstance inst(random_profile(rng, m, 6), k);
    for (CandidateSet w : all_local_pav(inst)) REQUIRE_FALSE(find_deviation(inst, w, Quota::Hare));
  }
}

TEST_CASE("special deviations never succeed against local pav committees") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = 2 + trial % 9;
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(m, 8)));
    const ElectionInstance inst(random_profile(rng, m, 6), k);
    for (CandidateSet w : all_local_pav(inst)) REQUIRE_FALSE(check_special_deviations(inst, w));
  }
}

TEST_CASE("recursive pav succeeds on random instances with few candidates") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 4 + trial % 9;
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(m));
    const ElectionInstance inst(random_profile(rng, m, 8), k);
    const auto out = recursive_pav(inst, Quota::Hare);
    REQUIRE(out.status == RuleStatus::Success);
    CHECK_FALSE(find_deviation(inst, out.committee, Quota::Hare));
  }
}

TEST_CASE("enumerated histories: prefix closure, certificate completeness, witnesses") {
  for (const auto [m, k] : {std::pair{7, 4}, {8, 5}, {9, 6}, {9, 7}, {10, 8}}) {
    CAPTURE(m);
    CAPTURE(k);
    const auto a = audit_enumeration(m, k);
    CHECK(a.complete);
    CHECK(a.proposition1);
    CHECK(a.distinct);
    CHECK(a.certificates_verified);
    CHECK(a.prefix_closed);
    CHECK(a.continuations_settled);
    CHECK(a.witnesses_realize);
    CHECK(a.solve_count_matches);
  }
}

TEST_CASE("m = 10, k = 8 admits a history of length one") {
  const auto r = enumerate_histories(10, 8);
  REQUIRE(r.histories.size() == 2);
  CHECK(r.histories[1].steps.size() == 1);
  CHECK(r.histories[1].total_deviation_size() <= 8);
}
