#include <doctest.h>

#include <algorithm>
#include <set>
#include <variant>

#include "corevote/lp/solver.hpp"
#include "corevote/proof/history.hpp"
#include "support.hpp"

using namespace testing;
using namespace corevote::proof;

namespace {

History over_budget10() {
  return {16, 10, {{Cr(1, 10), C({1, 11, 12})}, {C({1, 2, 3, 4, 5, 6, 7, 11, 12, 13}), C({14, 15, 16})},
                   {C({1, 2, 3, 4, 11, 12, 13, 14, 15, 16}), Cr(5, 9)}}};
}

}  // namespace

TEST_CASE("potential histories") {
  const History h = over_budget10();
  CHECK(is_potential_history(h));
  CHECK(h.total_deviation_size() == 11);
  CHECK(h.fixed() == (C({1, 11, 12, 14, 15, 16}) | Cr(5, 9)));
  CHECK_FALSE(check_proposition1({h}, 10));
  CHECK(check_proposition1({}, 10));

  History broken = h;
  broken.steps[1].committee = Cr(1, 10);
  CHECK_FALSE(is_potential_history(broken));
  History oversized{6, 2, {{C({1, 2}), C({3, 4, 5})}}};
  CHECK_FALSE(is_potential_history(oversized));
  CHECK_THROWS_AS(history_system(oversized), std::invalid_argument);
}

TEST_CASE("history system layout") {
  const History h{5, 3, {{Cr(1, 3), C({1, 4, 5})}}};
  const auto s = history_system(h);
  CHECK(s.num_variables() == 31);
  CHECK(s.num_rows() == 2 + 3 * 2 + 1 + 31);
  CHECK(s.row(0).tag.kind == lp::RowKind::NormalizationUpper);
  CHECK(s.row(1).tag.kind == lp::RowKind::NormalizationLower);
  CHECK(s.row(2).tag.kind == lp::RowKind::Swap);
  CHECK(s.row(2).tag.x == 0);
  CHECK(s.row(2).tag.y == 3);
  CHECK(s.row(8).tag.kind == lp::RowKind::Deviation);
  CHECK(s.row(9).is_nonnegativity());
  CHECK(s.labels()[static_cast<std::size_t>(ballot_variable(C({1, 3})))] == C({1, 3}));
}

TEST_CASE("canonical continuations of the empty history") {
  const auto cont = canonical_continuations(History{15, 13, {}});
  std::set<std::pair<int, int>> shapes;
  for (const auto& s : cont) {
    CHECK(s.committee == Cr(1, 13));
    const int overlap = (s.deviation & s.committee).size();
    const int outside = (s.deviation - s.committee).size();
    CHECK(outside >= 1);
    CHECK(shapes.insert({overlap, outside}).second);
    CHECK(s.deviation == (Cr(1, overlap) | Cr(14, 13 + outside)));
  }
  CHECK(cont.size() == 13 + 12);
}

TEST_CASE("canonical continuations after one step") {
  const History h{15, 13, {{Cr(1, 13), C({1, 14, 15})}}};
  const auto cont = canonical_continuations(h);
  const HistoryStep expected{C({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 14, 15}), C({2, 12, 13})};
  CHECK(std::ranges::count(cont, expected) == 1);
  for (const auto& s : cont) {
    CHECK(C({1, 14, 15}).subset_of(s.committee));
    CHECK_FALSE(s.deviation.subset_of(s.committee));
    CHECK(is_potential_history(h.extended(s)));
  }
}

TEST_CASE("first-step verdicts of small histories") {
  const History lemma_case{6, 4, {{Cr(1, 4), C({1, 5})}}};
  CHECK(excluded_at_first_step(lemma_case.steps[0]));
  const auto v = classify_history(lemma_case);
  REQUIRE_FALSE(v.is_history());
  CHECK(lp::verify_farkas(history_system(lemma_case), *v.certificate));

  const History disjoint{6, 4, {{Cr(1, 4), C({5, 6})}}};
  CHECK(excluded_at_first_step(disjoint.steps[0]));
  CHECK_FALSE(classify_history(disjoint).is_history());

  const History realized{10, 8, {{C({1, 2, 5, 6, 7, 8, 9, 10}), Cr(1, 4)}}};
  CHECK_FALSE(excluded_at_first_step(realized.steps[0]));
  const auto w = classify_history(realized);
  REQUIRE(w.is_history());
}

TEST_CASE("enumeration on tiny instances") {
  for (int m = 1; m <= 6; ++m) {
    const auto r = enumerate_histories(m, m);
    CHECK(r.histories.size() == 1);
    CHECK(r.certificates.empty());
    CHECK(r.complete);
  }
  const auto r = enumerate_histories(6, 4);
  CHECK(r.histories.size() == 1);
  CHECK(r.certificates.size() == r.lp_solves);
  CHECK(check_proposition1(r.histories, 4));
}
