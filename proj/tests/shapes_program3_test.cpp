#include <doctest.h>

#include <variant>

#include "corevote/lp/solver.hpp"
#include "corevote/pav.hpp"
#include "corevote/proof/program3.hpp"
#include "corevote/proof/shapes.hpp"
#include "support.hpp"

using namespace testing;
using namespace corevote::proof;

TEST_CASE("delta formula closed form") {
  CHECK(delta_formula({4, 2}, 8, 0, 2, 1) == 2);
  CHECK(supporter_bound({4, 2}, 8) == 2);
  CHECK(delta_formula({4, 2}, 7, 0, 2, 1) == Rational(5, 3));
  CHECK(supporter_bound({4, 2}, 7) == Rational(3, 2));
  CHECK(delta_formula({1, 0}, 7, 0, 0, 1) == 7);
  CHECK(supporter_bound({1, 0}, 7) == 6);
  CHECK_THROWS_AS(delta_formula({4, 2}, 8, 0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(delta_formula({4, 2}, 8, 7, 0, 1), std::invalid_argument);
}

TEST_CASE("delta formula matches summed swap deltas of a concrete ballot") {
  for (int k = 1; k <= 7; ++k) {
    for (const DeviationShape shape : deviation_shapes(k)) {
      const History h = program3_history(k, shape);
      const CandidateSet w = h.steps[0].committee, t = h.steps[0].deviation;
      for (int a = 0; a <= k - shape.overlap; ++a) {
        for (int b = 0; b <= shape.overlap; ++b) {
          for (int c = 0; c <= shape.outside(); ++c) {
            CandidateSet ballot = CandidateSet::range(0, 0);
            const auto wt = (w - t).members(), both = (w & t).members(), tw = (t - w).members();
            for (int i = 0; i < a; ++i) ballot.insert(wt[static_cast<std::size_t>(i)]);
            for (int i = 0; i < b; ++i) ballot.insert(both[static_cast<std::size_t>(i)]);
            for (int i = 0; i < c; ++i) ballot.insert(tw[static_cast<std::size_t>(i)]);
            if (ballot.empty()) continue;
            Rational sum = 0;
            for (Candidate x : w - t) {
              for (Candidate y : t - w) sum += ballot_swap_delta(ballot, w, x, y);
            }
            REQUIRE(delta_formula(shape, k, a, b, c) == sum);
          }
        }
      }
    }
  }
}

TEST_CASE("inequality scan") {
  CHECK(inequality_scan(1).empty());
  for (int k = 1; k <= 7; ++k) CHECK(inequality_scan(k).empty());
  const auto v8 = inequality_scan(8);
  REQUIRE_FALSE(v8.empty());
  for (const auto& v : v8) CHECK(v.shape == DeviationShape{4, 2});
}

TEST_CASE("shape program sizes and small verdicts") {
  const auto s = build_program3(2, {1, 0});
  CHECK(s.num_variables() == 7);
  CHECK(s.num_rows() == 12);
  const auto v = lp::solve_feasibility(s);
  REQUIRE(std::holds_alternative<lp::Infeasible>(v));
  CHECK(lp::verify_farkas(s, std::get<lp::Infeasible>(v).certificate));
  CHECK(build_program3(8, {4, 2}).num_variables() == 1023);
}

TEST_CASE("analytic certificates") {
  for (int k = 1; k <= 7; ++k) {
    for (const DeviationShape shape : deviation_shapes(k)) {
      const auto cert = farkas_from_theorem1(k, shape);
      CHECK(lp::verify_farkas(build_program3(k, shape), cert));
      CHECK(cert.support_size() == static_cast<std::size_t>((k - shape.overlap) * shape.outside() + 2));
    }
  }
  CHECK_FALSE(lp::verify_farkas(build_program3(8, {4, 2}), farkas_from_theorem1(8, {4, 2})));
  for (int k = 1; k <= 8; ++k) {
    bool all = true;
    for (const DeviationShape shape : deviation_shapes(k)) {
      all = all && lp::verify_farkas(build_program3(k, shape), farkas_from_theorem1(k, shape));
    }
    CHECK(all == inequality_scan(k).empty());
  }
}

TEST_CASE("k = 8 structure check") {
  const auto ex1 = example1();
  CHECK(verify_lemma2_structure(ex1.profile(), C({1, 2, 5, 6, 7, 8, 9, 10}), Cr(1, 4)));
  const auto skewed = Profile::from_weights(
      10, {{C({1, 2, 3}), Rational(26, 100)}, {C({1, 2, 4}), Rational(24, 100)}, {Cr(5, 10), Rational(1, 2)}});
  CHECK_FALSE(verify_lemma2_structure(skewed, C({1, 2, 5, 6, 7, 8, 9, 10}), Cr(1, 4)));
  const auto uniform = Profile::from_weights(10, {{Cr(1, 10), Rational(1)}});
  CHECK_FALSE(verify_lemma2_structure(uniform, C({1, 2, 5, 6, 7, 8, 9, 10}), Cr(1, 4)));
}

TEST_CASE("shape program at k = 8 has the forced structure") {
  const auto h = program3_history(8, {4, 2});
  const auto v = lp::solve_feasibility(build_program3(8, {4, 2}));
  REQUIRE(std::holds_alternative<lp::Feasible>(v));
  const auto& x = std::get<lp::Feasible>(v).assignment;
  std::vector<Ballot> ballots;
  for (lp::Index j = 0; j < x.size(); ++j) {
    if (!x(j).is_zero()) ballots.push_back({CandidateSet(static_cast<CandidateSet::Mask>(j + 1)), x(j)});
  }
  CHECK(verify_lemma2_structure(Profile::from_weights(h.m, ballots), h.steps[0].committee, h.steps[0].deviation));
}
