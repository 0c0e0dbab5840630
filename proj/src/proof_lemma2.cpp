#include "corevote/pav.hpp"
#include "corevote/proof/program3.hpp"

namespace corevote::proof {

Lemma2Report lemma2_suite(const lp::SolveOptions& options) {
  constexpr int k = 8;
  const DeviationShape shape{4, 2};
  const History history = program3_history(k, shape);
  const lp::LinearSystem system = history_system(history);
  const CandidateSet committee = history.steps.front().committee;
  const CandidateSet deviation = history.steps.front().deviation;
  const CandidateSet shared = committee & deviation;                  // {a, b}
  const Candidate x = (deviation - committee).lowest();
  const Candidate y = ((deviation - committee) - CandidateSet{x}).lowest();
  const CandidateSet abx = shared | CandidateSet{x};
  const CandidateSet aby = shared | CandidateSet{y};

  Lemma2Report report;
  report.committee = committee;
  report.deviation = deviation;

  auto indicator = [&](CandidateSet ballot) {
    RationalVector v = RationalVector::Zero(system.num_variables());
    v(ballot_variable(ballot)) = 1;
    return v;
  };

  for (CandidateSet ballot : {abx, aby}) {
    const RationalVector objective = indicator(ballot);
    report.quarter_ballots.push_back(certified_optimum(system, objective, true, options));
    report.quarter_ballots.push_back(certified_optimum(system, objective, false, options));
  }

  for (const CandidateSet& ballot : system.labels()) {
    if (!ballot.intersects(deviation) || ballot == abx || ballot == aby) continue;
    report.other_ballots.push_back({ballot, certified_optimum(system, indicator(ballot), true, options)});
  }

  for (Candidate c : committee - shared) {
    // PAV(W \ {c}) - PAV(W) = -sum over ballots containing c of P(A) / u_A(W).
    CandidateSet reduced = committee;
    reduced.erase(c);
    RationalVector objective = RationalVector::Zero(system.num_variables());
    for (const CandidateSet& ballot : system.labels()) {
      objective(ballot_variable(ballot)) = harmonic(utility(ballot, reduced)) - harmonic(utility(ballot, committee));
    }
    report.drops.push_back({c, certified_optimum(system, objective, true, options),
                            certified_optimum(system, objective, false, options)});
  }
  return report;
}

}  // namespace corevote::proof
