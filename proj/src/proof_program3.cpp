#include "corevote/proof/program3.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "corevote/pav.hpp"

namespace corevote::proof {

History program3_history(int k, DeviationShape shape) {
  if (shape.size < 1 || shape.size > k || shape.overlap < 0 || shape.outside() < 1) {
    throw std::invalid_argument("shape (" + std::to_string(shape.size) + "," + std::to_string(shape.overlap) +
                                ") needs 1 <= size <= k and a member outside W");
  }
  const int m = k + shape.outside();
  const CandidateSet committee = CandidateSet::first(k);
  const CandidateSet deviation = CandidateSet::first(shape.overlap) | CandidateSet::range(k, m);
  return History{m, k, {{committee, deviation}}};
}

lp::LinearSystem build_program3(int k, DeviationShape shape) { return history_system(program3_history(k, shape)); }

lp::FarkasCertificate farkas_from_theorem1(int k, DeviationShape shape) {
  const History history = program3_history(k, shape);
  const lp::LinearSystem system = history_system(history);
  const CandidateSet committee = history.steps.front().committee;
  const CandidateSet deviation = history.steps.front().deviation;

  // Smallest |T \ W| + delta over supporting ballot types (c > a).
  Rational gamma;
  bool first = true;
  for (int a = 0; a <= k - shape.overlap; ++a) {
    for (int b = 0; b <= shape.overlap; ++b) {
      for (int c = a + 1; c <= shape.outside(); ++c) {
        Rational v = Rational(shape.outside()) + delta_formula(shape, k, a, b, c);
        if (first || v < gamma) gamma = std::move(v);
        first = false;
      }
    }
  }

  std::vector<Rational> y(static_cast<std::size_t>(system.num_rows()), Rational(0));
  for (lp::Index i = 0; i < system.num_rows(); ++i) {
    const lp::RowTag& tag = system.row(i).tag;
    auto& yi = y[static_cast<std::size_t>(i)];
    switch (tag.kind) {
      case lp::RowKind::NormalizationUpper: yi = shape.outside(); break;
      case lp::RowKind::Swap:
        if (!deviation.contains(tag.x) && deviation.contains(tag.y) && committee.contains(tag.x)) yi = 1;
        break;
      case lp::RowKind::Deviation: yi = gamma; break;
      default: break;
    }
  }
  return lp::FarkasCertificate{lp::to_primitive_integers(y)};
}

Rational optimality_margin() { return Rational(mpz_class(1), mpz_class(1000000)); }

CertifiedOptimum certified_optimum(const lp::LinearSystem& system, const RationalVector& objective, bool maximize,
                                   const lp::SolveOptions& options) {
  const lp::MaximizeResult result =
      maximize ? lp::maximize(system, objective, options) : lp::minimize(system, objective, options);
  const auto* opt = std::get_if<lp::Optimum>(&result);
  if (opt == nullptr) throw std::runtime_error("program has no finite optimum");

  CertifiedOptimum out;
  out.value = opt->value;
  Rational achieved = 0;
  for (lp::Index j = 0; j < objective.size(); ++j) achieved += objective(j) * opt->assignment(j);
  out.attained = achieved == opt->value && system.max_violation(opt->assignment).sign() <= 0;

  // Going past the optimum by the margin must be infeasible.
  lp::LinearSystem extended = system;
  std::vector<std::pair<lp::Index, Rational>> terms;
  for (lp::Index j = 0; j < objective.size(); ++j) {
    if (!objective(j).is_zero()) terms.emplace_back(j, maximize ? -objective(j) : objective(j));
  }
  const Rational rhs = maximize ? -(opt->value + optimality_margin()) : opt->value - optimality_margin();
  extended.add_row(std::move(terms), rhs, {lp::RowKind::Objective});
  const lp::LpVerdict verdict = lp::solve_feasibility(extended, options);
  if (const auto* inf = std::get_if<lp::Infeasible>(&verdict)) {
    out.certificate = inf->certificate;
    out.certificate_verified = lp::verify_farkas(extended, out.certificate);
  }
  return out;
}

bool Lemma2Report::all_certified() const {
  auto ok = [](const CertifiedOptimum& o) { return o.attained && o.certificate_verified; };
  return std::all_of(quarter_ballots.begin(), quarter_ballots.end(), ok) &&
         std::all_of(other_ballots.begin(), other_ballots.end(), [&](const BallotBound& b) { return ok(b.maximum); }) &&
         std::all_of(drops.begin(), drops.end(),
                     [&](const DropBound& d) { return ok(d.maximum) && ok(d.minimum); });
}

bool verify_lemma2_structure(const Profile& profile, CandidateSet committee, CandidateSet deviation) {
  if (committee.size() != 8 || deviation.size() != 4) return false;
  const CandidateSet shared = deviation & committee;
  const CandidateSet outside = deviation - committee;
  if (shared.size() != 2 || outside.size() != 2) return false;
  const CandidateSet both = committee | deviation;
  const Candidate x = outside.lowest();
  const Candidate y = (outside - CandidateSet{x}).lowest();
  const CandidateSet abx = shared | CandidateSet{x};
  const CandidateSet aby = shared | CandidateSet{y};

  Rational on_abx = 0, on_aby = 0;
  for (const Ballot& b : profile.ballots()) {
    const CandidateSet seen = b.approvals & both;
    if (seen == abx) {
      on_abx += b.weight;
    } else if (seen == aby) {
      on_aby += b.weight;
    } else if (b.approvals.intersects(deviation)) {
      return false;
    }
  }
  const Rational quarter(mpz_class(1), mpz_class(4));
  if (on_abx != quarter || on_aby != quarter) return false;

  const Rational base = pav_score(profile, committee);
  const Rational drop(mpz_class(-1), mpz_class(12));
  for (Candidate c : committee - shared) {
    CandidateSet reduced = committee;
    reduced.erase(c);
    if (pav_score(profile, reduced) - base != drop) return false;
  }
  return true;
}

}  // namespace corevote::proof
