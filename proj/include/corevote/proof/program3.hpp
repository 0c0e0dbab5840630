#pragma once

#include <vector>

#include "corevote/candidate_set.hpp"
#include "corevote/lp/linear_system.hpp"
#include "corevote/lp/solver.hpp"
#include "corevote/profile.hpp"
#include "corevote/proof/history.hpp"
#include "corevote/proof/shapes.hpp"

namespace corevote::proof {

/// Single-step history on C = W ∪ T with W = {c1..ck} and T made of the first
/// `overlap` members of W followed by the first candidates after W.
History program3_history(int k, DeviationShape shape);

/// Profiles on W ∪ T making W a local PAV committee with T a successful
/// deviation.
lp::LinearSystem build_program3(int k, DeviationShape shape);

/// Multipliers of the summed-swap argument: |T \ W| on the upper
/// normalization row, 1 on each swap row with x ∈ W \ T and y ∈ T \ W, and
/// on the deviation row the smallest value |T \ W| + delta over supporting
/// ballot types. Verifies exactly when that argument closes.
lp::FarkasCertificate farkas_from_theorem1(int k, DeviationShape shape);

/// An LP optimum together with evidence: the attaining point and a Farkas
/// certificate that the objective cannot go past the value by `margin`.
struct CertifiedOptimum {
  Rational value;
  bool attained = false;
  lp::FarkasCertificate certificate;
  bool certificate_verified = false;
};

/// Margin used for optimality certificates.
Rational optimality_margin();

/// Maximizes (or minimizes) the objective and certifies the optimum.
/// Throws std::runtime_error if the program is infeasible or unbounded.
CertifiedOptimum certified_optimum(const lp::LinearSystem& system, const RationalVector& objective, bool maximize,
                                   const lp::SolveOptions& options = {});

struct BallotBound {
  CandidateSet ballot;
  CertifiedOptimum maximum;
};

struct DropBound {
  Candidate removed = -1;
  CertifiedOptimum maximum;
  CertifiedOptimum minimum;
};

/// Optima of the k = 8, |T| = 4, |T ∩ W| = 2 programs, with T = {a, b, x, y}.
struct Lemma2Report {
  CandidateSet committee;
  CandidateSet deviation;
  /// max/min P({a,b,x}), max/min P({a,b,y}).
  std::vector<CertifiedOptimum> quarter_ballots;
  /// max P(A) for every other ballot meeting T.
  std::vector<BallotBound> other_ballots;
  /// max/min of PAV(W \ {c}) - PAV(W) for c ∈ W \ {a, b}.
  std::vector<DropBound> drops;

  bool all_certified() const;
};

Lemma2Report lemma2_suite(const lp::SolveOptions& options = {});

/// Checks on a concrete profile that |W| = 8, T = {a, b, x, y} with
/// a, b ∈ W and x, y ∉ W, and that
///   - weight 1/4 sits on ballots meeting W ∪ T in {a,b,x}, 1/4 on {a,b,y};
///   - all other weight is on ballots disjoint from T;
///   - dropping any c ∈ W \ {a,b} lowers the PAV score by exactly 1/12.
bool verify_lemma2_structure(const Profile& profile, CandidateSet committee, CandidateSet deviation);

}  // namespace corevote::proof
