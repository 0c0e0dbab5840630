#include "corevote/proof/history.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

#include "corevote/pav.hpp"

namespace corevote::proof {

CandidateSet History::fixed() const {
  CandidateSet f;
  for (const HistoryStep& s : steps) f = f | s.deviation;
  return f;
}

int History::total_deviation_size() const {
  int total = 0;
  for (const HistoryStep& s : steps) total += s.deviation.size();
  return total;
}

History History::extended(HistoryStep step) const {
  History h = *this;
  h.steps.push_back(step);
  return h;
}

std::string History::str() const {
  if (steps.empty()) return "(empty history)";
  std::string out;
  for (const HistoryStep& s : steps) {
    if (!out.empty()) out += ", ";
    out += "(" + s.committee.str() + ", " + s.deviation.str() + ")";
  }
  return out;
}

bool is_potential_history(const History& history) {
  if (history.m < 1 || history.m > kMaxCandidates || history.k < 1 || history.k > history.m) return false;
  const CandidateSet all = CandidateSet::first(history.m);
  CandidateSet fixed;
  for (const HistoryStep& s : history.steps) {
    if (s.committee.size() != history.k || !s.committee.subset_of(all)) return false;
    if (s.deviation.empty() || s.deviation.size() > history.k || !s.deviation.subset_of(all)) return false;
    if (!fixed.subset_of(s.committee)) return false;
    fixed = fixed | s.deviation;
  }
  return true;
}

lp::LinearSystem history_system(const History& history) {
  if (!is_potential_history(history)) throw std::invalid_argument("not a potential history: " + history.str());
  if (history.m > 24) throw std::length_error("history system over more than 24 candidates");
  const int m = history.m;
  const CandidateSet all = CandidateSet::first(m);
  const auto num_ballots = static_cast<std::size_t>(all.mask());

  std::vector<CandidateSet> labels(num_ballots);
  for (std::size_t v = 0; v < num_ballots; ++v) labels[v] = CandidateSet(v + 1);
  lp::LinearSystem system(labels);

  std::vector<std::pair<lp::Index, Rational>> ones;
  ones.reserve(num_ballots);
  for (std::size_t v = 0; v < num_ballots; ++v) ones.emplace_back(static_cast<lp::Index>(v), Rational(1));
  system.add_equality(ones, 1, {lp::RowKind::NormalizationUpper}, {lp::RowKind::NormalizationLower});

  std::vector<Rational> gain(static_cast<std::size_t>(m) + 2), loss(static_cast<std::size_t>(m) + 2);
  for (int u = 0; u <= m + 1; ++u) {
    gain[static_cast<std::size_t>(u)] = Rational(mpz_class(1), mpz_class(u + 1));
    if (u > 0) loss[static_cast<std::size_t>(u)] = Rational(mpz_class(-1), mpz_class(u));
  }

  std::vector<bool> active(num_ballots, true);
  std::vector<int> u(num_ballots);
  CandidateSet fixed;
  for (std::size_t t = 0; t < history.steps.size(); ++t) {
    const HistoryStep& step = history.steps[t];
    for (std::size_t v = 0; v < num_ballots; ++v) u[v] = utility(labels[v], step.committee);
    for (Candidate x : step.committee - fixed) {
      for (Candidate y : all - step.committee) {
        std::vector<std::pair<lp::Index, Rational>> terms;
        for (std::size_t v = 0; v < num_ballots; ++v) {
          if (!active[v]) continue;
          const bool has_x = labels[v].contains(x);
          const bool has_y = labels[v].contains(y);
          if (has_y && !has_x) {
            terms.emplace_back(static_cast<lp::Index>(v), gain[static_cast<std::size_t>(u[v])]);
          } else if (has_x && !has_y) {
            terms.emplace_back(static_cast<lp::Index>(v), loss[static_cast<std::size_t>(u[v])]);
          }
        }
        system.add_row(std::move(terms), 0, {lp::RowKind::Swap, static_cast<int>(t), x, y});
      }
    }
    for (std::size_t v = 0; v < num_ballots; ++v) {
      if (utility(labels[v], step.deviation) > u[v]) active[v] = false;
    }
    fixed = fixed | step.deviation;
  }

  for (std::size_t t = 0; t < history.steps.size(); ++t) {
    const HistoryStep& step = history.steps[t];
    std::vector<std::pair<lp::Index, Rational>> terms;
    for (std::size_t v = 0; v < num_ballots; ++v) {
      if (utility(labels[v], step.deviation) > utility(labels[v], step.committee)) {
        terms.emplace_back(static_cast<lp::Index>(v), Rational(-1));
      }
    }
    system.add_row(std::move(terms), -Rational(mpz_class(step.deviation.size()), mpz_class(history.k)),
                   {lp::RowKind::Deviation, static_cast<int>(t)});
  }

  for (std::size_t v = 0; v < num_ballots; ++v) system.add_nonnegativity(static_cast<lp::Index>(v));
  return system;
}

namespace {

/// Classes of candidates that lie in exactly the same sets, ordered by
/// smallest member.
std::vector<std::vector<Candidate>> indistinguishable_classes(int m, const std::vector<CandidateSet>& sets) {
  std::map<std::vector<bool>, std::vector<Candidate>> by_signature;
  for (Candidate c = 0; c < m; ++c) {
    std::vector<bool> signature;
    signature.reserve(sets.size());
    for (CandidateSet s : sets) signature.push_back(s.contains(c));
    by_signature[signature].push_back(c);
  }
  std::vector<std::vector<Candidate>> classes;
  for (auto& [sig, members] : by_signature) classes.push_back(std::move(members));
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

/// Calls f(set) for every choice of a count per class (within [min, max])
/// whose total lies in [lo, hi], taking the first members of each class.
template <typename F>
void choose_by_class(const std::vector<std::vector<Candidate>>& classes, const std::vector<int>& min_count,
                     const std::vector<int>& max_count, int lo, int hi, F&& f) {
  std::function<void(std::size_t, int, CandidateSet)> rec = [&](std::size_t i, int total, CandidateSet chosen) {
    if (total > hi) return;
    if (i == classes.size()) {
      if (total >= lo) f(chosen);
      return;
    }
    CandidateSet with = chosen;
    for (int n = 0; n < min_count[i]; ++n) with.insert(classes[i][static_cast<std::size_t>(n)]);
    for (int n = min_count[i]; n <= max_count[i]; ++n) {
      rec(i + 1, total + n, with);
      if (n < static_cast<int>(classes[i].size())) with.insert(classes[i][static_cast<std::size_t>(n)]);
    }
  };
  rec(0, 0, CandidateSet());
}

}  // namespace

std::vector<HistoryStep> canonical_continuations(const History& history) {
  if (!is_potential_history(history)) throw std::invalid_argument("not a potential history: " + history.str());
  std::vector<CandidateSet> sets;
  for (const HistoryStep& s : history.steps) {
    sets.push_back(s.committee);
    sets.push_back(s.deviation);
  }
  const CandidateSet fixed = history.fixed();
  const auto classes = indistinguishable_classes(history.m, sets);
  std::vector<int> w_min, w_max;
  for (const auto& cls : classes) {
    const bool forced = fixed.contains(cls.front());
    w_min.push_back(forced ? static_cast<int>(cls.size()) : 0);
    w_max.push_back(static_cast<int>(cls.size()));
  }

  std::vector<HistoryStep> out;
  choose_by_class(classes, w_min, w_max, history.k, history.k, [&](CandidateSet committee) {
    std::vector<CandidateSet> refined_sets = sets;
    refined_sets.push_back(committee);
    const auto refined = indistinguishable_classes(history.m, refined_sets);
    std::vector<int> t_min(refined.size(), 0), t_max;
    for (const auto& cls : refined) t_max.push_back(static_cast<int>(cls.size()));
    choose_by_class(refined, t_min, t_max, 1, history.k, [&](CandidateSet deviation) {
      if (!deviation.subset_of(committee)) out.push_back({committee, deviation});
    });
  });
  return out;
}

bool excluded_at_first_step(const HistoryStep& step) {
  return !step.deviation.intersects(step.committee) || (step.deviation - step.committee).size() <= 1;
}

HistoryVerdict classify_history(const History& history, const lp::SolveOptions& options) {
  const lp::LinearSystem system = history_system(history);
  HistoryVerdict verdict{history, std::nullopt, std::nullopt};
  auto result = lp::solve_feasibility(system, options);
  if (auto* feasible = std::get_if<lp::Feasible>(&result)) {
    std::vector<Ballot> witness;
    for (lp::Index j = 0; j < feasible->assignment.size(); ++j) {
      if (!feasible->assignment(j).is_zero()) witness.push_back({system.labels()[static_cast<std::size_t>(j)], feasible->assignment(j)});
    }
    verdict.witness = std::move(witness);
  } else {
    verdict.certificate = std::move(std::get<lp::Infeasible>(result).certificate);
  }
  return verdict;
}

namespace {

std::vector<HistoryVerdict> solve_level(const std::vector<History>& candidates, const EnumerationOptions& options,
                                        std::chrono::steady_clock::time_point start, bool& out_of_budget) {
  std::vector<std::optional<HistoryVerdict>> slots(candidates.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  auto worker = [&] {
    while (!stop) {
      const std::size_t i = next.fetch_add(1);
      if (i >= candidates.size()) return;
      if (options.budget && std::chrono::steady_clock::now() - start > *options.budget) {
        stop = true;
        return;
      }
      slots[i] = classify_history(candidates[i]);
    }
  };
  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  out_of_budget = stop;
  std::vector<HistoryVerdict> out;
  for (auto& slot : slots) {
    if (slot) out.push_back(std::move(*slot));
  }
  return out;
}

}  // namespace

EnumerationResult enumerate_histories(int m, int k, const EnumerationOptions& options) {
  if (m < 1 || m > 24 || k < 1 || k > m) throw std::invalid_argument("enumeration needs 1 <= k <= m <= 24");
  const auto start = std::chrono::steady_clock::now();
  EnumerationResult result;
  result.m = m;
  result.k = k;
  std::vector<History> frontier{History{m, k, {}}};
  result.histories = frontier;

  while (!frontier.empty()) {
    std::vector<History> candidates;
    for (const History& h : frontier) {
      for (const HistoryStep& step : canonical_continuations(h)) candidates.push_back(h.extended(step));
    }
    bool out_of_budget = false;
    std::vector<HistoryVerdict> verdicts = solve_level(candidates, options, start, out_of_budget);
    result.lp_solves += verdicts.size();
    frontier.clear();
    for (HistoryVerdict& v : verdicts) {
      if (options.on_verdict) options.on_verdict(v);
      if (v.is_history()) {
        if (v.history.total_deviation_size() > k) result.proposition1_failures.push_back(v.history);
        frontier.push_back(v.history);
      } else {
        result.certificates.emplace_back(std::move(v.history), std::move(*v.certificate));
      }
    }
    result.histories.insert(result.histories.end(), frontier.begin(), frontier.end());
    if (out_of_budget) {
      result.complete = false;
      break;
    }
  }

  for (const auto& [history, certificate] : result.certificates) {
    if (!lp::verify_farkas(history_system(history), certificate)) {
      throw std::logic_error("certificate failed re-verification for " + history.str());
    }
  }
  return result;
}

bool check_proposition1(const std::vector<History>& histories, int k) {
  return std::all_of(histories.begin(), histories.end(),
                     [k](const History& h) { return h.total_deviation_size() <= k; });
}

}  // namespace corevote::proof
