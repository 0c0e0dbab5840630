#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "corevote/io.hpp"
#include "corevote/pav.hpp"
#include "corevote/proof/history.hpp"
#include "corevote/proof/program3.hpp"
#include "corevote/proof/shapes.hpp"
#include "corevote/rules.hpp"
#include "corevote/stability.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace corevote;

namespace {

enum ExitCode { kOk = 0, kClaimFails = 1, kInputError = 2, kBudgetExceeded = 3 };

struct Globals {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::optional<double> budget_seconds;
  bool json = false;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::optional<Clock::duration> budget_of(const Globals& g) {
  if (!g.budget_seconds) return std::nullopt;
  return std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*g.budget_seconds));
}

Quota parse_quota(const std::string& s) { return s == "droop" ? Quota::Droop : Quota::Hare; }

json history_json(const proof::History& h) {
  json steps = json::array();
  for (const auto& s : h.steps) steps.push_back({{"W", io::to_indices(s.committee)}, {"T", io::to_indices(s.deviation)}});
  return steps;
}

void emit(const Globals& g, const json& report, const std::string& text) {
  if (g.json) {
    std::cout << report.dump(1) << '\n';
  } else {
    std::cout << text;
  }
}

int cmd_verify_core(const Globals& g, const std::string& path, const std::string& committee_text,
                    const std::string& quota_text) {
  const ElectionInstance instance = io::to_instance(io::read_profile_file(path));
  const CandidateSet committee = io::parse_candidates(committee_text, instance.m());
  if (committee.size() != instance.k()) throw io::InputError("committee must have exactly k members");
  const Quota quota = parse_quota(quota_text);
  const auto found = find_deviation(instance, committee, quota);

  json report{{"committee", io::to_indices(committee)}, {"quota", to_string(quota)}, {"stable", !found}};
  std::string text;
  if (!found) {
    text = "stable: no successful deviation from " + committee.str() + " under the " + to_string(quota) + " quota\n";
  } else {
    json supporters = json::array();
    for (CandidateSet a : found->supporters) supporters.push_back(io::to_indices(a));
    report["deviation"] = {{"T", io::to_indices(found->deviation)},
                           {"support", found->support.str()},
                           {"threshold", found->threshold.str()},
                           {"supporters", supporters}};
    text = "deviation found: T = " + found->deviation.str() + "\n  support   " + found->support.str() +
           "\n  threshold " + found->threshold.str() + "\n  supporters";
    for (CandidateSet a : found->supporters) text += " " + a.str();
    text += '\n';
  }
  emit(g, report, text);
  return found ? kClaimFails : kOk;
}

int prove_inequality(const Globals& g, int k, const std::optional<fs::path>& out) {
  const auto violations = proof::inequality_scan(k);
  json list = json::array();
  std::string text = "inequality scan k=" + std::to_string(k) + ": " + std::to_string(violations.size()) +
                     " violation(s)\n";
  for (const auto& v : violations) {
    list.push_back({{"size", v.shape.size},
                    {"overlap", v.shape.overlap},
                    {"a", v.a},
                    {"b", v.b},
                    {"c", v.c},
                    {"delta", v.delta.str()},
                    {"bound", v.bound.str()}});
    text += "  shape (" + std::to_string(v.shape.size) + "," + std::to_string(v.shape.overlap) + ") a=" +
            std::to_string(v.a) + " b=" + std::to_string(v.b) + " c=" + std::to_string(v.c) + " delta " +
            v.delta.str() + " <= " + v.bound.str() + '\n';
  }
  json report{{"mode", "inequality"}, {"k", k}, {"violations", list}, {"holds", violations.empty()}};
  if (out) {
    fs::create_directories(*out);
    std::ofstream(*out / "inequality.json") << report.dump(1) << '\n';
  }
  emit(g, report, text);
  return violations.empty() ? kOk : kClaimFails;
}

int prove_program3(const Globals& g, int k, const std::optional<fs::path>& out) {
  if (k < 1 || k > 40) throw io::InputError("k out of range for the shape program");
  const auto start = Clock::now();
  const auto budget = budget_of(g);
  if (out) fs::create_directories(*out);
  json shapes = json::array();
  std::string text;
  bool all_infeasible = true;
  bool complete = true;
  for (const auto shape : proof::deviation_shapes(k)) {
    if (budget && Clock::now() - start > *budget) {
      complete = false;
      break;
    }
    const auto system = proof::build_program3(k, shape);
    const auto verdict = lp::solve_feasibility(system);
    json entry{{"size", shape.size}, {"overlap", shape.overlap}};
    std::string line = "  shape (" + std::to_string(shape.size) + "," + std::to_string(shape.overlap) + ") ";
    if (const auto* inf = std::get_if<lp::Infeasible>(&verdict)) {
      const auto file = io::make_program3_certificate(k, shape, inf->certificate);
      entry["verdict"] = "infeasible";
      entry["certificate"] = io::certificate_filename(file);
      if (out) io::write_certificate_file(*out / io::certificate_filename(file), file);
      line += "infeasible, certificate support " + std::to_string(inf->certificate.support_size());
    } else {
      all_infeasible = false;
      entry["verdict"] = "feasible";
      line += "FEASIBLE";
      if (k == 8 && shape == proof::DeviationShape{4, 2}) {
        const auto& x = std::get<lp::Feasible>(verdict).assignment;
        std::vector<Ballot> ballots;
        for (lp::Index j = 0; j < x.size(); ++j) {
          if (!x[j].is_zero()) ballots.push_back({CandidateSet(static_cast<std::uint64_t>(j + 1)), x[j]});
        }
        const auto h = proof::program3_history(k, shape);
        const bool structure = proof::verify_lemma2_structure(Profile::from_weights(h.m, ballots),
                                                              h.steps[0].committee, h.steps[0].deviation);
        entry["lemma2_structure"] = structure;
        line += structure ? " (witness has the forced structure)" : " (witness lacks the forced structure)";
      }
    }
    shapes.push_back(entry);
    text += line + '\n';
  }
  const bool holds = all_infeasible && complete;
  json report{{"mode", "program3"}, {"k", k}, {"shapes", shapes}, {"complete", complete}, {"holds", holds},
              {"seconds", seconds_since(start)}};
  if (out) std::ofstream(*out / "program3.json") << report.dump(1) << '\n';
  text = "shape program k=" + std::to_string(k) + (complete ? "" : " (budget exhausted, partial)") + '\n' + text;
  emit(g, report, text);
  if (!complete) return kBudgetExceeded;
  return all_infeasible ? kOk : kClaimFails;
}

int prove_histories(const Globals& g, int m, int k, const std::optional<fs::path>& out) {
  if (m < 1 || m > 24 || k < 1 || k > m) throw io::InputError("need 1 <= k <= m <= 24");
  const auto start = Clock::now();
  proof::EnumerationOptions options;
  options.threads = g.threads;
  options.budget = budget_of(g);
  std::map<proof::History, std::vector<Ballot>> witnesses;
  options.on_verdict = [&](const proof::HistoryVerdict& v) {
    if (v.witness) witnesses.emplace(v.history, *v.witness);
  };
  const auto result = proof::enumerate_histories(m, k, options);
  const bool prop1 = proof::check_proposition1(result.histories, k);

  json histories = json::array();
  std::string text;
  for (const auto& h : result.histories) {
    json entry{{"steps", history_json(h)}, {"total_deviation_size", h.total_deviation_size()}};
    if (auto it = witnesses.find(h); it != witnesses.end()) {
      json w = json::array();
      for (const auto& b : it->second) w.push_back({{"approve", io::to_indices(b.approvals)}, {"weight", b.weight.str()}});
      entry["witness"] = w;
    }
    histories.push_back(entry);
    text += "  " + (h.steps.empty() ? std::string("(empty)") : h.str()) + '\n';
  }
  if (out) {
    fs::create_directories(*out);
    for (const auto& [h, cert] : result.certificates) {
      const auto file = io::make_history_certificate(h, cert);
      io::write_certificate_file(*out / io::certificate_filename(file), file);
    }
  }
  json failures = json::array();
  for (const auto& h : result.proposition1_failures) failures.push_back(history_json(h));
  json report{{"mode", "histories"},
              {"m", m},
              {"k", k},
              {"complete", result.complete},
              {"histories", histories},
              {"history_count", result.histories.size()},
              {"certificate_count", result.certificates.size()},
              {"lp_solves", result.lp_solves},
              {"proposition1", prop1},
              {"proposition1_failures", failures},
              {"seconds", seconds_since(start)}};
  if (out) std::ofstream(*out / "histories.json") << report.dump(1) << '\n';
  text = "histories m=" + std::to_string(m) + " k=" + std::to_string(k) + ": " +
         std::to_string(result.histories.size()) + " (including the empty history), " +
         std::to_string(result.certificates.size()) + " rejected continuation(s), " +
         std::to_string(result.lp_solves) + " LP solve(s)" + (result.complete ? "" : ", budget exhausted (partial)") +
         '\n' + text + "total deviation size within k: " + (prop1 ? "yes" : "no") + '\n';
  emit(g, report, text);
  if (!result.complete) return kBudgetExceeded;
  return prop1 ? kOk : kClaimFails;
}

int cmd_check_certificates(const Globals& g, const fs::path& dir) {
  if (!fs::is_directory(dir)) throw io::InputError("not a directory: " + dir.string());
  const auto start = Clock::now();
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && name.ends_with(".cert.json")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<std::string> errors(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      try {
        const auto file = io::read_certificate_file(files[i]);
        const auto system = io::reconstruct_system(file);
        if (!lp::verify_farkas(system, io::padded_certificate(file, system))) errors[i] = "certificate does not verify";
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int n = std::max(1, std::min<int>(g.threads, static_cast<int>(files.size())));
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  }

  std::size_t failed = 0;
  json verdicts = json::array();
  std::string text;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const bool ok = errors[i].empty();
    failed += !ok;
    verdicts.push_back({{"file", files[i].filename().string()}, {"ok", ok}, {"error", errors[i]}});
    text += (ok ? "  ok    " : "  FAIL  ") + files[i].filename().string() + (ok ? "" : ": " + errors[i]) + '\n';
  }
  if (files.empty()) std::cerr << "warning: no *.cert.json files in " << dir.string() << '\n';
  const double secs = seconds_since(start);
  text += std::to_string(files.size() - failed) + " of " + std::to_string(files.size()) + " certificate(s) verified in " +
          std::to_string(secs) + " s\n";
  emit(g, {{"files", verdicts}, {"checked", files.size()}, {"failed", failed}, {"seconds", secs}}, text);
  return failed == 0 ? kOk : kClaimFails;
}

int cmd_rule(const Globals& g, const std::string& path, const std::string& rule, const std::string& quota_text) {
  const ElectionInstance instance = io::to_instance(io::read_profile_file(path));
  const auto& profile = instance.profile();
  json report{{"rule", rule}};
  std::string text;
  int code = kOk;
  if (rule == "pav-local") {
    const CandidateSet w = local_pav(instance);
    const Rational score = pav_score(profile, w);
    report["committee"] = io::to_indices(w);
    report["score"] = score.str();
    text = "local PAV committee " + w.str() + "  score " + score.str() + '\n';
  } else if (rule == "pav-global") {
    json list = json::array();
    const auto all = global_pav(instance);
    text = std::to_string(all.size()) + " global PAV committee(s)\n";
    for (CandidateSet w : all) {
      const Rational score = pav_score(profile, w);
      list.push_back({{"committee", io::to_indices(w)}, {"score", score.str()}});
      text += "  " + w.str() + "  score " + score.str() + '\n';
    }
    report["committees"] = list;
  } else {
    const Quota quota = parse_quota(quota_text);
    const RuleOutcome outcome = recursive_pav(instance, quota);
    json trace = json::array();
    text = "recursive PAV (" + std::string(to_string(quota)) + ")\n";
    int t = 1;
    for (const RuleStep& s : outcome.trace) {
      trace.push_back(
          {{"W", io::to_indices(s.committee)}, {"T", io::to_indices(s.deviation)}, {"support", s.support.str()}});
      text += "  W" + std::to_string(t) + " = " + s.committee.str() + "\n  T" + std::to_string(t) + " = " +
              s.deviation.str() + "  support " + s.support.str() + '\n';
      ++t;
    }
    const bool ok = outcome.status == RuleStatus::Success;
    report["quota"] = to_string(quota);
    report["status"] = ok ? "success" : "failed";
    report["trace"] = trace;
    report["committee"] = io::to_indices(outcome.committee);
    report["fixed"] = io::to_indices(outcome.fixed);
    if (ok) {
      const Rational score = pav_score(profile, outcome.committee);
      report["score"] = score.str();
      text += "final committee " + outcome.committee.str() + "  score " + score.str() + '\n';
    } else {
      text += "failed: fixed set " + outcome.fixed.str() + " exceeds k\n";
      code = kClaimFails;
    }
  }
  emit(g, report, text);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Core stability of approval-based committees: checks, rules, and LP proof search"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--budget-seconds", g.budget_seconds, "Wall-clock budget for proof search")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "Machine-readable output");

  const std::vector<std::string> quotas{"hare", "droop"};

  auto* verify = app.add_subcommand("verify-core", "Search for a successful deviation from a committee");
  std::string profile_path, committee, quota = "hare";
  verify->add_option("profile", profile_path, "Profile JSON file")->required();
  verify->add_option("--committee", committee, "Members, e.g. c1,c2,c5-c10")->required();
  verify->add_option("--quota", quota)->check(CLI::IsMember(quotas));

  auto* prove = app.add_subcommand("prove", "Run a proof search and write a certificate bundle");
  std::string mode;
  int k = 0, m = 0;
  std::optional<std::string> out;
  prove->add_option("--mode", mode)->required()->check(CLI::IsMember({"inequality", "program3", "histories"}));
  prove->add_option("--k", k)->required();
  prove->add_option("--m", m);
  prove->add_option("--out", out, "Bundle directory");

  auto* check = app.add_subcommand("check-certificates", "Verify every certificate in a bundle directory");
  std::string bundle;
  check->add_option("dir", bundle)->required();

  auto* rule_cmd = app.add_subcommand("rule", "Run a committee rule");
  std::string rule = "recursive-pav";
  rule_cmd->add_option("profile", profile_path, "Profile JSON file")->required();
  rule_cmd->add_option("--rule", rule)->check(CLI::IsMember({"pav-local", "pav-global", "recursive-pav"}));
  rule_cmd->add_option("--quota", quota)->check(CLI::IsMember(quotas));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*verify) return cmd_verify_core(g, profile_path, committee, quota);
    if (*prove) {
      const std::optional<fs::path> dir = out ? std::optional<fs::path>(*out) : std::nullopt;
      if (mode == "inequality") return prove_inequality(g, k, dir);
      if (mode == "program3") return prove_program3(g, k, dir);
      if (m == 0) throw io::InputError("--mode=histories needs --m");
      return prove_histories(g, m, k, dir);
    }
    if (*check) return cmd_check_certificates(g, bundle);
    return cmd_rule(g, profile_path, rule, quota);
  } catch (const io::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::length_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
