#include <doctest.h>

#include <filesystem>
#include <random>
#include <variant>

#include "corevote/io.hpp"
#include "corevote/lp/solver.hpp"
#include "corevote/proof/program3.hpp"
#include "support.hpp"

using namespace testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "corevote_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("candidate lists") {
  CHECK(io::parse_candidates("c1,c2,c5-c10", 10) == C({1, 2, 5, 6, 7, 8, 9, 10}));
  CHECK(io::parse_candidates("1, 3", 3) == C({1, 3}));
  CHECK_THROWS_AS(io::parse_candidates("1,11", 10), io::InputError);
  CHECK_THROWS_AS(io::parse_candidates("1,1", 10), io::InputError);
  CHECK_THROWS_AS(io::parse_candidates("x", 10), io::InputError);
  CHECK_THROWS_AS(io::parse_candidates("3-1", 10), io::InputError);
  CHECK(io::encode_indices(C({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 14, 15})) == "1-11.14-15");
  CHECK(io::encode_indices(C({1, 14, 15})) == "1.14-15");
  CHECK(io::to_indices(C({2, 5})) == std::vector<int>{2, 5});
}

TEST_CASE("profile files round-trip and validate") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    io::ProfileFile file;
    file.m = 3 + trial % 6;
    file.k = 1 + trial % file.m;
    const Profile p = random_profile(rng, file.m, 6);
    for (const Ballot& b : p.ballots()) file.ballots.push_back({io::to_indices(b.approvals), b.weight, std::nullopt});
    const auto path = scratch("profile.json");
    io::write_profile_file(path, file);
    const auto back = io::read_profile_file(path);
    REQUIRE(back == file);
    CHECK(io::to_instance(back).profile() == p);
  }

  const auto counts = io::read_profile_file(std::string(COREVOTE_DATA_DIR) + "/example1.json");
  CHECK(counts.ballots[0].count == 1L);
  io::write_profile_file(scratch("counts.json"), counts);
  CHECK(io::read_profile_file(scratch("counts.json")) == counts);

  auto bad = counts;
  bad.ballots[0].approve = {11};
  CHECK_THROWS_AS(io::to_instance(bad), io::InputError);
  bad = counts;
  bad.ballots[0].weight = Rational(1, 4);
  CHECK_THROWS_AS(io::to_instance(bad), io::InputError);
  bad = counts;
  bad.ballots[0].approve.clear();
  CHECK_THROWS_AS(io::to_instance(bad), io::InputError);
  bad = counts;
  bad.k = 11;
  CHECK_THROWS_AS(io::to_instance(bad), io::InputError);
  io::ProfileFile weights{3, 1, {{{1}, Rational(1, 2), std::nullopt}, {{2}, Rational(1, 3), std::nullopt}}};
  CHECK_THROWS_AS(io::to_instance(weights), io::InputError);

  CHECK_THROWS_AS(io::profile_from_json(nlohmann::json::parse(R"({"m": 3})")), io::InputError);
  CHECK_THROWS_AS(io::profile_from_json(nlohmann::json::parse(R"({"m":3,"k":1,"ballots":[{"approve":[1],"weight":"0.5"}]})")),
                  io::InputError);
  CHECK_THROWS_AS(io::read_profile_file(scratch("missing.json")), io::InputError);
}

TEST_CASE("certificate files round-trip and reconstruct") {
  const proof::DeviationShape shape{2, 1};
  const auto system = proof::build_program3(3, shape);
  const auto verdict = lp::solve_feasibility(system);
  REQUIRE(std::holds_alternative<lp::Infeasible>(verdict));
  const auto file = io::make_program3_certificate(3, shape, std::get<lp::Infeasible>(verdict).certificate);
  CHECK(io::certificate_filename(file) == "program3_k3_size2_overlap1.cert.json");
  const auto path = scratch(io::certificate_filename(file));
  io::write_certificate_file(path, file);
  const auto back = io::read_certificate_file(path);
  REQUIRE(back == file);
  const auto rebuilt = io::reconstruct_system(back);
  CHECK(rebuilt.num_rows() == system.num_rows());
  CHECK(lp::verify_farkas(rebuilt, io::padded_certificate(back, rebuilt)));

  auto tampered = back;
  tampered.multipliers.front() += 1;
  CHECK_FALSE(lp::verify_farkas(rebuilt, io::padded_certificate(tampered, rebuilt)));

  const proof::History h{6, 4, {{Cr(1, 4), C({1, 5})}}};
  const auto v = proof::classify_history(h);
  REQUIRE(v.certificate);
  const auto hf = io::make_history_certificate(h, *v.certificate);
  CHECK(io::certificate_filename(hf) == "m6_k4__W1-4_T1.5.cert.json");
  io::write_certificate_file(scratch(io::certificate_filename(hf)), hf);
  const auto hb = io::read_certificate_file(scratch(io::certificate_filename(hf)));
  CHECK(hb == hf);
  CHECK(hb.history() == h);
  const auto hs = io::reconstruct_system(hb);
  CHECK(lp::verify_farkas(hs, io::padded_certificate(hb, hs)));

  CHECK_THROWS_AS(io::certificate_from_json(nlohmann::json::parse(R"({"kind":"other","k":2,"multipliers":[]})")),
                  io::InputError);
  CHECK_THROWS_AS(io::certificate_from_json(nlohmann::json::parse(
                      R"({"kind":"program3","k":2,"shape":{"size":1,"overlap":0},"multipliers":["-1"]})")),
                  io::InputError);
}
