#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(COREVOTE_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(COREVOTE_DATA_DIR) + "/" + name; }

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "corevote_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("verify-core") {
  auto r = run("--json verify-core " + data("example1.json") + " --committee c1,c2,c5-c10 --quota hare");
  CHECK(r.code == 1);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["deviation"]["T"] == std::vector<int>{1, 2, 3, 4});
  CHECK(j["deviation"]["support"] == "1/2");

  r = run("verify-core " + data("example1.json") + " --committee c1,c2,c3,c5-c9 --quota hare");
  CHECK(r.code == 0);
  CHECK(r.out.find("stable") != std::string::npos);

  r = run("--json verify-core " + data("example2_droop.json") + " --committee c1,c2,c5-c8 --quota droop");
  CHECK(r.code == 1);
  j = nlohmann::json::parse(r.out);
  CHECK(j["deviation"]["support"] == "7/12");
  CHECK(j["deviation"]["T"] == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("input errors exit with 2") {
  CHECK(run("verify-core " + data("missing.json") + " --committee 1").code == 2);
  CHECK(run("verify-core " + data("example1.json") + " --committee c1,c2").code == 2);
  CHECK(run("verify-core " + data("example1.json") + " --committee c1-c8 --quota other").code == 2);
  const auto dir = fresh_dir("bad");
  std::ofstream(dir / "bad.json") << R"({"m": 3, "k": 1, "ballots": [{"approve": [4], "count": 1}]})";
  CHECK(run("rule " + (dir / "bad.json").string()).code == 2);
  std::ofstream(dir / "garbage.json") << "{ not json";
  CHECK(run("rule " + (dir / "garbage.json").string()).code == 2);
  CHECK(run("prove --mode histories --k 3").code == 2);
  CHECK(run("no-such-command").code == 2);
}

TEST_CASE("rule") {
  auto r = run("--json rule " + data("example1.json") + " --rule recursive-pav --quota hare");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "success");
  const auto committee = j["committee"].get<std::vector<int>>();
  for (int c : {1, 2, 3, 4}) CHECK(std::find(committee.begin(), committee.end(), c) != committee.end());
  CHECK(j["trace"].size() == 1);

  r = run("--json rule " + data("example_k9.json") + " --rule pav-global");
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  REQUIRE(j["committees"].size() == 1);
  CHECK(j["committees"][0]["committee"] == std::vector<int>{1, 2, 5, 6, 7, 8, 9, 10, 11});
  CHECK(j["committees"][0]["score"] == "59/28");

  const auto dir = fresh_dir("single");
  std::ofstream(dir / "single.json") << R"({"m": 5, "k": 2, "ballots": [{"approve": [2, 4, 5], "weight": "1"}]})";
  r = run("--json rule " + (dir / "single.json").string() + " --rule pav-local");
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  const auto w = j["committee"].get<std::vector<int>>();
  CHECK(w.size() == 2);
  for (int c : w) CHECK((c == 2 || c == 4 || c == 5));
}

TEST_CASE("prove inequality") {
  auto r = run("--json prove --mode inequality --k 7");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["violations"].empty());
  r = run("--json prove --mode inequality --k 8");
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE_FALSE(j["violations"].empty());
  for (const auto& v : j["violations"]) {
    CHECK(v["size"] == 4);
    CHECK(v["overlap"] == 2);
  }
}

TEST_CASE("prove and check certificate bundles") {
  const auto dir = fresh_dir("program3");
  auto r = run("prove --mode program3 --k 4 --out " + dir.string());
  CHECK(r.code == 0);
  r = run("--json check-certificates " + dir.string());
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["checked"] == 10);
  CHECK(j["failed"] == 0);

  const fs::path victim = dir / "program3_k4_size3_overlap1.cert.json";
  auto cert = nlohmann::json::parse(std::ifstream(victim));
  auto& mult = cert["multipliers"];
  for (auto& v : mult) {
    if (v != "0") {
      v = std::to_string(std::stol(v.get<std::string>()) + 1);
      break;
    }
  }
  std::ofstream(victim) << cert.dump();
  std::ofstream(dir / "broken.cert.json") << "{}";
  r = run("--json check-certificates " + dir.string());
  CHECK(r.code == 1);
  j = nlohmann::json::parse(r.out);
  CHECK(j["failed"] == 2);
  for (const auto& f : j["files"]) {
    const bool bad = f["file"] == "program3_k4_size3_overlap1.cert.json" || f["file"] == "broken.cert.json";
    CHECK(f["ok"] == !bad);
  }

  const auto hist = fresh_dir("histories");
  r = run("--json prove --mode histories --m 9 --k 7 --out " + hist.string());
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["proposition1"] == true);
  CHECK(j["complete"] == true);
  CHECK(fs::exists(hist / "histories.json"));
  r = run("--json check-certificates " + hist.string());
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["checked"] == j["certificate_count"]);

  const auto empty = fresh_dir("empty");
  CHECK(run("check-certificates " + empty.string()).code == 0);
  CHECK(run("check-certificates " + (empty / "nope").string()).code == 2);
}

TEST_CASE("budget exhaustion exits with 3") {
  const auto dir = fresh_dir("budget");
  auto r = run("--json --budget-seconds 0.000001 prove --mode program3 --k 6 --out " + dir.string());
  CHECK(r.code == 3);
  CHECK(nlohmann::json::parse(r.out)["complete"] == false);
  r = run("--json --budget-seconds 0.000001 prove --mode histories --m 10 --k 8");
  CHECK(r.code == 3);
}
