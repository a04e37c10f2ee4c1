#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "meridian/harness.hpp"
#include "meridian_cli/cli.hpp"

using meridian::cli::kExitFail;
using meridian::cli::kExitPass;
using meridian::cli::kExitUsage;
using meridian::cli::run_cli;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "meridian_cli_test") {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("verify exit codes") {
  const TempDir dir;
  const Run ok = run({"verify", "--theorem", "quasi-a", "--a", "1", "--c", "2", "--f0", "3", "--report",
                      dir.file("q.json")});
  CHECK(ok.code == kExitPass);
  const auto report = nlohmann::json::parse(slurp(dir.file("q.json")));
  CHECK(report["status"] == "pass");
  CHECK(report["schema"] == 1);

  const Run stdout_report = run({"verify", "--theorem", "minimal-a"});
  CHECK(stdout_report.code == kExitPass);
  CHECK(nlohmann::json::parse(stdout_report.out)["status"] == "pass");

  CHECK(run({"verify", "--theorem", "negative-control"}).code == kExitFail);
  CHECK(run({"verify", "--theorem", "quasi-a", "--kappa", "1.5"}).code == kExitFail);
}

TEST_CASE("usage and domain errors exit with 2") {
  const Run unknown = run({"verify", "--bogus"});
  CHECK(unknown.code == kExitUsage);
  CHECK(unknown.err.find("--theorem") != std::string::npos);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"verify", "--theorem", "minimal-q"}).code == kExitUsage);
  CHECK(run({"verify", "--theorem", "minimal-a", "--a", "1x"}).code == kExitUsage);
  CHECK(run({"verify", "--theorem", "minimal-b", "--a", "1", "--b", "2"}).code == kExitUsage);
  CHECK(run({"verify", "--theorem", "quasi-a", "--a", "0"}).code == kExitUsage);
  CHECK(run({"verify", "--theorem", "minimal-a", "--nu", "3"}).code == kExitUsage);
  CHECK(run({"verify", "--theorem", "quasi-a", "--branch-signs", "+"}).code == kExitUsage);
  CHECK(run({"--version"}).code == kExitPass);
}

TEST_CASE("generate writes meshes") {
  const TempDir dir;
  const Run csv = run({"generate", "--family", "ma", "--theorem", "minimal-a", "--a", "0", "--b", "1", "--out",
                       dir.file("m.csv")});
  CHECK(csv.code == kExitPass);
  const std::string text = slurp(dir.file("m.csv"));
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 21 * 21);
  CHECK(text.rfind("u,v,x1,x2,x3,x4\n", 0) == 0);

  CHECK(run({"generate", "--theorem", "minimal-c", "--nu", "6", "--nv", "5", "--out", dir.file("m.obj")}).code ==
        kExitPass);
  const std::string obj = slurp(dir.file("m.obj"));
  CHECK(std::count(obj.begin(), obj.end(), 'f') >= 2 * 5 * 4);

  CHECK(run({"generate", "--theorem", "congruence", "--family", "mpp", "--format", "json", "--out",
             dir.file("t.json")})
            .code == kExitPass);
  CHECK(nlohmann::json::parse(slurp(dir.file("t.json")))["name"] == "tilde-prime");

  CHECK(run({"generate", "--theorem", "minimal-a", "--format", "stl"}).code == kExitUsage);
  CHECK(run({"generate", "--theorem", "minimal-a", "--out", dir.file("no/such/dir.csv")}).code == kExitUsage);
  CHECK(run({"generate", "--family", "mb", "--theorem", "minimal-a"}).code == kExitUsage);
}

TEST_CASE("case files and flag overrides") {
  const TempDir dir;
  meridian::CaseSpec spec = meridian::default_case(meridian::Theorem::QuasiB);
  spec.seed = 9;
  std::ofstream(dir.file("case.json")) << meridian::case_to_json(spec);
  const Run a = run({"verify", "--case", dir.file("case.json"), "--report", dir.file("a.json")});
  CHECK(a.code == kExitPass);
  const auto ra = nlohmann::json::parse(slurp(dir.file("a.json")));
  CHECK(ra["case"]["seed"] == 9);
  CHECK(ra["case"]["theorem"] == "quasi-b");

  CHECK(run({"verify", "--case", dir.file("case.json"), "--seed", "10", "--report", dir.file("b.json")}).code ==
        kExitPass);
  CHECK(nlohmann::json::parse(slurp(dir.file("b.json")))["case"]["seed"] == 10);
  CHECK(run({"verify", "--case", dir.file("missing.json")}).code == kExitUsage);
}

TEST_CASE("reports are byte identical apart from timing") {
  auto strip = [](const std::string& s) {
    auto j = nlohmann::json::parse(s);
    j.erase("timing");
    return j.dump();
  };
  const Run a = run({"verify", "--theorem", "cmc-a", "--seed", "3"});
  const Run b = run({"verify", "--theorem", "cmc-a", "--seed", "3"});
  CHECK(a.code == kExitPass);
  CHECK(strip(a.out) == strip(b.out));
}

TEST_CASE("sweep and theorems") {
  const TempDir dir;
  const Run s = run({"sweep", "--theorem", "minimal-a", "--b", "1,2", "--a", "0,0.1", "--nu", "7", "--nv", "7",
                     "--report", dir.file("s.json")});
  CHECK(s.code == kExitPass);
  CHECK(s.out.find("4/4 passed") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(dir.file("s.json")));
  CHECK(j["cases"].size() == 4);

  CHECK(run({"sweep", "--theorem", "quasi-a", "--kappa", "1,1.5", "--nu", "7", "--nv", "7"}).code == kExitFail);

  const Run t = run({"theorems", "--report", dir.file("t.json")});
  CHECK(t.code == kExitPass);
  CHECK(nlohmann::json::parse(slurp(dir.file("t.json")))["summary"]["ok"] == true);
}
