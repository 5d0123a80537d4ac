#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tightpack/cli.hpp"

namespace fs = std::filesystem;
using tightpack::kExitFailed;
using tightpack::kExitInvalid;
using tightpack::kExitOk;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = tightpack::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("tightpack_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int count_data_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  std::getline(in, line);  // header
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++n;
  return n;
}

}  // namespace

TEST_CASE("gen writes the complete 3-graph on 8 vertices") {
  TempDir dir("gen");
  const Outcome o = cli({"gen", "--n", "8", "--p", "1", "--out", dir / "k8.txt"});
  REQUIRE(o.code == kExitOk);
  const std::string text = slurp(dir / "k8.txt");
  CHECK(text.rfind("format=3graph n=8\n", 0) == 0);
  CHECK(count_data_lines(text) == 56);

  CHECK(cli({"gen", "--n", "8", "--p", "1.5"}).code == kExitInvalid);
  CHECK(cli({"gen", "--n", "2", "--p", "0.5"}).code == kExitInvalid);
  CHECK(cli({"gen", "--p", "0.5"}).code == kExitInvalid);
  CHECK(cli({"frobnicate"}).code == kExitInvalid);
}

TEST_CASE("pack-3graph then verify, and tampering is caught") {
  TempDir dir("pack");
  REQUIRE(cli({"gen", "--n", "8", "--p", "1", "--out", dir / "k8.txt"}).code == kExitOk);
  const std::vector<std::string> pack = {"pack-3graph", "--in",     dir / "k8.txt", "--profile", "desk",
                                         "--seed",      "1",        "--out",        dir / "c.txt", "--report",
                                         dir / "r.json"};
  const Outcome o = cli(pack);
  REQUIRE(o.code == kExitOk);
  const auto report = nlohmann::json::parse(slurp(dir / "r.json"));
  CHECK(report["certification"]["certified"] == true);
  CHECK(report["cycles"].get<int>() >= 1);
  for (const char* key : {"n", "rounds", "cycles", "covered_edges", "coverage_fraction", "schedule", "diagnostics"})
    CHECK(report.contains(key));

  const std::string first_report = slurp(dir / "r.json"), first_cycles = slurp(dir / "c.txt");
  REQUIRE(cli(pack).code == kExitOk);
  CHECK(slurp(dir / "r.json") == first_report);
  CHECK(slurp(dir / "c.txt") == first_cycles);

  const Outcome ok = cli({"verify", "--graph", dir / "k8.txt", "--cycles", dir / "c.txt"});
  CHECK(ok.code == kExitOk);

  // The first cycle listed twice shares all of its edges with itself.
  std::istringstream in(first_cycles);
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  spit(dir / "bad.txt", header + "\n" + line + "\n" + line + "\n");
  const Outcome bad = cli({"verify", "--graph", dir / "k8.txt", "--cycles", dir / "bad.txt"});
  CHECK(bad.code == kExitFailed);
  CHECK(bad.err.find("share edge") != std::string::npos);
  const auto bad_report = nlohmann::json::parse(bad.out);
  CHECK(bad_report["certified"] == false);
  CHECK_FALSE(bad_report["violations"].empty());

  spit(dir / "short.txt", header + "\n0 1 2\n");
  CHECK(cli({"verify", "--graph", dir / "k8.txt", "--cycles", dir / "short.txt"}).code != kExitOk);
}

TEST_CASE("malformed input reports its line number") {
  TempDir dir("parse");
  spit(dir / "bad.txt", "format=3graph n=6\n0 1 2\n# fine\n3 4\n");
  const Outcome o = cli({"pack-3graph", "--in", dir / "bad.txt"});
  CHECK(o.code == kExitInvalid);
  CHECK(o.err.find("bad.txt:4:") != std::string::npos);
  CHECK(cli({"pack-3graph", "--in", dir / "missing.txt"}).code == kExitInvalid);
}

TEST_CASE("flag combinations") {
  TempDir dir("flags");
  REQUIRE(cli({"gen", "--kind", "digraph", "--n", "8", "--p", "0.9", "--out", dir / "d.txt"}).code == kExitOk);
  CHECK(cli({"pack-digraph", "--in", dir / "d.txt", "--profile", "paper", "--kappa", "2"}).code == kExitInvalid);
  CHECK(cli({"pack-digraph", "--in", dir / "d.txt", "--kappa", "0.5"}).code == kExitInvalid);
  CHECK(cli({"pack-digraph", "--in", dir / "d.txt", "--r", "0"}).code == kExitInvalid);
  CHECK(cli({"pack-digraph", "--in", dir / "d.txt", "--profile", "lab"}).code == kExitInvalid);
  // The analytic schedule needs ~1e9 copies per round here: refused.
  const Outcome paper = cli({"pack-digraph", "--in", dir / "d.txt", "--profile", "paper"});
  CHECK(paper.code == kExitInvalid);
  CHECK(paper.err.find("refused") != std::string::npos);

  const Outcome desk = cli({"pack-digraph", "--in", dir / "d.txt", "--seed", "3"});
  CHECK(desk.code == kExitOk);
  const auto j = nlohmann::json::parse(desk.out);
  for (const char* key : {"n", "rounds", "cycles", "covered_arcs", "coverage_fraction", "schedule"})
    CHECK(j.contains(key));
  CHECK(j["schedule"]["variant"] == "fixed-kappa");
}

TEST_CASE("degenerate inputs") {
  TempDir dir("degenerate");
  spit(dir / "odd_d.txt", "format=digraph n=7\n0 1\n");
  CHECK(cli({"pack-digraph", "--in", dir / "odd_d.txt"}).code == kExitInvalid);
  spit(dir / "odd_h.txt", "format=3graph n=7\n0 1 2\n");
  CHECK(cli({"pack-3graph", "--in", dir / "odd_h.txt"}).code == kExitInvalid);
  REQUIRE(cli({"gen", "--n", "10", "--p", "0.5", "--out", dir / "h10.txt"}).code == kExitOk);
  const Outcome mod2 = cli({"pack-3graph", "--in", dir / "h10.txt"});
  CHECK(mod2.code == kExitInvalid);
  CHECK(mod2.err.find("divisible by 4") != std::string::npos);
  const Outcome soft = cli({"pack-3graph", "--in", dir / "h10.txt", "--require-div4", "false"});
  CHECK(soft.code == kExitOk);
  CHECK(nlohmann::json::parse(soft.out)["cycles"] == 0);

  spit(dir / "empty_h.txt", "format=3graph n=8\n");
  const Outcome eh = cli({"pack-3graph", "--in", dir / "empty_h.txt"});
  CHECK(eh.code == kExitOk);
  CHECK(nlohmann::json::parse(eh.out)["cycles"] == 0);
  spit(dir / "empty_d.txt", "format=digraph n=8\n");
  CHECK(cli({"pack-digraph", "--in", dir / "empty_d.txt"}).code == kExitOk);
}

TEST_CASE("check exit codes follow the verdict") {
  TempDir dir("check");
  REQUIRE(cli({"gen", "--n", "12", "--p", "1", "--out", dir / "k.txt"}).code == kExitOk);
  CHECK(cli({"check", "--in", dir / "k.txt", "--epsilon", "0.9", "--p", "1"}).code == kExitOk);
  CHECK(cli({"check", "--in", dir / "k.txt", "--epsilon", "0.01", "--p", "0.5"}).code == kExitFailed);
  const Outcome o = cli({"check", "--in", dir / "k.txt", "--epsilon", "0.9", "--p", "1", "--mode", "exhaustive",
                         "--site-budget", "10"});
  CHECK(o.code == kExitInvalid);
}

TEST_CASE("pack-bipartite and diagnose") {
  TempDir dir("misc");
  REQUIRE(cli({"gen", "--kind", "bipartite", "--n", "6", "--p", "1", "--out", dir / "b.txt"}).code == kExitOk);
  const Outcome o = cli({"pack-bipartite", "--in", dir / "b.txt", "--out", dir / "m.txt"});
  REQUIRE(o.code == kExitOk);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["k"] == 6);
  CHECK(j["leftover_fraction"] == 0.0);
  const std::string matchings = slurp(dir / "m.txt");
  CHECK(matchings.find("matching 5") != std::string::npos);

  const Outcome s = cli({"diagnose", "--what", "schedule", "--kind", "hypergraph", "--n", "100", "--epsilon", "0.5",
                         "--p", "0.5", "--rows", "3"});
  REQUIRE(s.code == kExitOk);
  CHECK(nlohmann::json::parse(s.out)["steps"].size() == 3);
  CHECK(cli({"diagnose", "--what", "census", "--n", "40", "--r", "10"}).code == kExitOk);
  CHECK(cli({"diagnose", "--what", "census", "--n", "41", "--r", "10"}).code == kExitInvalid);
}

TEST_CASE("default seed comes from the environment") {
  ::setenv(tightpack::kSeedEnvVar, "12345", 1);
  const Outcome a = cli({"gen", "--n", "9", "--p", "0.5"});
  const Outcome b = cli({"gen", "--n", "9", "--p", "0.5", "--seed", "12345"});
  CHECK(a.out == b.out);
  ::setenv(tightpack::kSeedEnvVar, "twelve", 1);
  CHECK(cli({"gen", "--n", "9", "--p", "0.5"}).code == kExitInvalid);
  ::unsetenv(tightpack::kSeedEnvVar);
}
