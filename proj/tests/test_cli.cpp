#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hvcheck/cli/commands.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hvcheck");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = hvcheck::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("count") {
  auto r = run({"count", "--p", "3"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "total = 590"));
  CHECK(contains(r.out, "S = -2"));
  r = run({"count", "--p", "3", "--power", "2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "total = 4860"));
  r = run({"count", "--p", "13", "--format", "csv", "--threads", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "p,power,t,q,S,solution_sum,total,trace\n13,1,-7,13,178,1906,10630,-242\n");
}

TEST_CASE("count errors") {
  auto r = run({"count", "--p", "5", "--t", "1/9"});
  CHECK(r.code != 0);
  CHECK(contains(r.err, "bad reduction"));
  CHECK(run({"count", "--p", "7"}).code != 0);
  CHECK(run({"count", "--p", "9"}).code != 0);
  CHECK(run({"count", "--p", "3", "--power", "3"}).code != 0);
  CHECK(run({"count", "--p", "3", "--t", "x"}).code != 0);
  CHECK(run({"count"}).code != 0);
  CHECK(run({"count", "--p", "3", "--max-chunks", "1"}).code != 0);
  CHECK(run({"frobnicate"}).code != 0);
}

TEST_CASE("count with checkpoint and resume") {
  const auto path = std::filesystem::temp_directory_path() / "hvcheck_cli_resume.ckpt";
  std::filesystem::remove(path);
  auto r = run({"count", "--p", "11", "--power", "2", "--checkpoint", path.string(), "--max-chunks", "4",
                "--progress"});
  CHECK(r.code == 3);
  CHECK(contains(r.err, "chunk "));
  CHECK(contains(r.err, "stopped after 4 of 11"));
  r = run({"count", "--p", "11", "--power", "2", "--checkpoint", path.string()});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "total = 2451040"));
  CHECK(contains(r.out, "resumed 4 chunks"));
  r = run({"count", "--p", "13", "--power", "2", "--checkpoint", path.string()});
  CHECK(r.code != 0);
  CHECK(contains(r.err, "stale"));
  std::filesystem::remove(path);
}

TEST_CASE("verify") {
  auto r = run({"verify", "--pmax", "31"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "7 rows, all pass"));
  CHECK(contains(r.out, "929380800"));
  r = run({"verify", "--pmax", "2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "0 rows"));
  r = run({"verify", "--pmax", "113", "--skip-square-above", "31", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "p,b_p,a_p,a_p+5pb_p,second_trace,count_p,count_p2,split_u,split_v,S,status\n"));
  CHECK(contains(r.out, "113,6,1378,4768,-,2017820,-,-,-,"));
  r = run({"verify", "--pmax", "50", "--all-primes", "--skip-square-above", "13"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "12 rows, all pass"));
}

TEST_CASE("verify fails on a tampered snapshot") {
  const auto path = std::filesystem::temp_directory_path() / "hvcheck_tampered.json";
  auto snap = hvcheck::data::Snapshot::load(hvcheck::data::default_snapshot_path());
  snap.newforms["14.4.a.a"].eigenvalues[17] = 72;
  std::ofstream(path) << snap.serialize();
  ::setenv("HVCHECK_SNAPSHOT", path.c_str(), 1);
  const auto r = run({"verify", "--pmax", "17"});
  ::unsetenv("HVCHECK_SNAPSHOT");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "FAIL"));
  CHECK(contains(r.err, "p = 17"));
  std::filesystem::remove(path);
}

TEST_CASE("monodromy") {
  auto r = run({"monodromy", "structure"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "PASS |J|: 15000"));
  CHECK(contains(r.out, "PASS |J cap L|: 120"));
  r = run({"monodromy", "normalizer", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "check,value,status\n"));
  CHECK(contains(r.out, "\"Weyl survivors {id, omega}\",(0123) (0213),PASS"));
  CHECK(run({"monodromy", "sideways"}).code != 0);

  const auto dump = std::filesystem::temp_directory_path() / "hvcheck_j.txt";
  r = run({"monodromy", "structure", "--dump-j", dump.string()});
  CHECK(r.code == 0);
  std::ifstream in(dump);
  std::size_t lines = 0;
  for (std::string s; std::getline(in, s);) ++lines;
  CHECK(lines == 15000);
  std::filesystem::remove(dump);
}

TEST_CASE("pf, boundary, charelim") {
  auto r = run({"pf", "--nmax", "40"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "singular locus: {0, 1/25, 1/9, 1, inf}"));
  CHECK(contains(r.out, "PASS Gram determinant: 144"));
  CHECK(run({"pf", "--nmax", "10"}).code != 0);

  const auto exported = std::filesystem::temp_directory_path() / "hvcheck_pf.json";
  CHECK(run({"pf", "--export", exported.string()}).code == 0);
  CHECK(std::filesystem::file_size(exported) > 0);
  std::filesystem::remove(exported);

  r = run({"boundary", "--p", "13"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "8990 = 8990"));
  CHECK(contains(r.out, "1640 + 8990 = 10630"));

  r = run({"charelim"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "PASS survivors: (0,0,0,0)"));
}

TEST_CASE("lmfdb fetch") {
  auto r = run({"lmfdb", "fetch", "--label", "350.f1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "\"l_ratio\": \"9\""));
  r = run({"lmfdb", "fetch", "--label", "14.4.a.a", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "14.4.a.a,113,1378\n"));
  r = run({"lmfdb", "fetch", "--label", "11.a1"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "unknown label"));
  CHECK(run({"lmfdb", "fetch", "--label", "garbage"}).code == 2);
  CHECK(run({"lmfdb", "fetch"}).code != 0);
}

TEST_CASE("run config validation") {
  hvcheck::cli::RunConfig cfg;
  cfg.command = "count";
  cfg.p = 4;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.p = 5;
  CHECK_NOTHROW(cfg.validate());
  cfg.threads = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
