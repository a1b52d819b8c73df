#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "ranksets/axioms.hpp"
#include "ranksets/sat.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(RANKSETS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int rc = pclose(pipe);
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string data_file(const std::string& stem) {
  return std::string(RANKSETS_DATA_DIR) + "/" + stem + ".mslsp";
}

}  // namespace

TEST_CASE("check exit codes follow the DIMACS-solver convention") {
  RunResult sat = run("check --axioms LIN_E,SUA_V,SUA_P --size 2");
  CHECK(sat.exit_code == 0);
  CHECK(sat.out.find("verdict: SAT") != std::string::npos);

  RunResult unsat = run("check --axioms LIN_E,SUA_V,SUA_P --size 3");
  CHECK(unsat.exit_code == 20);
  CHECK(unsat.out.find("verdict: UNSAT") != std::string::npos);
  CHECK(unsat.out.find("variables: 58") != std::string::npos);

  RunResult unknown = run(
      "check --axioms LIN_E,COMPL_S,TRANS_S,GF1,GF2,IND --size 6 --conflicts 3");
  CHECK(unknown.exit_code == 30);

  CHECK(run("check --axioms NOSUCH --size 3").exit_code == 64);
  CHECK(run("check --size 3").exit_code == 64);
  CHECK(run("bogus-subcommand").exit_code == 64);
}

TEST_CASE("axiom aliases accepted case-insensitively") {
  RunResult r = run("check --axioms line,suav,suap --size 3");
  CHECK(r.exit_code == 20);
}

TEST_CASE("memory estimation guards oversized instances") {
  RunResult r = run("check --axioms all --size 8 --mem-limit 1");
  CHECK(r.exit_code == 1);
}

TEST_CASE("witness output") {
  RunResult w = run("witness --axioms LIN_E,REFL_S,COMPL_S,TRANS_S --size 2");
  CHECK(w.exit_code == 0);
  // One line for the element order, one chain over the 3 subsets.
  CHECK(w.out.find("x1") != std::string::npos);
  CHECK(w.out.find("{x1, x2}") != std::string::npos);
  CHECK(w.out.find("≻") != std::string::npos);

  RunResult u = run("witness --axioms LIN_E,SUA_V,SUA_P --size 3");
  CHECK(u.exit_code == 20);
  CHECK(u.out.find("UNSAT") != std::string::npos);
}

TEST_CASE("dimacs export and self-hosted external solving") {
  std::string cnf_path = "/tmp/ranksets_cli_kp5.cnf";
  RunResult d = run("dimacs --axioms LIN_E,COMPL_S,TRANS_S,GF1,GF2,IND --size 5 -o " +
                    cnf_path);
  CHECK(d.exit_code == 0);
  std::ifstream is(cnf_path);
  std::string header;
  std::getline(is, header);
  CHECK(header.substr(0, 10) == "p cnf 986 ");

  RunResult solved = run("solve-dimacs " + cnf_path);
  CHECK(solved.exit_code == 10);
  CHECK(solved.out.find("s SATISFIABLE") != std::string::npos);

  // The check command can call this binary as its external solver.
  RunResult ext = run(
      "check --axioms LIN_E,SUA_V,SUA_P --size 3 --solver external --external-cmd \"" +
      std::string(RANKSETS_CLI_PATH) + " solve-dimacs\"");
  CHECK(ext.exit_code == 20);
  RunResult ext_sat = run(
      "check --axioms LIN_E,SUA_V,SUA_P --size 2 --solver external --external-cmd \"" +
      std::string(RANKSETS_CLI_PATH) + " solve-dimacs\"");
  CHECK(ext_sat.exit_code == 0);
  std::filesystem::remove(cnf_path);
}

TEST_CASE("esg-check classifies the shipped files") {
  RunResult ok = run("esg-check " + data_file("gf1") + " " + data_file("ind"));
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("gf1.mslsp: ESG") != std::string::npos);

  RunResult bad = run("esg-check " + data_file("three_distinct"));
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("NotESG") != std::string::npos);
}

TEST_CASE("ground writes solvable DIMACS") {
  std::string out = "/tmp/ranksets_cli_ground.cnf";
  RunResult g = run("ground " + data_file("refl_s") + " --size 2 -o " + out);
  CHECK(g.exit_code == 0);
  std::ifstream is(out);
  std::stringstream buf;
  buf << is.rdbuf();
  ranksets::CnfFormula f = ranksets::sat::import_dimacs(buf.str());
  CHECK(f.num_clauses() == 3);
  std::filesystem::remove(out);
}

TEST_CASE("search/report round trip through a checkpoint") {
  std::string ckpt = "/tmp/ranksets_cli_ckpt.txt";
  std::string prefix = "/tmp/ranksets_cli_out";
  std::filesystem::remove(ckpt);
  RunResult s = run("search --axioms LIN_E,SUA_V,SUA_P,SDOM,STRICT_IND --max-size 3 "
                    "--quiet --checkpoint " +
                    ckpt + " --out " + prefix);
  CHECK(s.exit_code == 0);
  CHECK(s.out.find("minimal impossibilities: 2") != std::string::npos);

  RunResult rerun = run("search --axioms LIN_E,SUA_V,SUA_P,SDOM,STRICT_IND --max-size 3 "
                        "--quiet --checkpoint " +
                        ckpt);
  CHECK(rerun.exit_code == 0);
  CHECK(rerun.out == s.out);

  RunResult rep = run("report --checkpoint " + ckpt + " --format csv");
  CHECK(rep.exit_code == 0);
  CHECK(rep.out.find("Size,LIN_E") != std::string::npos);

  for (const char* suffix : {".txt", ".csv", ".json"})
    CHECK(std::filesystem::exists(prefix + suffix));
  std::filesystem::remove(ckpt);
  for (const char* suffix : {".txt", ".csv", ".json"})
    std::filesystem::remove(prefix + suffix);
}

TEST_CASE("builtin and external verdicts agree on 100 sampled instances") {
  std::string ext_cmd = std::string(RANKSETS_CLI_PATH) + " solve-dimacs";
  std::mt19937 rng(2026);
  int sat_count = 0, unsat_count = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = trial < 90 ? 2 + static_cast<int>(rng() % 3) : 5;
    ranksets::AxiomSet axioms = 0;
    for (int i = 0; i < ranksets::kNumAxioms; ++i)
      if (rng() % 3 == 0) axioms |= ranksets::AxiomSet{1} << i;
    if (axioms == 0) axioms = 1;
    ranksets::CnfFormula f = ranksets::instance_cnf({axioms, n});
    auto builtin = ranksets::sat::solve(f);
    auto external = ranksets::sat::run_external_solver(f, ext_cmd);
    CAPTURE(trial);
    CAPTURE(n);
    REQUIRE(builtin.status == external.status);
    if (builtin.status == ranksets::sat::Status::Sat) ++sat_count;
    else ++unsat_count;
  }
  CHECK(sat_count > 0);
  CHECK(unsat_count > 0);
}

TEST_CASE("structured search outputs are byte-identical across runs") {
  std::string a = "/tmp/ranksets_cli_repro_a", b = "/tmp/ranksets_cli_repro_b";
  std::string flags = "search --axioms LIN_E,TRANS_S,GF1,GF2,IND,SUA_V,SUA_P "
                      "--max-size 3 --quiet --seed 7 --out ";
  CHECK(run(flags + a).exit_code == 0);
  CHECK(run(flags + b).exit_code == 0);
  for (const char* suffix : {".txt", ".csv", ".json"}) {
    std::ifstream fa(a + suffix), fb(b + suffix);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());
  }
  for (const char* suffix : {".txt", ".csv", ".json"}) {
    std::filesystem::remove(a + suffix);
    std::filesystem::remove(b + suffix);
  }
}

TEST_CASE("proof emission on unsat checks") {
  std::string proof = "/tmp/ranksets_cli_proof.drat";
  std::filesystem::remove(proof);
  RunResult r = run("check --axioms LIN_E,SUA_V,SUA_P --size 3 --proof " + proof);
  CHECK(r.exit_code == 20);
  CHECK(std::filesystem::exists(proof));

  // Proof requested on a satisfiable instance: message, no file.
  std::string no_proof = "/tmp/ranksets_cli_noproof.drat";
  std::filesystem::remove(no_proof);
  RunResult s = run("check --axioms LIN_E --size 2 --proof " + no_proof);
  CHECK(s.exit_code == 0);
  CHECK(!std::filesystem::exists(no_proof));
  std::filesystem::remove(proof);
}
