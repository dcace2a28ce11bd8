#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bcs/cli.hpp"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bcs");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = bcs::cli_main(static_cast<int>(argv.size()), argv.data(), out,
                           err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> ls;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) ls.push_back(line);
  return ls;
}

// Output with the wall-clock line blanked, for determinism comparisons.
std::string without_seconds(const std::string& s) {
  std::string r;
  for (const std::string& l : lines_of(s))
    if (l.rfind("seconds=", 0) != 0) r += l + "\n";
  return r;
}

const char* kQuadratic = "var x in [-10,10];\nx^2 = 4;\n";
const char* kFig1 =
    "var x in [0,2]; var y in [-2,2]; var z in [-10,10];\n2*x = z - y^2;\n";

}  // namespace

TEST_CASE("solve prints numbered boxes and a stats trailer") {
  fs::path p = temp_file("cli_quad.bcs", kQuadratic);
  CliRun r = run_cli({"solve", p.string()});
  CHECK(r.exit_code == 0);

  std::vector<std::string> ls = lines_of(r.out);
  REQUIRE(ls.size() == 8);
  CHECK(ls[0].rfind("1: x=[", 0) == 0);
  CHECK(ls[1].rfind("2: x=[", 0) == 0);
  CHECK(ls[2] == "status=complete");
  CHECK(ls[3] == "solutions=2");
  CHECK(ls[4].rfind("projections=", 0) == 0);
  CHECK(ls[5].rfind("revise_calls=", 0) == 0);
  CHECK(ls[6].rfind("enqueues=", 0) == 0);
  CHECK(ls[7].rfind("seconds=", 0) == 0);

  // One negative and one positive root, in ascending order.
  CHECK(ls[0].find("x=[-2") != std::string::npos);
  CHECK(ls[1].find("x=[2") != std::string::npos);
}

TEST_CASE("solve accepts every method name") {
  fs::path p = temp_file("cli_quad.bcs", kQuadratic);
  for (const char* m : {"hc3", "hc3sb", "hc4", "hc4sb"}) {
    CliRun r = run_cli({"solve", p.string(), "--method", m});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("solutions=2") != std::string::npos);
  }
}

TEST_CASE("solve output is deterministic apart from the wall clock") {
  fs::path p = temp_file("cli_quad.bcs", kQuadratic);
  CliRun a = run_cli({"solve", p.string(), "--method", "hc3sb"});
  CliRun b = run_cli({"solve", p.string(), "--method", "hc3sb"});
  CHECK(without_seconds(a.out) == without_seconds(b.out));
}

TEST_CASE("an inconsistent problem reports zero solutions and exits 1") {
  fs::path p = temp_file("cli_incons.bcs", "var x in [0,1];\nx = 1; x = 2;\n");
  CliRun r = run_cli({"solve", p.string()});
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("status=complete") != std::string::npos);
  CHECK(r.out.find("solutions=0") != std::string::npos);
  CHECK(!r.err.empty());
}

TEST_CASE("a timeout exits 3 and says so") {
  fs::path p = temp_file("cli_quad.bcs", kQuadratic);
  CliRun r = run_cli({"solve", p.string(), "--timeout", "1e-12"});
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("status=timeout") != std::string::npos);
}

TEST_CASE("usage and input errors exit 2") {
  fs::path p = temp_file("cli_quad.bcs", kQuadratic);
  fs::path bad = temp_file("cli_bad.bcs", "var x in [0,1]; x + = 2;\n");

  CHECK(run_cli({}).exit_code == 2);
  CHECK(run_cli({"solve"}).exit_code == 2);
  CHECK(run_cli({"solve", "/nonexistent/nope.bcs"}).exit_code == 2);
  CHECK(run_cli({"solve", bad.string()}).exit_code == 2);
  CHECK(run_cli({"solve", p.string(), "--frobnicate"}).exit_code == 2);
  CHECK(run_cli({"solve", p.string(), "--eps", "0"}).exit_code == 2);
  CHECK(run_cli({"solve", p.string(), "--eps", "-1"}).exit_code == 2);
  CHECK(run_cli({"solve", p.string(), "--timeout", "-1"}).exit_code == 2);
  CHECK(run_cli({"solve", p.string(), "--method", "hc9"}).exit_code == 2);
  CHECK(run_cli({"bench", "--family", "brutus", "--sizes", "2"}).exit_code ==
        2);

  // Parse errors name the file on stderr.
  CliRun r = run_cli({"solve", bad.string()});
  CHECK(r.err.find("cli_bad.bcs") != std::string::npos);
}

TEST_CASE("--help exits 0 and lists the subcommands") {
  CliRun r = run_cli({"--help"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("solve") != std::string::npos);
  CHECK(r.out.find("bench") != std::string::npos);
  CHECK(r.out.find("verify") != std::string::npos);
  CHECK(r.out.find("dump") != std::string::npos);
}

TEST_CASE("--seed parses and changes nothing") {
  fs::path p = temp_file("cli_quad.bcs", kQuadratic);
  CliRun a = run_cli({"solve", p.string()});
  CliRun b = run_cli({"solve", p.string(), "--seed", "42"});
  CHECK(b.exit_code == 0);
  CHECK(without_seconds(a.out) == without_seconds(b.out));
}

TEST_CASE("dump reproduces the pinned snapshot") {
  fs::path p = temp_file("cli_fig1.bcs", kFig1);
  CliRun r = run_cli({"dump", p.string()});
  CHECK(r.exit_code == 0);
  CHECK(r.out == slurp(fs::path(BCS_GOLDEN_DIR) / "fig1_dump.txt"));
}

TEST_CASE("dump separates multiple constraints with a blank line") {
  fs::path p = temp_file("cli_two.bcs",
                         "var x in [0,1]; var y in [0,1];\n"
                         "x + y = 1;\nx - y = 0;\n");
  CliRun r = run_cli({"dump", p.string()});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\n\ndecomposition of: x - y = 0;\n") != std::string::npos);
}

TEST_CASE("--fold-constants shrinks the decomposition") {
  fs::path p = temp_file("cli_fold.bcs", "var x in [0,10];\nx + (1 + 2) = 7;\n");
  CliRun plain = run_cli({"dump", p.string()});
  CliRun folded = run_cli({"dump", p.string(), "--fold-constants"});
  CHECK(plain.out.find("primitives (3):") != std::string::npos);
  CHECK(folded.out.find("primitives (2):") != std::string::npos);
  CHECK(folded.out.find("x + 3 = 7;") != std::string::npos);
}

TEST_CASE("--out redirects the report to a file") {
  fs::path p = temp_file("cli_quad.bcs", kQuadratic);
  fs::path o = fs::temp_directory_path() / "cli_solve_out.txt";
  std::error_code ec;
  fs::remove(o, ec);
  CliRun r = run_cli({"solve", p.string(), "--out", o.string()});
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(o).find("solutions=2") != std::string::npos);
}

TEST_CASE("verify reports per-constraint checks") {
  SUBCASE("admissible constraints get a directional verdict") {
    fs::path p = temp_file("cli_fig1.bcs", kFig1);
    CliRun r = run_cli({"verify", p.string(), "--method", "hc3"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("C1: quiescent=PASS directional=PASS") !=
          std::string::npos);
    CHECK(r.out.find("verify=PASS") != std::string::npos);
  }
  SUBCASE("non-admissible constraints skip the directional check") {
    fs::path p = temp_file(
        "cli_feig.bcs",
        "var x1 in [0,100]; var x2 in [0,100];\n"
        "-3.84*x1^2 + 3.84*x1 - x2 = 0;\n-3.84*x2^2 + 3.84*x2 - x1 = 0;\n");
    CliRun r = run_cli({"verify", p.string()});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("C1: quiescent=PASS directional=SKIP") !=
          std::string::npos);
    CHECK(r.out.find("C2: quiescent=PASS directional=SKIP") !=
          std::string::npos);
  }
  SUBCASE("an inconsistent problem is called out and exits 1") {
    fs::path p =
        temp_file("cli_incons.bcs", "var x in [0,1];\nx = 1; x = 2;\n");
    CliRun r = run_cli({"verify", p.string()});
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("inconsistent") != std::string::npos);
  }
  SUBCASE("every method reaches a verifiable fixed point") {
    fs::path p = temp_file("cli_fig1.bcs", kFig1);
    for (const char* m : {"hc3", "hc3sb", "hc4", "hc4sb"}) {
      CliRun r = run_cli({"verify", p.string(), "--method", m});
      CHECK(r.exit_code == 0);
      CHECK(r.out.find("verify=PASS") != std::string::npos);
    }
  }
}

TEST_CASE("bench writes the main CSV and a ratios sibling") {
  fs::path o = fs::temp_directory_path() / "cli_bench.csv";
  fs::path ro = fs::temp_directory_path() / "cli_bench.ratios.csv";
  std::error_code ec;
  fs::remove(o, ec);
  fs::remove(ro, ec);

  CliRun r = run_cli({"bench", "--family", "bratu", "--sizes", "2",
                      "--methods", "hc3,hc4", "--out", o.string()});
  CHECK(r.exit_code == 0);

  std::vector<std::string> main_lines = lines_of(slurp(o));
  REQUIRE(main_lines.size() == 3);
  CHECK(main_lines[0] ==
        "family,n,method,status,solutions,projections,revise_calls,enqueues,"
        "seconds");
  CHECK(main_lines[1].rfind("bratu,2,hc3,complete,", 0) == 0);
  CHECK(main_lines[2].rfind("bratu,2,hc4,complete,", 0) == 0);

  std::vector<std::string> ratio_lines = lines_of(slurp(ro));
  REQUIRE(ratio_lines.size() == 2);
  CHECK(ratio_lines[0] == "family,n,nodes,pair,ratio");
  CHECK(ratio_lines[1].rfind("bratu,2,12,hc3/hc4,", 0) == 0);
}

TEST_CASE("bench without --out prints both tables") {
  CliRun r = run_cli({"bench", "--family", "feigenbaum", "--sizes", "2",
                      "--methods", "hc4,hc4sb"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("family,n,method,status,") != std::string::npos);
  CHECK(r.out.find("\n\nfamily,n,nodes,pair,ratio\n") != std::string::npos);
  CHECK(r.out.find("feigenbaum,2,10,hc4sb") == std::string::npos);
  // hc4/hc4sb is not a tracked pair, so no ratio rows here.
  std::vector<std::string> ls = lines_of(r.out);
  CHECK(ls.back() == "family,n,nodes,pair,ratio");
}

TEST_CASE("bench accepts multiple sizes and keeps row order") {
  CliRun r = run_cli({"bench", "--family", "feigenbaum", "--sizes", "2,3",
                      "--methods", "hc4"});
  CHECK(r.exit_code == 0);
  std::vector<std::string> ls = lines_of(r.out);
  REQUIRE(ls.size() >= 3);
  CHECK(ls[1].rfind("feigenbaum,2,hc4,", 0) == 0);
  CHECK(ls[2].rfind("feigenbaum,3,hc4,", 0) == 0);
}
