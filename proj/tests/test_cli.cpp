#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hyperdet/cli.hpp"

using namespace hyperdet;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hyperdet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("count prints the bare number") {
  CHECK(run({"count", "--k", "2", "--q", "2", "--lambda", "1,0", "--mu", "1,0", "--method", "brute"}).out == "144\n");
  CHECK(run({"count", "--k", "2", "--q", "2", "--lambda", "0,0", "--mu", "0,0", "--method", "cells"}).out == "1008\n");
  CHECK(run({"count", "--k", "2", "--q", "2", "--lambda", "empty", "--mu", "empty", "--method", "action"}).out ==
        "1008\n");
  const Run several = run({"count", "--k", "2", "--q", "2,3", "--lambda", "2,1", "--mu", "1,0", "--method", "brute,cells"});
  CHECK(several.code == 0);
  CHECK(several.out == "q=2 cells 16\nq=2 brute 16\nq=3 cells 1296\nq=3 brute 1296\n");
}

TEST_CASE("count as JSON and CSV") {
  const Run j = run({"count", "--k", "2", "--q", "3", "--lambda", "1,1", "--mu", "1,0", "--method", "action",
                     "--format", "json", "--deterministic"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["results"].size() == 1);
  CHECK(doc["results"][0]["method"] == "action");
  CHECK(doc["results"][0]["count"] == 81 * 16 * 4);
  CHECK(doc["flags"]["poly_vs_conjecture"] == true);
  const Run c = run({"count", "--k", "1", "--q", "2", "--lambda", "0", "--mu", "0", "--method", "brute", "--format", "csv"});
  CHECK(c.out == "k,lambda,mu,q,method,count\n1,\"0\",\"0\",2,brute,6\n");
}

TEST_CASE("hyperrooks") {
  CHECK(run({"hyperrooks", "--k", "2", "--lambda", "2,1", "--mu", "1,0"}).out == "1\n");
  const Run listed = run({"hyperrooks", "--k", "2", "--lambda", "1,0", "--mu", "1,0", "--list"});
  CHECK(listed.out.rfind("4\n", 0) == 0);
  CHECK(std::count(listed.out.begin(), listed.out.end(), '\n') == 5);
}

TEST_CASE("digraph export") {
  const Run d = run({"digraph", "--sigma", "52134", "--pi", "2314"});
  CHECK(d.code == 0);
  CHECK(d.out.rfind("digraph \"D_52134_2314\" {\n", 0) == 0);
  CHECK(std::count(d.out.begin(), d.out.end(), '>') == 7);
  const Run plain = run({"digraph", "--sigma", "52134", "--pi", "2314", "--format", "plain"});
  CHECK(plain.out.find("x_1_2 -> y_1_3\n") != std::string::npos);
  CHECK(run({"digraph", "--sigma", "123", "--pi", "123"}).code == 2);
}

TEST_CASE("classical oracle pair") {
  const Run r = run({"classical", "--n", "4", "--q", "2", "--lambda", "3,1,1,0"});
  CHECK(r.code == 0);
  CHECK(r.out == "rooks 2 (brute 2)\nmatrices 192 (brute 192)\n");
}

TEST_CASE("nondegeneracy of a literal") {
  const std::string lit = R"({"k":2,"q":"2","front":[[1,0],[0,1],[0,0]],"back":[[0,0],[1,0],[0,1]]})";
  CHECK(run({"nondeg", "--literal", lit}).out == "nondegenerate\n");
  const std::string same = R"({"k":2,"q":"2","front":[[1,0],[0,1],[0,0]],"back":[[1,0],[0,1],[0,0]]})";
  CHECK(run({"nondeg", "--literal", same}).out == "degenerate\n");
  CHECK(run({"nondeg", "--literal", "{not json"}).code == 2);
}

TEST_CASE("conjecture sweep") {
  const std::vector<std::string> base{"conjecture", "--k", "2", "--max-q", "3", "--all-shapes",
                                      "--methods", "brute,action", "--deterministic"};
  auto one = base;
  one.insert(one.end(), {"--jobs", "1"});
  auto three = base;
  three.insert(three.end(), {"--jobs", "3"});
  const Run a = run(one);
  const Run b = run(three);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["summary"]["shapes"] == 9);
  CHECK(doc["summary"]["matches"] == 9);
  CHECK(doc["summary"]["findings"] == 0);
  CHECK(doc["counterexamples"].empty());
  CHECK(doc["q_values"] == nlohmann::json::array({2, 3}));

  const Run single = run({"conjecture", "--k", "3", "--lambda", "2,1,0", "--mu", "empty", "--format", "plain"});
  CHECK(single.code == 0);
  CHECK(single.out.find("matches product") != std::string::npos);
  CHECK(run({"conjecture", "--k", "2"}).code == 2);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"count", "--q", "2", "--lambda", "0,0", "--mu", "0,0"}).code == 2);
  const Run bad = run({"count", "--k", "2", "--q", "2", "--lambda", "1,2", "--mu", "0,0"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("NotDecreasing") != std::string::npos);
  CHECK(run({"count", "--k", "2", "--q", "6", "--lambda", "0,0", "--mu", "0,0"}).code == 2);
  CHECK(run({"count", "--k", "2", "--q", "2", "--lambda", "0,0", "--mu", "0,0", "--method", "magic"}).code == 2);
  CHECK(run({"count", "--k", "9", "--q", "2", "--lambda", "0", "--mu", "0"}).code == 2);
  CHECK(run({"hyperrooks", "--k", "2", "--lambda", "1,0", "--mu", "1,0", "--format", "dot"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("budgets and output files") {
  const Run over = run({"count", "--k", "2", "--q", "2", "--lambda", "0,0", "--mu", "0,0", "--method", "brute",
                        "--budget", "brute=100"});
  CHECK(over.code == 2);
  CHECK(over.err.find("BudgetExceeded") != std::string::npos);

  setenv("HYPERDET_BUDGET_OVERRIDE", "brute=100", 1);
  CHECK(run({"count", "--k", "2", "--q", "2", "--lambda", "0,0", "--mu", "0,0", "--method", "brute"}).code == 2);
  unsetenv("HYPERDET_BUDGET_OVERRIDE");

  const auto path = std::filesystem::temp_directory_path() / "hyperdet_cli_test.txt";
  const Run to_file = run({"hyperrooks", "--k", "3", "--lambda", "0,0,0", "--mu", "0,0,0", "--output", path.string()});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "144");
  std::filesystem::remove(path);
}

TEST_CASE("quick selftest") {
  const Run r = run({"selftest", "--level", "quick", "--jobs", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(run({"selftest", "--level", "medium"}).code == 2);
}
