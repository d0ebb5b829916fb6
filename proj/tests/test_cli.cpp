#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "concat/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = concat::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return "concat_cli_test_" + name; }

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("cli classify and eval") {
  auto r = run({"classify", "E x . x = \"0\""});
  CHECK(r.code == 0);
  CHECK(r.out == "(1,0,0)\n");
  CHECK(run({"classify", "A x . x = x"}).out == "not-sigma\n");

  r = run({"eval", "--structure", "D", "--budget", "4", "E x . x * \"0\" = \"10\""});
  CHECK(r.code == 0);
  CHECK(r.out == "true, witness x=\"1\"\n");

  r = run({"--json", "eval", "E x . x * \"0\" = \"10\""});
  CHECK(r.out == "{\"verdict\":\"true\",\"witness\":{\"x\":\"1\"}}\n");
  CHECK(run({"eval", "--json", "E x . x * \"0\" = \"10\""}).out == r.out);

  r = run({"eval", "--var", "y=01", "y <: \"101\""});
  CHECK(r.out == "true\n");
  CHECK(run({"eval", "y <: \"101\""}).code == 2);
}

TEST_CASE("cli normalize solve-eq decide") {
  auto r = run({"normalize", "--structure", "B", "E x . E y . x * y = \"01\""});
  CHECK(r.code == 0);
  CHECK(r.out == "E v1 . E x <: v1 . E y <: v1 . x * y = \"01\"\n");

  r = run({"normalize", "--structure", "D", "~ \"0\" = \"1\""});
  CHECK(r.code == 0);
  CHECK(r.out.find("too large to print") != std::string::npos);

  r = run({"solve-eq", "--max-len", "6", "x * 0 = 1 * 0"});
  CHECK(r.out == "sat\nx = \"1\"\n");
  CHECK(run({"solve-eq", "0 * x = x * 1"}).out.rfind("unsat", 0) == 0);

  r = run({"decide", "--structure", "D", "E x <: \"10\" . x * x = \"1010\""});
  CHECK(r.out.rfind("true\nroute: sigma-0mk\n", 0) == 0);
  r = run({"--json", "decide", "--structure", "D", "E x . x * \"1\" = \"1\" * x & ~ x = \"\""});
  CHECK(r.out.find("\"route\":\"word-equations\"") != std::string::npos);
  CHECK(r.out.find("\"verdict\":\"true\"") != std::string::npos);
}

TEST_CASE("cli prove and check") {
  std::string path = temp_path("proof.json");
  auto r = run({"prove", "--theory", "D", "--budget", "4", "-o", path, "A x <: \"01\" . x <: \"011\""});
  CHECK(r.code == 0);
  CHECK(r.out.find("BoundedCover D7") != std::string::npos);

  r = run({"check", path});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("ok: ", 0) == 0);
  r = run({"check", "--theory", "B", path});
  CHECK(r.code == 1);
  CHECK(r.out == "failed at step 1: axiom not in theory\n");

  write(path, "{\"theory\": \"D\"");
  CHECK(run({"check", path}).code == 2);
  write(path, "{\"theory\": \"D\", \"goal\": \"\\\"0\\\" = \\\"0\\\"\", \"steps\": [{\"id\": 1}]}");
  CHECK(run({"check", path}).code == 2);
  std::remove(path.c_str());

  r = run({"prove", "\"0\" = \"1\""});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("refused (false)", 0) == 0);
  CHECK(run({"prove", "E x . x * x = \"1\" * x"}).code == 0);
  CHECK(run({"prove", "E x . x * x = \"1\" * x * x"}).code == 1);
}

TEST_CASE("cli pcp") {
  std::string path = temp_path("pcp.txt");
  write(path, "# three pairs\n1 101\n10 00\n011 11\n");
  CHECK(run({"pcp", "solve", path}).out == "1 3 2 3\n");
  CHECK(run({"pcp", "verify", path, "1", "3", "2", "3"}).code == 0);
  CHECK(run({"pcp", "verify", path, "1", "2"}).code == 1);
  CHECK(run({"pcp", "verify", path, "7"}).code == 2);
  CHECK(run({"pcp", "verify", path, "x"}).code == 2);
  auto r = run({"--json", "pcp", "reduce", "--target", "b121", path});
  CHECK(r.out.find("\"class\":{\"k\":1,\"m\":2,\"n\":1,\"sigma\":true}") != std::string::npos);

  write(path, "0 0\n");
  r = run({"pcp", "crosscheck", "--budget", "12", path});
  CHECK(r.code == 0);
  write(path, "0 1\n");
  CHECK(run({"pcp", "solve", "--bound", "5", path}).out == "none within bound 5\n");
  write(path, "0 1 1\n");
  CHECK(run({"pcp", "solve", path}).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("cli usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"eval", "E x . "}).code == 2);
  CHECK(run({"eval", "--structure", "Q", "x = x"}).code == 2);
  CHECK(run({"check", "/nonexistent/proof.json"}).code == 2);
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("normalize") != std::string::npos);
}

TEST_CASE("cli binary exit codes") {
  std::string bin = CONCAT_CLI_PATH;
  CHECK(std::system((bin + " classify 'E x . x = \"0\"' > /dev/null").c_str()) == 0);
  int code = std::system((bin + " eval 'E x .' > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(code) == 2);
  code = std::system((bin + " prove '\"0\" = \"1\"' > /dev/null").c_str());
  CHECK(WEXITSTATUS(code) == 1);
}
