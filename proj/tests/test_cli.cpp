// End-to-end checks of the CLI executable (path passed as argv[1]).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

std::string g_cli;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args, const std::string& stdin_text = "") {
  std::string cmd;
  if (!stdin_text.empty()) {
    std::string tmp = "/tmp/mumford_cli_stdin.json";
    FILE* f = fopen(tmp.c_str(), "w");
    fwrite(stdin_text.data(), 1, stdin_text.size(), f);
    fclose(f);
    cmd = g_cli + " " + args + " < " + tmp + " 2>/dev/null";
  } else {
    cmd = g_cli + " " + args + " 2>/dev/null";
  }
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WEXITSTATUS(st), out};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}

TEST_CASE("example prints a config that pipes into theta") {
  RunResult ex = run("example tate");
  CHECK(ex.exit_code == 0);
  CHECK(ex.out.find("\"name\": \"tate\"") != std::string::npos);
  RunResult theta = run("theta --class 0/1 --weight 1 --trunc 3", ex.out);
  CHECK(theta.exit_code == 0);
  CHECK(theta.out == "z^-2 u^(3) * 1\nz^-1 u^(1) * 1\nz^0 u^(0) * 1\nz^1 u^(0) * 1\n"
                     "z^2 u^(1) * 1\nz^3 u^(3) * 1\n");
}

TEST_CASE("strata on theta3 reports two compact triangles") {
  RunResult r = run("strata --example theta3 --I 1,2,3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"census\"") != std::string::npos);
  // two maximal cells, both compact with 3 vertices
  CHECK(r.out.find("\"compact\": true") != std::string::npos);
}

TEST_CASE("invalid JSON exits 2 with a location message") {
  RunResult r = run("describe", "{\"g\": oops");
  CHECK(r.exit_code == 2);
}

TEST_CASE("delaunay and voronoi subcommands") {
  RunResult d = run("delaunay --form [[4,1],[1,3]]");
  CHECK(d.exit_code == 0);
  CHECK(d.out.find("\"2\": 2") != std::string::npos);
  RunResult v = run("voronoi-cell --form [[4,1],[1,3]]");
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("\"facet_count\": 6") != std::string::npos);
}

TEST_CASE("basechange pipes into resolve") {
  RunResult bc = run("basechange --example tate --matrix [[3]]");
  CHECK(bc.exit_code == 0);
  CHECK(bc.out.find("\"basechange\"") != std::string::npos);
  RunResult res = run("resolve", bc.out);
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"final_semistable\": true") != std::string::npos);
}

TEST_CASE("resolve mon-sep with the carried plan") {
  RunResult r = run("resolve --example mon-sep");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"grid_denominator\": 32") != std::string::npos);
  CHECK(r.out.find("\"final_all_standard_affine\": true") != std::string::npos);
}

TEST_CASE("weights subcommand") {
  RunResult r = run("weights", R"({"g": 1, "Ns": [[[0,1],[0,0]]]})");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"maximal\": true") != std::string::npos);
}

TEST_CASE("svg subcommand and dimension refusal") {
  RunResult ok = run("svg --example theta3");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.rfind("<svg", 0) == 0);
  RunResult bad = run("svg --example r10");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("byte-identical output across runs") {
  RunResult a = run("describe --example shifted-theta");
  RunResult b = run("describe --example shifted-theta");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}
