#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "pqnb/structfile.hpp"
#include "support.hpp"

using namespace pqnb;

namespace {

std::string bin_path() {
  const char* p = std::getenv("PQNB_BIN");
  return p ? p : "./tools/pqnb";
}

std::string work_dir() {
  static std::string dir = [] {
    std::string d = "/tmp/pqnb_cli_test_" + std::to_string(::getpid());
    if (std::system(("mkdir -p " + d).c_str()) != 0) d = "/tmp";
    return d;
  }();
  return dir;
}

void write_file(const std::string& name, const std::string& text) {
  std::ofstream out(work_dir() + "/" + name);
  out << text;
}

std::string path(const std::string& name) { return work_dir() + "/" + name; }

int run(const std::string& args) {
  std::string cmd = bin_path() + " " + args + " > " + path("stdout.txt") + " 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& name) {
  std::ifstream in(path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kEx1 = R"sf(manifold dim=3 coords=x1,x2,x3 nonvanishing="1+x1^2"
bivector P { [1,2] = "1+x1^2" }
endo A { [1,1]="x3" [2,2]="x3" [3,3]="x3" }
form phi deg=3 { [1,2,3]="2*x3/(1+x1^2)" }
form H deg=3 { [1,2,3]="-1/(1+x1^2)" }
gauge B { [2,3]="1" }
policy { seed=42 points=16 tol=1e-9 }
)sf";

const char* kBlock = R"sf(manifold dim=4 coords=q1,q2,s1,c1
bivector P { [1,2]="1+q1^2" }
endo A { [1,1]="2" [2,2]="2" [3,3]="2" [4,4]="2" }
gauge B { [1,2]="q1" }
reduction { q=q1,q2 s=s1 c=c1 c0=0 }
policy { seed=11 points=16 tol=1e-9 }
)sf";

}  // namespace

TEST_CASE("check exit codes") {
  write_file("ex1.pqnb", kEx1);
  CHECK(run("check " + path("ex1.pqnb")) == 0);

  // phi scaled by 1/2 breaks the torsion item
  std::string broken = kEx1;
  size_t pos = broken.find("2*x3/(1+x1^2)");
  broken.replace(pos, std::string("2*x3/(1+x1^2)").size(), "x3/(1+x1^2)");
  write_file("ex1_broken.pqnb", broken);
  CHECK(run("check " + path("ex1_broken.pqnb")) == 1);
  CHECK(slurp("stdout.txt").find("compat_torsion") != std::string::npos);

  write_file("empty.pqnb", "");
  CHECK(run("check " + path("empty.pqnb")) == 2);

  write_file("garbage.pqnb", "manifold dim=2 coords=x1,x2\nbivector P { [2,1]=\"1\" }");
  CHECK(run("check " + path("garbage.pqnb")) == 2);
}

TEST_CASE("gauge command") {
  write_file("ex1.pqnb", kEx1);
  REQUIRE(run("gauge " + path("ex1.pqnb") + " --out " + path("ex1_gauged.pqnb")) == 0);
  CHECK(run("check " + path("ex1_gauged.pqnb")) == 0);

  StructureFile before = load_structure_file(path("ex1.pqnb"));
  StructureFile after = load_structure_file(path("ex1_gauged.pqnb"));
  // only the (1,1)-tensor moves, by the f d1 (x) dx3 term
  Expr f = parse_expr("1+x1^2", after.man->chart);
  TensorField diff = *after.A - ts::with_manifold(*before.A, after.man);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == 0 && j == 2)
        CHECK(diff.entry(i, j) == f);
      else
        CHECK(diff.entry(i, j).is_structural_zero());
    }
  CHECK((*after.phi - ts::with_manifold(*before.phi, after.man)).is_structural_zero());
  CHECK((*after.H - ts::with_manifold(*before.H, after.man)).is_structural_zero());

  // applying the inverse gauge form returns to the start, canonically
  std::string gauged = slurp("ex1_gauged.pqnb") + "gauge B { [2,3]=\"-1\" }\n";
  write_file("ex1_back.pqnb", gauged);
  REQUIRE(run("gauge " + path("ex1_back.pqnb") + " --out " + path("ex1_round.pqnb")) == 0);
  StructureFile round = load_structure_file(path("ex1_round.pqnb"));
  CHECK((*round.A - ts::with_manifold(*before.A, round.man)).is_structural_zero());
  CHECK((*round.phi - ts::with_manifold(*before.phi, round.man)).is_structural_zero());
  CHECK((*round.H - ts::with_manifold(*before.H, round.man)).is_structural_zero());
}

TEST_CASE("compose command") {
  std::string two_gauges = kEx1;
  two_gauges += "gauge B2 { [1,2]=\"x1\" }\n";
  write_file("ex1_two.pqnb", two_gauges);
  CHECK(run("compose " + path("ex1_two.pqnb") + " --out " + path("ex1_comp.pqnb")) == 0);
  CHECK(run("check " + path("ex1_comp.pqnb")) == 0);
}

TEST_CASE("conformal command") {
  write_file("poisson.pqnb", R"sf(manifold dim=3 coords=x1,x2,x3
bivector P { [1,2]="1" }
policy { seed=7 points=16 tol=1e-9 }
)sf");
  REQUIRE(run("conformal " + path("poisson.pqnb") + " --casimir \"x3\" --out " +
              path("poisson_scaled.pqnb")) == 0);
  CHECK(run("check " + path("poisson_scaled.pqnb") + " --kind poisson") == 0);
  StructureFile f = load_structure_file(path("poisson_scaled.pqnb"));
  CHECK(f.P->comp({0, 1}) == parse_expr("exp(x3)", f.man->chart));

  // non-Casimir rejected
  CHECK(run("conformal " + path("poisson.pqnb") + " --casimir \"x1\" --out " +
            path("nope.pqnb")) == 1);
}

TEST_CASE("reduce command") {
  write_file("block.pqnb", kBlock);
  REQUIRE(run("reduce " + path("block.pqnb") + " --out " + path("block_red.pqnb")) == 0);
  CHECK(run("check " + path("block_red.pqnb")) == 0);
  StructureFile red = load_structure_file(path("block_red.pqnb"));
  CHECK(red.man->dim() == 2);

  std::string bad = kBlock;
  size_t pos = bad.find("\"1+q1^2\"");
  bad.replace(pos, std::string("\"1+q1^2\"").size(), "\"s1\"");
  write_file("block_bad.pqnb", bad);
  CHECK(run("reduce " + path("block_bad.pqnb") + " --out " + path("bad_red.pqnb")) == 1);
  CHECK(slurp("stdout.txt").find("(i)") != std::string::npos);
}

TEST_CASE("commute command") {
  write_file("block.pqnb", kBlock);
  CHECK(run("commute " + path("block.pqnb")) == 0);

  std::string bad = kBlock;
  size_t pos = bad.find("gauge B { [1,2]=\"q1\" }");
  bad.replace(pos, std::string("gauge B { [1,2]=\"q1\" }").size(), "gauge B { [1,3]=\"1\" }");
  write_file("block_badB.pqnb", bad);
  CHECK(run("commute " + path("block_badB.pqnb")) == 1);
}

TEST_CASE("reports are byte-identical for a fixed seed") {
  write_file("ex1.pqnb", kEx1);
  REQUIRE(run("check " + path("ex1.pqnb") + " --report " + path("r1.json")) == 0);
  REQUIRE(run("check " + path("ex1.pqnb") + " --report " + path("r2.json")) == 0);
  std::string r1 = slurp("r1.json"), r2 = slurp("r2.json");
  CHECK(!r1.empty());
  CHECK(r1 == r2);
  CHECK(r1.find("\"overall\": \"pass\"") != std::string::npos);
}
