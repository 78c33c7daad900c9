#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "catch_amalgamated.hpp"
#include "coxcoh/corpus.hpp"
#include "coxcoh/json_io.hpp"

using namespace coxcoh;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(COXCOH_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/coxcoh_cli_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}

std::string corpus_file(const std::string& name) {
  return write_temp(name + ".json", coxeter_matrix_to_json(corpus_entry(name).matrix).dump());
}

}  // namespace

TEST_CASE("corpus properties") {
  CHECK(corpus().size() >= 7);
  for (const auto& entry : corpus()) {
    // round trip through the JSON encoding
    Json j = coxeter_matrix_to_json(entry.matrix);
    CoxeterMatrix back = coxeter_matrix_from_json(j);
    CHECK(back.generators == entry.matrix.generators);
    CHECK(back.m == entry.matrix.m);
  }
  // the free product entry has exactly the three singleton spherical subsets
  CoxeterSystem w(corpus_entry("free-3").matrix);
  auto poset = w.spherical_poset();
  REQUIRE(poset.size() == 4);
  for (const auto& t : poset.subsets) CHECK(popcount(t.mask) <= 1);
}

TEST_CASE("spherical command") {
  auto r = run_cli("spherical " + corpus_file("dihedral-inf"));
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.output);
  REQUIRE(j.at("spherical").size() == 3);
  CHECK(j.at("spherical")[0].at("subset").empty());
  CHECK(j.at("spherical")[1].at("subset")[0] == "s");
}

TEST_CASE("ball command") {
  auto r = run_cli("ball " + corpus_file("dihedral-3") + " --radius 10");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.output);
  CHECK(j.at("count") == 6);
  CHECK(j.at("complete") == true);
}

TEST_CASE("malformed input gives a parse failure") {
  auto path = write_temp("broken.json", "{this is not json");
  auto r = run_cli("spherical " + path);
  CHECK(r.exit_code == 2);

  auto bad = write_temp("badmatrix.json", R"({"generators":["s","t"],"m":[[1,2],[3,1]]})");
  auto r2 = run_cli("spherical " + bad);
  CHECK(r2.exit_code == 3);
}

TEST_CASE("reports are byte deterministic") {
  std::string file = corpus_file("a3");
  auto r1 = run_cli("basis " + file + " --radius 3 --side left");
  auto r2 = run_cli("basis " + file + " --radius 3 --side left");
  CHECK(r1.exit_code == 0);
  CHECK(r1.output == r2.output);

  auto g1 = run_cli("graded " + corpus_file("dihedral-3") + " -p 1 --radius 8");
  auto g2 = run_cli("graded " + corpus_file("dihedral-3") + " -p 1 --radius 8");
  CHECK(g1.exit_code == 0);
  CHECK(g1.output == g2.output);
}

TEST_CASE("element cap via the environment") {
  auto r = run_cli("ball " + corpus_file("free-3") + " --radius 9");
  CHECK(r.exit_code == 0);
  setenv("COXCOH_MAX_ELEMENTS", "5", 1);
  auto capped = run_cli("ball " + corpus_file("free-3") + " --radius 9");
  unsetenv("COXCOH_MAX_ELEMENTS");
  CHECK(capped.exit_code == 5);
}

TEST_CASE("graded action command") {
  auto r = run_cli("graded-action " + corpus_file("dihedral-3") +
                   " -T s,t -s s --radius 8 --side left");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.output);
  REQUIRE(j.at("basis").size() == 1);  // only the longest element
  CHECK(j.at("matrix")[0][0] == "1");
}

TEST_CASE("homology command on the chamber file round trip") {
  // emit the chamber, feed it back through --chamber
  auto r = run_cli("chamber " + corpus_file("dihedral-3"));
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.output);
  auto path = write_temp("chamber_s3.json", j.at("complex").dump());
  auto h = run_cli("homology " + corpus_file("dihedral-3") + " --chamber " + path +
                   " --radius 8 --variant hc");
  CHECK(h.exit_code == 0);
  Json hj = Json::parse(h.output);
  CHECK(hj.at("finite") == true);
  CHECK(hj.at("direct_equals_assembled") == true);
  CHECK(hj.at("direct").at("0").at("betti") == 1);
}

TEST_CASE("hecke command") {
  auto r = run_cli("hecke " + corpus_file("dihedral-3") + " --q s=2,t=2 --radius 8 --graded 0");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.output);
  CHECK(j.at("graded").at("ranks_equal") == true);
  CHECK(j.at("graded").at("bottom_slice_sign_action") == true);
  // conjugate generators must share parameters
  auto bad = run_cli("hecke " + corpus_file("dihedral-3") + " --q s=2,t=3 --radius 8");
  CHECK(bad.exit_code == 3);
}

TEST_CASE("building command with realization") {
  auto chamber = run_cli("chamber " + corpus_file("ra-square"));
  REQUIRE(chamber.exit_code == 0);
  auto path = write_temp("chamber_ra.json",
                         Json::parse(chamber.output).at("complex").dump());
  auto r = run_cli("building " + corpus_file("ra-square") +
                   " --thickness s=2,t=2 --radius 2 --basis s --realize " + path);
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.output);
  CHECK(j.at("chambers") == 9);
  CHECK(j.at("basis").at("independent") == true);
  CHECK(j.at("realize").at("cohomology_equal") == true);
}

TEST_CASE("verify command, single criterion") {
  auto r = run_cli("verify --suite 9");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.output);
  CHECK(j.at("pass") == true);
  REQUIRE(j.at("checks").size() == 1);
  CHECK(j.at("checks")[0].at("criterion") == "9");
}
