// End-to-end checks of the command-line tool: exit codes, formats, and the
// reproducibility contract of the verification report.
#include <catch2/catch_amalgamated.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "lorentz/io.hpp"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string temp_path(const std::string& name) {
  return std::string("/tmp/lorentz_cli_") + name;
}

RunResult run_cli(const std::string& args, const std::string& tag) {
  std::string out_path = temp_path("out_" + tag);
  std::string cmd = std::string(LORENTZ2D_BIN) + " " + args + " > " + out_path + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WEXITSTATUS(status);
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::remove(out_path.c_str());
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("rearrange: witness grid and exit codes") {
  std::string in = temp_path("witness.json");
  write_file(in, R"({"hx": 1, "hy": 1, "values": [[1,0],[1,0],[1,1]]})");
  RunResult r = run_cli("rearrange --input " + in + " --mode yx", "re1");
  CHECK(r.code == 0);
  auto grid = lorentz::grid2d_from_json(lorentz::json::parse(r.out));
  CHECK(grid.rows() == std::vector<std::vector<double>>{{1, 1}, {1, 0}, {1, 0}});

  // identity on a doubly decreasing input
  std::string dec = temp_path("dec.json");
  write_file(dec, R"({"hx": 1, "hy": 1, "values": [[4,2],[3,1]]})");
  RunResult rd = run_cli("rearrange --input " + dec + " --mode yx", "re2");
  CHECK(rd.code == 0);
  CHECK(lorentz::grid2d_from_json(lorentz::json::parse(rd.out)).flat() ==
        std::vector<double>{4, 2, 3, 1});

  // malformed JSON and negative values are input errors
  std::string bad = temp_path("bad.json");
  write_file(bad, "{oops");
  CHECK(run_cli("rearrange --input " + bad + " --mode yx", "re3").code == 2);
  std::string neg = temp_path("neg.json");
  write_file(neg, R"({"hx": 1, "hy": 1, "values": [[-1]]})");
  CHECK(run_cli("rearrange --input " + neg + " --mode yx", "re4").code == 2);
  CHECK(run_cli("rearrange --input " + in + " --mode zz", "re5").code == 2);
  std::remove(in.c_str());
  std::remove(dec.c_str());
  std::remove(bad.c_str());
  std::remove(neg.c_str());
}

TEST_CASE("norm: builtin generators reproduce the frozen values") {
  RunResult l2 = run_cli(
      "norm --example r25i --N 4 --example-p 1 --norm lambda2 --u indicator:1 --v const:1 --p 1",
      "n1");
  CHECK(l2.code == 0);
  CHECK_THAT(std::stod(l2.out), Catch::Matchers::WithinRel(25.0 / 12.0, 1e-12));

  RunResult mx = run_cli(
      "norm --example r25i --N 4 --example-p 1 --norm mixed --u indicator:1 --v const:1 "
      "--p 1 --q 1 --order y-then-x",
      "n2");
  CHECK(mx.code == 0);
  CHECK_THAT(std::stod(mx.out), Catch::Matchers::WithinRel(1.0, 1e-12));

  RunResult sq = run_cli("norm --example unit-square --norm lambda2 --p 2", "n3");
  CHECK_THAT(std::stod(sq.out), Catch::Matchers::WithinRel(1.0, 1e-12));

  CHECK(run_cli("norm --example unit-square --norm bogus", "n4").code == 2);
  CHECK(run_cli("norm --example nosuch --norm lambda2", "n5").code == 2);

  // coefficient rule override: geometric quarter series sums to (1-4^-4)/0.75
  RunResult ak = run_cli(
      "norm --example r25ii --N 4 --ak geometric:0.25 --norm mixed --u indicator:1 "
      "--v const:1 --p 1 --q 1 --order x-then-y",
      "n6");
  CHECK(ak.code == 0);
  CHECK_THAT(std::stod(ak.out),
             Catch::Matchers::WithinRel((1.0 - std::pow(0.25, 4)) / 0.75, 1e-12));
}

TEST_CASE("hardy: superlevel JSON and CSV samples") {
  RunResult sl = run_cli("hardy --example unit-square --op s2 --superlevel 0.1", "h1");
  CHECK(sl.code == 0);
  auto j = lorentz::json::parse(sl.out);
  CHECK(j["exact"] == true);
  CHECK_THAT(0.1 * j["measure"].get<double>(),
             Catch::Matchers::WithinRel(1.0 + std::log(10.0), 1e-9));

  RunResult csv = run_cli("hardy --example unit-square --op s2 --points '1,1;2,2'", "h2");
  CHECK(csv.code == 0);
  CHECK(csv.out == "s,t,value\n1,1,1\n2,2,0.25\n");
}

TEST_CASE("weight-check: verdict JSON") {
  RunResult bp = run_cli("weight-check --weight power:1,-0.5 --mode bp --p 2", "w1");
  CHECK(bp.code == 0);
  auto j = lorentz::json::parse(bp.out);
  CHECK(j["member"] == true);
  CHECK_THAT(j["constant"].get<double>(), Catch::Matchers::WithinRel(1.0 / 3.0, 1e-12));

  RunResult b2 = run_cli(
      "weight-check --weight power:1,-0.5*power:1,-0.5 --mode b21-sup --box 4,4 --cells 6,6",
      "w2");
  auto j2 = lorentz::json::parse(b2.out);
  CHECK_THAT(j2["constant"].get<double>(), Catch::Matchers::WithinRel(4.0, 1e-9));

  RunResult binf = run_cli("weight-check --weight power:1,1 --mode b1inf", "w3");
  CHECK(lorentz::json::parse(binf.out)["constant"] == "inf");

  CHECK(run_cli("weight-check --weight power:1,-0.5 --mode nosuch", "w4").code == 2);
}

TEST_CASE("embed: report JSON with inequality check") {
  RunResult r = run_cli(
      "embed --dir forward --p 1 --q 1 --u const:1 --w const:1*const:1 --box 2,2 --cells 3,3 "
      "--trials 10 --seed 9",
      "e1");
  CHECK(r.code == 0);
  auto j = lorentz::json::parse(r.out);
  CHECK_THAT(j["constant"].get<double>(), Catch::Matchers::WithinRel(1.0, 1e-12));
  CHECK(j["inequality_check"]["pass"] == true);
}

TEST_CASE("covering: family file evaluation") {
  std::string fam = temp_path("family.json");
  write_file(fam, R"({"hx": 1, "hy": 1, "heights": [[1,0],[2,2]]})");
  RunResult r = run_cli("covering --family " + fam + " --p 2 --q 1", "c1");
  CHECK(r.code == 0);
  auto j = lorentz::json::parse(r.out);
  CHECK_THAT(j["forward"]["sum"].get<double>(), Catch::Matchers::WithinRel(3.25, 1e-12));
  CHECK_THAT(j["reverse"]["sum"].get<double>(), Catch::Matchers::WithinRel(3.25, 1e-12));
  std::remove(fam.c_str());

  CHECK(run_cli("covering --p 2 --q 1", "c2").code == 2);  // neither family nor search
}

TEST_CASE("paper-verify: small scale passes and reports are byte-identical") {
  RunResult a = run_cli("--json --seed 7 paper-verify --scale small", "pv1");
  RunResult b = run_cli("--json --seed 7 paper-verify --scale small", "pv2");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = lorentz::json::parse(a.out);
  CHECK(j["all_pass"] == true);
  CHECK(j["criteria"].size() == 12);

  CHECK(run_cli("paper-verify --scale nosuch", "pv3").code == 2);
}

TEST_CASE("paper-verify: the mutation hook flips the perturbed entry") {
  RunResult r = run_cli(
      "--json --seed 7 paper-verify --scale small --mutate c09-product-weight-supremum", "pv4");
  CHECK(r.code == 1);
  auto j = lorentz::json::parse(r.out);
  CHECK(j["all_pass"] == false);
  bool found = false;
  for (const auto& c : j["criteria"])
    if (c["id"] == "c09-product-weight-supremum") {
      CHECK(c["pass"] == false);
      found = true;
    } else {
      CHECK(c["pass"] == true);
    }
  CHECK(found);
}
