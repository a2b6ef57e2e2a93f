#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <fstream>

#include "lorentz/io.hpp"

using namespace lorentz;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/lorentz_io_") + name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("2D grid JSON round trip") {
  GridFunction2D f(0.5, 2.0, {{1.0, 0.0}, {3.5, 2.0}});
  json j = grid2d_to_json(f);
  GridFunction2D g = grid2d_from_json(j);
  CHECK(g.hx() == f.hx());
  CHECK(g.hy() == f.hy());
  CHECK(g.flat() == f.flat());
}

TEST_CASE("grid JSON rejects malformed input") {
  CHECK_THROWS_AS(grid2d_from_json(json::parse(R"({"hx": 1.0})")), IoError);
  CHECK_THROWS_AS(grid2d_from_json(json::parse(R"({"hx": 1, "hy": 1, "values": [[-2]]})")), IoError);
  CHECK_THROWS_AS(grid2d_from_json(json::parse(R"({"hx": 0, "hy": 1, "values": [[1]]})")), IoError);
  CHECK_THROWS_AS(load_grid2d("/nonexistent/grid.json"), IoError);
  std::string path = temp_path("broken.json");
  write_file(path, "{not json");
  CHECK_THROWS_AS(load_grid2d(path), IoError);
  std::remove(path.c_str());
}

TEST_CASE("1D grid JSON accepts both width keys") {
  GridFunction1D a = grid1d_from_json(json::parse(R"({"cell_width": 0.5, "values": [1, 2]})"));
  GridFunction1D b = grid1d_from_json(json::parse(R"({"h": 0.5, "values": [1, 2]})"));
  CHECK(a.cell_width() == b.cell_width());
  CHECK(a.values() == b.values());
}

TEST_CASE("weight spec strings") {
  Weight1D c = parse_weight1d("const:2.5");
  CHECK(c.V(2.0) == 5.0);
  Weight1D p = parse_weight1d("power:1,-0.5");
  CHECK(p.power_exponent() == -0.5);
  Weight1D i = parse_weight1d("indicator:2");
  CHECK(i.support_end() == 2.0);
  Weight1D i2 = parse_weight1d("indicator:2,3");
  CHECK(i2.V(10.0) == 6.0);

  std::string path = temp_path("step.json");
  write_file(path, R"({"cell_width": 1.0, "values": [2, 1]})");
  Weight1D s = parse_weight1d("step:" + path);
  CHECK(s.V(2.0) == 3.0);
  std::remove(path.c_str());

  CHECK_THROWS_AS(parse_weight1d("nope"), IoError);
  CHECK_THROWS_AS(parse_weight1d("power:1"), IoError);
  CHECK_THROWS_AS(parse_weight1d("power:1,-2"), IoError);  // alpha <= -1
  CHECK_THROWS_AS(parse_weight1d("gauss:1"), IoError);
}

TEST_CASE("2D weight specs") {
  Weight2D prod = parse_weight2d("indicator:1*const:2");
  CHECK(prod.is_product());
  CHECK(prod.rect_mass(0.0, 1.0, 0.0, 1.0) == 2.0);
  CHECK_THROWS_AS(parse_weight2d("const:1"), IoError);

  std::string path = temp_path("w2.json");
  write_file(path, R"({"hx": 1.0, "hy": 1.0, "values": [[1, 2], [3, 4]]})");
  Weight2D st = parse_weight2d("step2d:" + path);
  CHECK_FALSE(st.is_product());
  CHECK(st.rect_mass(0.0, 2.0, 0.0, 2.0) == 10.0);
  std::remove(path.c_str());
}

TEST_CASE("family JSON with and without explicit empty start") {
  json j = json::parse(R"({"hx": 1.0, "hy": 1.0, "heights": [[1,0],[2,1],[2,2]]})");
  CoveringFamily fam = family_from_json(j);
  CHECK(fam.chain().size() == 4);  // implicit empty set prepended
  CHECK(fam.chain().front().empty());

  json withempty = json::parse(R"({"heights": [[0,0],[2,2]]})");
  CHECK(family_from_json(withempty).chain().size() == 2);

  CHECK_THROWS_AS(family_from_json(json::parse(R"({"heights": [[1,0],[1,0]]})")), IoError);
  CHECK_THROWS_AS(family_from_json(json::parse(R"({"heights": [[1,2]]})")), IoError);
}

TEST_CASE("verdict and report serialization") {
  WeightVerdict v = WeightVerdict::closed_form(kInf, "diverges");
  json j = verdict_to_json(v);
  CHECK(j["constant"] == "inf");
  CHECK(j["member"] == false);

  WeightVerdict f = WeightVerdict::closed_form(2.5);
  CHECK(verdict_to_json(f)["constant"] == 2.5);

  CriterionResult r;
  r.id = "c00-sample";
  r.anchor = "anchor";
  r.expected = "x";
  r.observed = "x";
  r.tolerance = 1e-9;
  r.pass = true;
  r.budget_s = 30.0;
  json rep = verification_report_json({r}, "small", 7, "1.0.0");
  CHECK(rep["all_pass"] == true);
  CHECK(rep["criteria"].size() == 1);
  CHECK(rep["criteria"][0]["id"] == "c00-sample");
  CHECK_FALSE(rep["criteria"][0].contains("runtime_s"));  // reports are reproducible
}
