#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lorentz/embeddings.hpp"
#include "lorentz/grid.hpp"
#include "lorentz/staircase.hpp"
#include "lorentz/verify.hpp"
#include "lorentz/weight_classes.hpp"
#include "lorentz/weights.hpp"

namespace lorentz {

using json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grid files: {"hx": h, "hy": h, "values": [[...], ...]} with the outer
/// index following the first variable.
inline GridFunction2D grid2d_from_json(const json& j) {
  try {
    double hx = j.at("hx").get<double>();
    double hy = j.at("hy").get<double>();
    auto rows = j.at("values").get<std::vector<std::vector<double>>>();
    return GridFunction2D(hx, hy, rows);
  } catch (const json::exception& e) {
    throw IoError(std::string("grid JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("grid JSON: ") + e.what());
  }
}

inline json grid2d_to_json(const GridFunction2D& f) {
  json j;
  j["hx"] = f.hx();
  j["hy"] = f.hy();
  j["values"] = f.rows();
  return j;
}

/// 1D grid files: {"cell_width": h, "values": [...]} ("h" also accepted).
inline GridFunction1D grid1d_from_json(const json& j) {
  try {
    double h = j.contains("cell_width") ? j.at("cell_width").get<double>() : j.at("h").get<double>();
    auto values = j.at("values").get<std::vector<double>>();
    return GridFunction1D(h, std::move(values));
  } catch (const json::exception& e) {
    throw IoError(std::string("grid JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("grid JSON: ") + e.what());
  }
}

inline json grid1d_to_json(const GridFunction1D& f) {
  json j;
  j["cell_width"] = f.cell_width();
  j["values"] = f.values();
  return j;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
}

inline GridFunction2D load_grid2d(const std::string& path) {
  return grid2d_from_json(load_json_file(path));
}

inline GridFunction1D load_grid1d(const std::string& path) {
  return grid1d_from_json(load_json_file(path));
}

namespace detail {

inline std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw IoError("bad number in '" + s + "'");
    }
  }
  return out;
}

}  // namespace detail

/// Weight spec strings: "const:c", "power:c,alpha", "indicator:a" (optionally
/// "indicator:a,c"), "step:<path to 1D grid JSON>".
inline Weight1D parse_weight1d(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw IoError("weight spec needs '<kind>:<args>': " + spec);
  std::string kind = spec.substr(0, colon);
  std::string args = spec.substr(colon + 1);
  try {
    if (kind == "const") {
      auto v = detail::parse_numbers(args);
      if (v.size() != 1) throw IoError("const:c takes one number");
      return Weight1D::constant(v[0]);
    }
    if (kind == "power") {
      auto v = detail::parse_numbers(args);
      if (v.size() != 2) throw IoError("power:c,alpha takes two numbers");
      return Weight1D::power(v[0], v[1]);
    }
    if (kind == "indicator") {
      auto v = detail::parse_numbers(args);
      if (v.size() == 1) return Weight1D::indicator(v[0]);
      if (v.size() == 2) return Weight1D::indicator(v[0], v[1]);
      throw IoError("indicator:a[,c] takes one or two numbers");
    }
    if (kind == "step") return Weight1D::step(load_grid1d(args));
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("weight spec '") + spec + "': " + e.what());
  }
  throw IoError("unknown weight kind '" + kind + "'");
}

/// 2D weight specs: "<u-spec>*<v-spec>" for products, "step2d:<path>" for a
/// grid weight.
inline Weight2D parse_weight2d(const std::string& spec) {
  if (spec.rfind("step2d:", 0) == 0) {
    try {
      return Weight2D::step(load_grid2d(spec.substr(7)));
    } catch (const std::invalid_argument& e) {
      throw IoError(std::string("weight spec '") + spec + "': " + e.what());
    }
  }
  auto star = spec.find('*');
  if (star == std::string::npos)
    throw IoError("2D weight spec is '<u>*<v>' or 'step2d:<path>': " + spec);
  return Weight2D::product(parse_weight1d(spec.substr(0, star)),
                           parse_weight1d(spec.substr(star + 1)));
}

/// Covering family files: {"hx": h, "hy": h, "heights": [[...], ...]} listing
/// the chain from the smallest set up; an implicit empty set is prepended
/// when absent.
inline CoveringFamily family_from_json(const json& j) {
  try {
    double hx = j.value("hx", 1.0);
    double hy = j.value("hy", 1.0);
    auto profiles = j.at("heights").get<std::vector<std::vector<long>>>();
    if (profiles.empty()) throw IoError("family: empty chain");
    std::vector<Staircase> chain;
    bool first_empty = true;
    for (long h : profiles.front())
      if (h != 0) first_empty = false;
    if (!first_empty)
      chain.emplace_back(hx, hy, std::vector<long>(profiles.front().size(), 0));
    for (auto& p : profiles) chain.emplace_back(hx, hy, p);
    return CoveringFamily(std::move(chain));
  } catch (const json::exception& e) {
    throw IoError(std::string("family JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("family JSON: ") + e.what());
  }
}

inline json number_or_inf(double x) {
  if (std::isinf(x)) return json("inf");
  return json(x);
}

inline json verdict_to_json(const WeightVerdict& v) {
  json j;
  j["constant"] = number_or_inf(v.constant);
  j["member"] = v.member;
  j["method"] = method_name(v.method);
  j["exhaustive"] = v.exhaustive;
  j["conclusive"] = v.conclusive;
  j["resolution"] = v.resolution;
  if (!v.note.empty()) j["note"] = v.note;
  if (v.maximizer) j["maximizer_heights"] = v.maximizer->heights();
  return j;
}

/// Canonical verification report. Deterministic for a fixed (version, seed,
/// scale): measured wall-clock times stay in the human table and are replaced
/// here by the budget and a within-budget flag.
inline json verification_report_json(const std::vector<CriterionResult>& results,
                                     const std::string& scale, std::uint64_t seed,
                                     const std::string& version) {
  json j;
  j["suite"] = "paper-verify";
  j["version"] = version;
  j["scale"] = scale;
  j["seed"] = seed;
  json arr = json::array();
  for (const auto& r : results) {
    json e;
    e["id"] = r.id;
    e["anchor"] = r.anchor;
    e["expected"] = r.expected;
    e["observed"] = r.observed;
    e["tolerance"] = r.tolerance;
    e["budget_s"] = r.budget_s;
    e["within_budget"] = r.within_budget;
    e["pass"] = r.pass;
    arr.push_back(e);
  }
  j["criteria"] = arr;
  j["all_pass"] = all_pass(results);
  return j;
}

inline json embedding_report_to_json(const EmbeddingReport& r) {
  json j;
  j["direction"] = direction_name(r.direction);
  j["p"] = r.p;
  j["q"] = r.q;
  if (r.r) j["r"] = *r.r;
  j["constant"] = number_or_inf(r.constant);
  if (r.maximizer) j["maximizer_heights"] = r.maximizer->heights();
  j["box"] = {r.box.x, r.box.y};
  j["cells"] = {r.cells_x, r.cells_y};
  j["evaluated"] = r.evaluated;
  j["skipped"] = r.skipped;
  j["exhaustive"] = r.exhaustive;
  return j;
}

}  // namespace lorentz
