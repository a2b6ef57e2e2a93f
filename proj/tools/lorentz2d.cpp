// Command-line front end: rearrangements, Hardy-type averages, Lorentz norm
// functionals, weight-class constants, embedding constants, and the built-in
// verification suite.
//
// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 usage or input error. Reports go to stdout, diagnostics to stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lorentz/embeddings.hpp"
#include "lorentz/generators.hpp"
#include "lorentz/io.hpp"
#include "lorentz/norms.hpp"
#include "lorentz/verify.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using namespace lorentz;

struct GridInput {
  std::string path;
  std::string example;
  std::size_t N = 8;
  double p = 1.0;
  std::string ak_rule;
  CLI::Option* p_opt = nullptr;

  GridFunction2D load(std::optional<double> default_p = std::nullopt) const {
    if (!example.empty()) {
      double gen_p = (p_opt && p_opt->count() == 0 && default_p) ? *default_p : p;
      return builtin_grid(example, N, gen_p, ak_rule);
    }
    if (path.empty()) throw IoError("no input: pass --input <file> or --example <name>");
    return load_grid2d(path);
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--input,-i", path, "grid JSON file ({hx, hy, values})");
    cmd->add_option("--example", example,
                    "builtin input: r25i, r25ii, prop21-witness, unit-square, separation-witness");
    cmd->add_option("--N", N, "size parameter for builtin examples");
    p_opt = cmd->add_option("--example-p", p,
                            "exponent for builtin examples (defaults to the norm exponent)");
    cmd->add_option("--ak", ak_rule, "coefficient rule: harmonic | geometric:<ratio>");
  }
};

std::vector<Point> parse_points(const std::string& s) {
  std::vector<Point> pts;
  std::stringstream ss(s);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    auto comma = pair.find(',');
    if (comma == std::string::npos) throw IoError("points are 's,t' pairs separated by ';'");
    pts.push_back({std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))});
  }
  if (pts.empty()) throw IoError("empty point list");
  return pts;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw IoError("empty list");
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << content;
}

int run(int argc, char** argv) {
  CLI::App app{"two-dimensional rearrangements, Hardy averages, Lorentz functionals"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::uint64_t seed = 42;
  unsigned threads = 1;
  bool as_json = false;
  app.add_option("--seed", seed, "seed for randomized searches")->capture_default_str();
  app.add_option("--threads", threads, "worker threads for exhaustive enumerations")
      ->capture_default_str();
  app.add_flag("--json", as_json, "emit JSON instead of plain text where applicable");

  // ---- rearrange ----
  auto* cmd_re = app.add_subcommand("rearrange", "write a rearranged grid");
  GridInput re_in;
  re_in.attach(cmd_re);
  std::string re_mode = "yx", re_out;
  cmd_re->add_option("--mode", re_mode, "yx | xy | y | x | 1d")->capture_default_str();
  cmd_re->add_option("--output,-o", re_out, "output JSON file (stdout when omitted)");

  // ---- norm ----
  auto* cmd_norm = app.add_subcommand("norm", "evaluate a norm functional");
  GridInput norm_in;
  norm_in.attach(cmd_norm);
  std::string norm_id = "lambda2", norm_u = "const:1", norm_v = "const:1", norm_w, norm_order = "y-then-x";
  double norm_p = 1.0, norm_q = 1.0;
  cmd_norm->add_option("--norm", norm_id, "lambda | lambda2 | mixed | star | norm2 | weak")
      ->capture_default_str();
  cmd_norm->add_option("--u", norm_u, "first-variable weight spec")->capture_default_str();
  cmd_norm->add_option("--v", norm_v, "second-variable weight spec")->capture_default_str();
  cmd_norm->add_option("--w", norm_w, "2D weight spec for lambda2 (overrides --u/--v)");
  cmd_norm->add_option("--p", norm_p, "exponent p")->capture_default_str();
  cmd_norm->add_option("--q", norm_q, "outer exponent q (mixed)")->capture_default_str();
  cmd_norm->add_option("--order", norm_order, "mixed order: y-then-x | x-then-y")
      ->capture_default_str();

  // ---- hardy ----
  auto* cmd_hardy = app.add_subcommand("hardy", "averaging operators and weak-type scans");
  GridInput hardy_in;
  hardy_in.attach(cmd_hardy);
  std::string hardy_op = "s2", hardy_points, hardy_csv, hardy_scan;
  std::string hardy_qcells = "8,8", hardy_box = "0,0";
  double hardy_superlevel = 0.0, hardy_p = 1.0, hardy_bound = 10.0;
  cmd_hardy->add_option("--op", hardy_op, "s2 | fstarstar | s21")->capture_default_str();
  cmd_hardy->add_option("--points", hardy_points, "evaluation points 's,t;s,t;...'");
  cmd_hardy->add_option("--query-cells", hardy_qcells, "midpoint query grid 'mx,my'")
      ->capture_default_str();
  cmd_hardy->add_option("--box", hardy_box, "query/truncation box 'a,b' (data box when 0,0)")
      ->capture_default_str();
  cmd_hardy->add_option("--csv", hardy_csv, "write samples to this CSV file");
  cmd_hardy->add_option("--superlevel", hardy_superlevel, "measure {op f > lambda} at this lambda");
  cmd_hardy->add_option("--weak-scan", hardy_scan, "lambda list 'l1,l2,...' for a weak-type scan");
  cmd_hardy->add_option("--p", hardy_p, "weak-type exponent")->capture_default_str();
  cmd_hardy->add_option("--bound", hardy_bound, "divergence threshold for the scan")
      ->capture_default_str();

  // ---- weight-check ----
  auto* cmd_wc = app.add_subcommand("weight-check", "weight-class constants and verdicts");
  std::string wc_weight, wc_mode = "bp", wc_box = "4,4", wc_cells = "8,8", wc_scan, wc_csv;
  double wc_p = 2.0;
  cmd_wc->add_option("--weight", wc_weight,
                     "1D spec (bp, b1inf) or 2D spec '<u>*<v>' / 'step2d:...' (b2p, b21-sup)")
      ->required();
  cmd_wc->add_option("--mode", wc_mode, "bp | b1inf | b2p | b21-sup")->capture_default_str();
  cmd_wc->add_option("--p", wc_p, "exponent")->capture_default_str();
  cmd_wc->add_option("--box", wc_box, "truncation box 'a,b'")->capture_default_str();
  cmd_wc->add_option("--cells", wc_cells, "staircase grid 'm,n'")->capture_default_str();
  cmd_wc->add_option("--scan-cells", wc_scan, "emit sup per resolution, e.g. '4,6,8,10,12'");
  cmd_wc->add_option("--csv", wc_csv, "CSV output file for --scan-cells");

  // ---- embed ----
  auto* cmd_embed = app.add_subcommand("embed", "best embedding constants over decreasing sets");
  std::string em_dir = "forward", em_u = "const:1", em_w = "const:1*const:1";
  std::string em_box = "4,4", em_cells = "6,6";
  double em_p = 1.0, em_q = 1.0;
  std::size_t em_trials = 0;
  cmd_embed->add_option("--dir", em_dir, "forward | reverse")->capture_default_str();
  cmd_embed->add_option("--p", em_p, "exponent p")->capture_default_str();
  cmd_embed->add_option("--q", em_q, "exponent q")->capture_default_str();
  cmd_embed->add_option("--u", em_u, "1D weight spec")->capture_default_str();
  cmd_embed->add_option("--w", em_w, "2D weight spec")->capture_default_str();
  cmd_embed->add_option("--box", em_box, "box 'a,b'")->capture_default_str();
  cmd_embed->add_option("--cells", em_cells, "cells 'm,n'")->capture_default_str();
  cmd_embed->add_option("--trials", em_trials, "random decreasing functions for the inequality check")
      ->capture_default_str();

  // ---- covering ----
  auto* cmd_cov = app.add_subcommand("covering", "covering-family functionals (p > q)");
  std::string cov_family, cov_u = "const:1", cov_w = "const:1*const:1", cov_cells = "6,6", cov_box = "4,4";
  double cov_p = 2.0, cov_q = 1.0;
  std::size_t cov_search = 0, cov_levels = 3;
  cmd_cov->add_option("--family", cov_family, "family JSON file ({hx, hy, heights: [[...],...]})");
  cmd_cov->add_option("--u", cov_u, "1D weight spec")->capture_default_str();
  cmd_cov->add_option("--w", cov_w, "2D weight spec")->capture_default_str();
  cmd_cov->add_option("--p", cov_p, "exponent p")->capture_default_str();
  cmd_cov->add_option("--q", cov_q, "exponent q (q < p)")->capture_default_str();
  cmd_cov->add_option("--search", cov_search, "random level functions: report the max level integral");
  cmd_cov->add_option("--levels", cov_levels, "levels per random function")->capture_default_str();
  cmd_cov->add_option("--cells", cov_cells, "cells 'm,n' for --search")->capture_default_str();
  cmd_cov->add_option("--box", cov_box, "box 'a,b' for --search")->capture_default_str();

  // ---- paper-verify ----
  auto* cmd_pv = app.add_subcommand("paper-verify", "run the built-in verification suite");
  std::string pv_scale = "full", pv_out, pv_mutate;
  cmd_pv->add_option("--scale", pv_scale, "small | full")->capture_default_str();
  cmd_pv->add_option("--out", pv_out, "also write the JSON report here");
  cmd_pv->add_option("--mutate", pv_mutate, "perturb this criterion id (harness self-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cmd_re->parsed()) {
    GridFunction2D f = re_in.load();
    json out;
    if (re_mode == "1d") {
      out = grid1d_to_json(rearrange_flat(f));
    } else {
      GridFunction2D r = re_mode == "yx"   ? rearrange_yx(f)
                         : re_mode == "xy" ? rearrange_xy(f)
                         : re_mode == "y"  ? rearrange_y(f)
                         : re_mode == "x"  ? rearrange_x(f)
                                           : throw IoError("unknown mode: " + re_mode);
      out = grid2d_to_json(r);
    }
    if (re_out.empty())
      std::cout << out.dump(2) << "\n";
    else
      save_json_file(re_out, out);
    return 0;
  }

  if (cmd_norm->parsed()) {
    GridFunction2D f = norm_in.load(norm_p);
    Weight1D u = parse_weight1d(norm_u);
    Weight1D v = parse_weight1d(norm_v);
    double value = 0.0;
    json detail;
    if (norm_id == "lambda") {
      value = lambda_norm(f, v, norm_p);
    } else if (norm_id == "lambda2") {
      Weight2D w = norm_w.empty() ? Weight2D::product(u, v) : parse_weight2d(norm_w);
      value = lambda2_norm(f, w, norm_p);
    } else if (norm_id == "mixed") {
      MixedOrder order = norm_order == "y-then-x"   ? MixedOrder::YThenX
                         : norm_order == "x-then-y" ? MixedOrder::XThenY
                                                    : throw IoError("unknown order: " + norm_order);
      value = mixed_norm(f, u, v, norm_p, norm_q, order);
    } else if (norm_id == "star" || norm_id == "norm2") {
      RefinedNorm rn = norm_id == "star" ? star_norm(f, u, v, norm_p)
                                         : norm2_starstar(f, u, v, norm_p);
      value = rn.value;
      detail["rel_change"] = rn.rel_change;
      detail["level"] = rn.level;
    } else if (norm_id == "weak") {
      value = weak_lp_norm(f, norm_p);
    } else {
      throw IoError("unknown norm id: " + norm_id);
    }
    if (as_json) {
      json j;
      j["norm"] = norm_id;
      j["value"] = number_or_inf(value);
      for (auto& [k, val] : detail.items()) j[k] = val;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << std::setprecision(15) << value << "\n";
    }
    return 0;
  }

  if (cmd_hardy->parsed()) {
    GridFunction2D f = hardy_in.load();
    OpKind op = hardy_op == "s2"          ? OpKind::S2
                : hardy_op == "fstarstar" ? OpKind::FStarStar
                : hardy_op == "s21"       ? OpKind::S21
                                          : throw IoError("unknown operator: " + hardy_op);
    auto boxv = parse_list(hardy_box);
    Box box{boxv.at(0), boxv.at(1)};
    if (box.x <= 0.0 || box.y <= 0.0) box = Box{f.width(), f.height()};

    if (hardy_superlevel > 0.0) {
      SuperlevelResult r = superlevel_measure(op, f, hardy_superlevel, box);
      json j;
      j["op"] = op_name(op);
      j["lambda"] = hardy_superlevel;
      j["measure"] = r.measure;
      j["exact"] = r.exact;
      j["truncated_lower_bound"] = r.truncated;
      j["rel_tol"] = r.rel_tol;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (!hardy_scan.empty()) {
      WeakScan scan = weak_lp_scan(op, f, hardy_p, parse_list(hardy_scan), box);
      std::ostringstream csv;
      csv << "lambda,measure,weighted,exact\n";
      for (const auto& e : scan.entries)
        csv << e.lambda << ',' << e.measure << ',' << e.weighted << ',' << (e.exact ? 1 : 0) << '\n';
      write_text(hardy_csv, csv.str());
      std::cerr << "sup = " << scan.sup
                << (scan.diverges(hardy_bound) ? " (exceeds bound: divergence verdict)\n" : "\n");
      return 0;
    }
    std::vector<Point> pts;
    if (!hardy_points.empty()) {
      pts = parse_points(hardy_points);
    } else {
      auto cellsv = parse_list(hardy_qcells);
      auto mx = static_cast<std::size_t>(cellsv.at(0)), my = static_cast<std::size_t>(cellsv.at(1));
      for (std::size_t i = 0; i < mx; ++i)
        for (std::size_t j = 0; j < my; ++j)
          pts.push_back({(static_cast<double>(i) + 0.5) * box.x / static_cast<double>(mx),
                         (static_cast<double>(j) + 0.5) * box.y / static_cast<double>(my)});
    }
    OperatorSample sample = op == OpKind::S2          ? s2(f, pts)
                            : op == OpKind::FStarStar ? fstarstar(f, pts)
                                                      : s21(f, pts);
    std::ostringstream csv;
    sample.write_csv(csv);
    write_text(hardy_csv, csv.str());
    return 0;
  }

  if (cmd_wc->parsed()) {
    auto boxv = parse_list(wc_box);
    auto cellsv = parse_list(wc_cells);
    Box box{boxv.at(0), boxv.at(1)};
    SearchOptions sopt;
    sopt.seed = seed;
    sopt.threads = threads;
    WeightVerdict verdict;
    if (wc_mode == "bp") {
      verdict = bp_constant(parse_weight1d(wc_weight), wc_p);
    } else if (wc_mode == "b1inf") {
      verdict = b1inf_constant(parse_weight1d(wc_weight));
    } else if (wc_mode == "b2p") {
      verdict = b2p_membership(parse_weight2d(wc_weight), wc_p, box,
                               static_cast<std::size_t>(cellsv.at(0)), sopt);
    } else if (wc_mode == "b21-sup") {
      Weight2D w = parse_weight2d(wc_weight);
      if (!wc_scan.empty()) {
        std::ostringstream csv;
        csv << "cells,sup\n";
        for (double c : parse_list(wc_scan)) {
          auto cells = static_cast<std::size_t>(c);
          WeightVerdict v = b21_staircase_sup(w, box, cells, cells, sopt);
          csv << cells << ',' << std::setprecision(15) << v.constant << '\n';
          verdict = v;
        }
        write_text(wc_csv, csv.str());
      } else {
        verdict = b21_staircase_sup(w, box, static_cast<std::size_t>(cellsv.at(0)),
                                    static_cast<std::size_t>(cellsv.at(1)), sopt);
      }
    } else {
      throw IoError("unknown mode: " + wc_mode);
    }
    std::cout << verdict_to_json(verdict).dump(2) << "\n";
    return 0;
  }

  if (cmd_embed->parsed()) {
    Weight1D u = parse_weight1d(em_u);
    Weight2D w = parse_weight2d(em_w);
    auto boxv = parse_list(em_box);
    auto cellsv = parse_list(em_cells);
    Box box{boxv.at(0), boxv.at(1)};
    auto mx = static_cast<std::size_t>(cellsv.at(0)), my = static_cast<std::size_t>(cellsv.at(1));
    SearchOptions sopt;
    sopt.seed = seed;
    sopt.threads = threads;
    EmbeddingReport rep;
    if (em_dir == "forward")
      rep = embed_const_forward(u, w, em_p, em_q, box, mx, my, sopt);
    else if (em_dir == "reverse")
      rep = embed_const_reverse(u, w, em_p, em_q, box, mx, my, sopt);
    else
      throw IoError("unknown direction: " + em_dir);
    json j = embedding_report_to_json(rep);
    if (em_trials > 0) {
      InequalityCheck chk = embedding_inequality_check(rep, u, w, em_trials, seed);
      json c;
      c["trials"] = chk.trials;
      c["pass"] = chk.pass;
      c["max_ratio"] = chk.max_ratio;
      c["ratio_at_maximizer"] = chk.ratio_at_maximizer;
      j["inequality_check"] = c;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (cmd_cov->parsed()) {
    Weight1D u = parse_weight1d(cov_u);
    Weight2D w = parse_weight2d(cov_w);
    if (cov_search > 0) {
      auto boxv = parse_list(cov_box);
      auto cellsv = parse_list(cov_cells);
      auto m = static_cast<std::size_t>(cellsv.at(0));
      long n = static_cast<long>(cellsv.at(1));
      double hx = boxv.at(0) / static_cast<double>(m);
      double hy = boxv.at(1) / static_cast<double>(n);
      Rng rng(seed);
      double best_f = 0.0, best_r = 0.0;
      for (std::size_t k = 0; k < cov_search; ++k) {
        GridFunction2D f = random_decreasing_function(rng, hx, hy, m, n, cov_levels);
        if (f.mass() == 0.0) continue;
        best_f = std::max(best_f, level_integral(f, u, w, cov_p, cov_q, EmbedDirection::Forward));
        best_r = std::max(best_r, level_integral(f, u, w, cov_p, cov_q, EmbedDirection::Reverse));
      }
      json j;
      j["search_trials"] = cov_search;
      j["seed"] = seed;
      j["max_level_integral_forward"] = best_f;
      j["max_level_integral_reverse"] = best_r;
      j["note"] = "stochastic lower bounds for the all-families constants";
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (cov_family.empty()) throw IoError("pass --family <file> or --search <trials>");
    CoveringFamily fam = family_from_json(load_json_file(cov_family));
    if (!fam.covers_box(fam.chain().back().max_height()))
      std::cerr << "note: the final family member is not a full rectangle; the chain covers "
                   "only its own staircase\n";
    CoveringFunctionals fwd = covering_functionals_forward(fam, u, w, cov_p, cov_q);
    CoveringFunctionals rev = covering_functionals_reverse(fam, u, w, cov_p, cov_q);
    json j;
    j["p"] = cov_p;
    j["q"] = cov_q;
    j["r"] = Exponents(cov_p, cov_q).r();
    j["forward"] = {{"integral", fwd.integral}, {"sum", fwd.sum}, {"skipped", fwd.skipped},
                    {"quad_tol", fwd.quad_tol}};
    j["reverse"] = {{"integral", rev.integral}, {"sum", rev.sum}, {"skipped", rev.skipped},
                    {"quad_tol", rev.quad_tol}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (cmd_pv->parsed()) {
    VerifyOptions vopt;
    if (pv_scale == "small")
      vopt.scale = VerifyOptions::Scale::Small;
    else if (pv_scale == "full")
      vopt.scale = VerifyOptions::Scale::Full;
    else
      throw IoError("unknown scale: " + pv_scale);
    vopt.seed = seed;
    vopt.mutate = pv_mutate;
    vopt.threads = threads;
    auto results = run_verification(vopt);
    json report = verification_report_json(results, pv_scale, seed, kVersion);
    if (as_json)
      std::cout << report.dump(2) << "\n";
    else
      write_report_table(results, std::cout);
    if (!pv_out.empty()) save_json_file(pv_out, report);
    return all_pass(results) ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lorentz::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
