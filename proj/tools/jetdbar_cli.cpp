#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "jetdbar/bench.hpp"
#include "jetdbar/io.hpp"
#include "jetdbar/parallel.hpp"
#include "jetdbar/parse.hpp"
#include "jetdbar/suites.hpp"
#include "jetdbar/version.hpp"

using namespace jetdbar;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Globals {
  std::uint64_t seed = 42;
  int threads = 1;
  std::string out_dir;
  bool reproducible = false;
};

class Clock {
public:
  double ms() const { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count(); }

private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string resolve_out(const Globals& g, const std::string& path) {
  if (path.empty()) return path;
  fs::path p(path);
  if (!g.out_dir.empty() && p.is_relative()) p = fs::path(g.out_dir) / p;
  return fs::absolute(p).lexically_normal().string();
}

std::string resolve_in(const std::string& path) {
  if (path.empty()) return path;
  return fs::absolute(path).lexically_normal().string();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json envelope(const Globals& g, const json& config) {
  json j;
  j["version"] = kVersion;
  j["config"] = config;
  j["config"]["seed"] = g.seed;
  j["config"]["threads"] = g.threads;
  return j;
}

double timing(const Globals& g, double ms) { return g.reproducible ? 0.0 : std::round(ms * 1000) / 1000; }

MultiIndex parse_caps(const std::string& text) {
  std::vector<int> e;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v < 0) throw ParseError("bad cap entry '" + item + "' in --M", 0);
    e.push_back(v);
  }
  if (e.empty()) throw ParseError("--M needs at least one entry", 0);
  return MultiIndex(e);
}

// ---- verify

struct VerifyArgs {
  std::string suite;
  std::string caps;
  int n = 1;
  std::string group = "all";
  std::string space;
  std::string report;
};

int run_verify(const Globals& g, const VerifyArgs& a) {
  json config = {{"subcommand", "verify"}, {"suite", a.suite}};
  std::vector<std::pair<std::vector<IdentityCheck>, double>> batches;
  auto timed = [&](auto&& fn) {
    Clock c;
    auto checks = fn();
    batches.emplace_back(std::move(checks), c.ms());
  };
  std::vector<MultiIndex> caps;
  if (a.suite == "duality" || a.suite == "hefer") {
    caps = a.caps.empty() ? caps_up_to(3, 4) : std::vector<MultiIndex>{parse_caps(a.caps)};
    config["M"] = a.caps.empty() ? json("all kappa<=3 |M|<=4") : json(a.caps);
    config["n"] = a.n;
  }
  if (a.suite == "duality") {
    for (const auto& M : caps) timed([&] { return duality_suite(M, a.n); });
  } else if (a.suite == "hefer") {
    for (const auto& M : caps) timed([&] { return hefer_suite(M, a.n); });
  } else if (a.suite == "annihilator") {
    std::vector<MonomialIdeal> ideals;
    if (!a.space.empty()) {
      SpaceConfig sp = space_from_json(read_json_file(resolve_in(a.space)));
      config["space"] = sp.to_json();
      ideals.push_back(sp.monomial_ideal());
    } else {
      auto s11 = SpaceShape::with_caps(1, MultiIndex{1, 1});
      auto s12 = SpaceShape::with_caps(1, MultiIndex{1, 2});
      auto s21 = SpaceShape::with_caps(1, MultiIndex{2, 1});
      ideals = {MonomialIdeal(s11, {{2, 0}, {1, 1}, {0, 2}}), MonomialIdeal(s12, {{2, 0}, {0, 3}}),
                MonomialIdeal(s21, {{3, 0}, {2, 1}, {0, 2}})};
    }
    for (const auto& J : ideals) timed([&] { return annihilator_suite(J); });
  } else if (a.suite == "example9") {
    config["check"] = a.group;
    timed([&] { return example9_checks(example9_data(), a.group); });
  }
  json results = json::array();
  bool ok = true;
  std::string witness = "0";
  for (const auto& [checks, ms] : batches) {
    for (const auto& c : checks) {
      results.push_back({{"name", c.name}, {"status", c.ok ? "pass" : "fail"}, {"witness", c.residual}, {"elapsed", timing(g, ms)}});
      if (!c.ok && ok) witness = c.name + ": " + c.residual;
      ok = ok && c.ok;
    }
  }
  json out = envelope(g, config);
  out["check"] = a.suite;
  out["status"] = ok ? "pass" : "fail";
  out["residual"] = witness;
  out["results"] = results;
  std::cout << json({{"check", a.suite}, {"status", out["status"]}, {"residual", witness}, {"count", results.size()}}).dump()
            << "\n";
  write_text(resolve_out(g, a.report), out.dump(2) + "\n");
  return ok ? 0 : 1;
}

// ---- solve

struct SolveArgs {
  std::string space, form, random, out, report;
  int grid = 128;
  int degree = 3;
  std::string p = "2";
};

int run_solve(const Globals& g, const SolveArgs& a) {
  Clock clock;
  SpaceConfig sp = space_from_json(read_json_file(resolve_in(a.space)));
  const SpaceShape& sh = sp.shape;
  if (sh.n < 1 || sh.n > 2) throw std::invalid_argument("solve supports n = 1 or 2");
  json config = {{"subcommand", "solve"}, {"space", sp.to_json()}, {"grid", a.grid}, {"p", a.p}};
  FormExpr phi;
  if (!a.form.empty()) {
    phi = form_from_json(read_json_file(resolve_in(a.form)), sh);
    config["form"] = phi.to_json();
  } else {
    auto rng = trial_rng(g.seed, 0);
    if (a.random == "closed") phi = random_closed_form(sh, rng, a.degree);
    else if (a.random == "general") phi = random_form(sh, rng, a.degree);
    else throw std::invalid_argument("solve needs --form or --random closed|general");
    config["random"] = {{"kind", a.random}, {"degree", a.degree}};
  }
  std::vector<double> ps = parse_p_list(a.p);
  int q = phi.is_zero() ? 1 : phi.form_degree();
  if (q < 1) throw std::invalid_argument("degree mismatch: solve expects a (0,q+1)-form with q >= 0");
  auto grid = std::make_shared<const Grid>(GridSpec{sh.n, 1.0, a.grid, 0.5});
  KoppelmanSolver K(grid, KernelSpec::for_grid(grid->spec()));
  GridJetForm f = sample(phi, sh, q, grid);
  GridJetForm u = solve_hat(f, K);
  json lp = json::array();
  auto inner = grid->ball_mask(grid->spec().inner_radius);
  auto outer = grid->ball_mask(grid->spec().radius);
  auto in_pt = pointwise_norm_hat(phi, sh, *grid, outer);
  auto out_pt = pointwise_norm_hat(u, inner);
  for (double p : ps) {
    double lin = lp_norm(in_pt, *grid, p, outer);
    double lout = lp_norm(out_pt, *grid, p, inner);
    lp.push_back({{"p", p_label(p)}, {"lp_in", lin}, {"lp_out", lout}, {"ratio", lin > 0 ? lout / lin : 0.0}});
  }
  json report = envelope(g, config);
  report["grid"] = {{"n", sh.n}, {"points", a.grid}, {"radius", 1.0}, {"inner", 0.5}};
  report["seed"] = g.seed;
  report["residual_sup"] = q == 1 ? json(koppelman_residual(phi, sh, K)) : json(nullptr);
  report["lp_in"] = lp[0]["lp_in"];
  report["lp_out"] = lp[0]["lp_out"];
  report["ratio"] = lp[0]["ratio"];
  report["lp"] = lp;
  report["wall_ms"] = timing(g, clock.ms());
  write_text(resolve_out(g, a.out), grid_form_to_json(u).dump() + "\n");
  write_text(resolve_out(g, a.report), report.dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
  return 0;
}

// ---- bench

struct BenchArgs {
  std::string kind, space, csv, report;
  std::string p = "1,2,4,inf";
  int trials = 50;
  int grid = 0;
  int degree = 3;
};

int run_bench(const Globals& g, const BenchArgs& a) {
  Clock clock;
  if (a.kind != "lp") throw std::invalid_argument("unknown bench '" + a.kind + "'");
  SpaceConfig sp = space_from_json(read_json_file(resolve_in(a.space)));
  BenchConfig cfg;
  cfg.shape = sp.shape;
  if (cfg.shape.n < 1 || cfg.shape.n > 2) throw std::invalid_argument("bench supports n = 1 or 2");
  cfg.points = a.grid > 0 ? a.grid : (cfg.shape.n == 1 ? 64 : 16);
  cfg.ps = parse_p_list(a.p);
  cfg.trials = a.trials;
  cfg.seed = g.seed;
  cfg.degree = a.degree;
  BenchResult res = bench_lp(cfg);
  std::ostringstream csv;
  csv.precision(17);
  csv << "trial,p,ratio\n";
  for (const auto& r : res.rows) csv << r.trial << "," << p_label(r.p) << "," << r.ratio << "\n";
  for (double p : cfg.ps) csv << "max," << p_label(p) << "," << res.max_ratio.at(p) << "\n";
  write_text(resolve_out(g, a.csv), csv.str());
  json config = {{"subcommand", "bench lp"}, {"space", sp.to_json()}, {"grid", cfg.points}, {"p", a.p},
                 {"trials", a.trials}, {"degree", a.degree}};
  json report = envelope(g, config);
  json maxima = json::object();
  for (double p : cfg.ps) maxima[p_label(p)] = res.max_ratio.at(p);
  report["max_ratio"] = maxima;
  report["wall_ms"] = timing(g, clock.ms());
  write_text(resolve_out(g, a.report), report.dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
  return 0;
}

// ---- example9 kernels

struct Example9Args {
  std::string form, report;
  int grid = 32;
  int samples = 25;
};

int run_example9(const Globals& g, const Example9Args& a) {
  Clock clock;
  SpaceShape sh = SpaceShape::with_caps(2, MultiIndex{1, 1});
  FormExpr phi = a.form.empty() ? FormExpr(parse_poly("t1 + z1*zb2")) * FormExpr::differential(VarKind::ZetaBar, 0) +
                                      FormExpr(parse_poly("z2*t2")) * FormExpr::differential(VarKind::ZetaBar, 1)
                                : form_from_json(read_json_file(resolve_in(a.form)), sh);
  KernelBattery b = example9_battery(phi, a.grid, a.samples, g.seed);
  json samples = json::array();
  for (const auto& s : b.samples) {
    samples.push_back({{"z", {s.z[0].real(), s.z[0].imag(), s.z[1].real(), s.z[1].imag()}},
                       {"k2", s.k2_norm},
                       {"k2_majorant", s.k2_majorant},
                       {"k3", s.k3_norm},
                       {"k3_majorant", s.k3_majorant}});
  }
  json config = {{"subcommand", "example9"}, {"grid", a.grid}, {"samples", a.samples}, {"form", phi.to_json()}};
  json report = envelope(g, config);
  report["samples"] = samples;
  report["k2_ratio_max"] = b.k2_ratio_max;
  report["k3_ratio_max"] = b.k3_ratio_max;
  report["k3_value_max"] = b.k3_value_max;
  report["wall_ms"] = timing(g, clock.ms());
  write_text(resolve_out(g, a.report), report.dump(2) + "\n");
  std::cout << json({{"k2_ratio_max", b.k2_ratio_max}, {"k3_ratio_max", b.k3_ratio_max}, {"k3_value_max", b.k3_value_max}})
                   .dump()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jetdbar: jets, residue currents and Koppelman operators"};
  app.set_version_flag("--version", std::string(kVersion));
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out-dir", g.out_dir, "Directory for relative output paths");
  app.add_flag("--reproducible", g.reproducible, "Write zero timings so reports are byte-identical");
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Exact symbolic suites");
  verify->add_option("suite", va.suite, "duality | hefer | annihilator | example9")
      ->required()
      ->check(CLI::IsMember({"duality", "hefer", "annihilator", "example9"}));
  verify->add_option("--M", va.caps, "Cap multi-index, e.g. 2,1 (default: every kappa<=3, |M|<=4)");
  verify->add_option("--n", va.n, "Base dimension")->capture_default_str();
  verify->add_option("--check", va.group, "example9 group")
      ->check(CLI::IsMember({"complex", "hefer", "currents", "all"}))
      ->capture_default_str();
  verify->add_option("--space", va.space, "Space file with an ideal (annihilator)");
  verify->add_option("--report", va.report, "JSON report path");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Apply the Koppelman operator on a grid");
  solve->add_option("--space", sa.space, "Space file")->required();
  auto* form_opt = solve->add_option("--form", sa.form, "Form file");
  solve->add_option("--random", sa.random, "Random form: closed | general")
      ->check(CLI::IsMember({"closed", "general"}))
      ->excludes(form_opt);
  solve->add_option("--degree", sa.degree, "Degree bound of random coefficients")->capture_default_str();
  solve->add_option("--grid", sa.grid, "Points per real axis")->capture_default_str();
  solve->add_option("--p", sa.p, "Exponents, e.g. 1,2,inf")->capture_default_str();
  solve->add_option("--out", sa.out, "Solution JSON path");
  solve->add_option("--report", sa.report, "Report JSON path");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Random L^p ratio battery");
  bench->add_option("kind", ba.kind, "lp")->required()->check(CLI::IsMember({"lp"}));
  bench->add_option("--space", ba.space, "Space file")->required();
  bench->add_option("--p", ba.p, "Exponents")->capture_default_str();
  bench->add_option("--trials", ba.trials, "Number of trials")->capture_default_str();
  bench->add_option("--grid", ba.grid, "Points per real axis (default 64 for n=1, 16 for n=2)");
  bench->add_option("--degree", ba.degree, "Degree bound of the potentials")->capture_default_str();
  bench->add_option("--csv", ba.csv, "CSV output path");
  bench->add_option("--report", ba.report, "Report JSON path");

  Example9Args ea;
  auto* ex9 = app.add_subcommand("example9", "Kernel bounds of the worked C^2 example");
  ex9->add_option("--form", ea.form, "Form file over C^2 x C^2");
  ex9->add_option("--grid", ea.grid, "Points per real axis")->capture_default_str();
  ex9->add_option("--samples", ea.samples, "Number of z samples")->capture_default_str();
  ex9->add_option("--report", ea.report, "Report JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_threads(g.threads);
    if (*verify) return run_verify(g, va);
    if (*solve) return run_solve(g, sa);
    if (*bench) return run_bench(g, ba);
    if (*ex9) return run_example9(g, ea);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
