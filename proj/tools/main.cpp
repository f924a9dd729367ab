#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "lipset/cantor.hpp"
#include "lipset/density.hpp"
#include "lipset/lip_function.hpp"
#include "lipset/oscillation.hpp"
#include "lipset/set_json.hpp"
#include "lipset/verify.hpp"

namespace {

using lipset::Interval;
using lipset::IntervalSet;
using lipset::Rational;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << content;
}

std::string dump_set(const IntervalSet& s) { return lipset::set_to_json(s).dump(2) + "\n"; }

Rational rat(const std::string& s) { return Rational::from_string(s); }

std::vector<Rational> rat_list(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  for (const std::string& s : items) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) out.push_back(rat(tok));
    }
  }
  return out;
}

struct CommonOpts {
  std::string out;
  bool decimals = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("-o,--out", c.out, "output file (default: stdout)");
  cmd->add_flag("--decimals", c.decimals, "add 12-significant-digit decimal columns");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lipset: exact interval-set algebra, one-sided densities, "
               "zig-zag function builder and fat-Cantor constructions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  std::uint64_t seed = 42;
  app.add_option("--format", format, "table output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "seed for randomized sweeps");

  // ---- set ----
  auto* set_cmd = app.add_subcommand("set", "set algebra on set files");
  set_cmd->require_subcommand(1);
  CommonOpts set_common;
  struct {
    std::string a, b, g;
    std::string win_lo, win_hi;
  } set_args;

  auto* set_union = set_cmd->add_subcommand("union", "union of two sets");
  set_union->add_option("a", set_args.a, "set file")->required();
  set_union->add_option("b", set_args.b, "set file")->required();
  add_common(set_union, set_common);

  auto* set_intersect = set_cmd->add_subcommand("intersect", "intersection of two sets");
  set_intersect->add_option("a", set_args.a, "set file")->required();
  set_intersect->add_option("b", set_args.b, "set file")->required();
  add_common(set_intersect, set_common);

  auto* set_complement = set_cmd->add_subcommand("complement", "window \\ set");
  set_complement->add_option("g", set_args.g, "set file")->required();
  std::vector<std::string> set_window;
  set_complement->add_option("--window", set_window, "window endpoints lo hi")
      ->expected(2)
      ->required();
  add_common(set_complement, set_common);

  auto* set_measure = set_cmd->add_subcommand("measure", "total measure of a set");
  set_measure->add_option("a", set_args.a, "set file")->required();
  add_common(set_measure, set_common);

  // ---- build ----
  auto* build_cmd = app.add_subcommand("build", "validate a chain and evaluate f");
  CommonOpts build_common;
  struct {
    std::string chain;
    std::vector<std::string> eval;
    std::vector<std::string> grid;
    std::string tolerance;
    bool diagnostics = false;
  } build_args;
  build_cmd->add_option("chain", build_args.chain, "chain file")->required();
  build_cmd->add_option("--eval", build_args.eval, "points to evaluate (comma separated ok)");
  build_cmd->add_option("--grid", build_args.grid, "uniform grid: lo hi count")->expected(3);
  build_cmd->add_option("--tolerance", build_args.tolerance,
                        "skip levels with 2^-n below this; output becomes an enclosure");
  build_cmd->add_flag("--sosd-diagnostics", build_args.diagnostics,
                      "warn about stage endpoints failing a one-sided density scan");
  add_common(build_cmd, build_common);

  // ---- profile ----
  auto* profile_cmd = app.add_subcommand("profile", "density profiles and scans");
  CommonOpts profile_common;
  struct {
    std::string set;
    std::string point;
    std::vector<std::string> radii;
    bool sosd = false;
    std::string rmax = "1/4", rmin = "1/4096", threshold = "9/10", ratio = "1/2";
  } profile_args;
  profile_cmd->add_option("set", profile_args.set, "set file")->required();
  profile_cmd->add_option("--point", profile_args.point, "evaluation point")->required();
  profile_cmd->add_option("--radii", profile_args.radii,
                          "strictly decreasing radii for a density profile");
  profile_cmd->add_flag("--sosd", profile_args.sosd, "run a one-sided density scan instead");
  profile_cmd->add_option("--rmax", profile_args.rmax, "scan radius upper end");
  profile_cmd->add_option("--rmin", profile_args.rmin, "scan radius lower end");
  profile_cmd->add_option("--threshold", profile_args.threshold, "scan verdict threshold");
  profile_cmd->add_option("--ratio", profile_args.ratio, "scan grid ratio");
  add_common(profile_cmd, profile_common);

  // ---- lipscan ----
  auto* lipscan_cmd = app.add_subcommand("lipscan", "oscillation enclosures over radii");
  CommonOpts lipscan_common;
  struct {
    std::string chain;
    std::vector<std::string> points;
    std::string rmax = "1/8", rmin = "1/65536", ratio = "1/2";
    int refinement = 64;
  } lipscan_args;
  lipscan_cmd->add_option("chain", lipscan_args.chain, "chain file")->required();
  lipscan_cmd->add_option("--points", lipscan_args.points, "points to scan")->required();
  lipscan_cmd->add_option("--rmax", lipscan_args.rmax, "largest radius");
  lipscan_cmd->add_option("--rmin", lipscan_args.rmin, "smallest radius");
  lipscan_cmd->add_option("--ratio", lipscan_args.ratio, "radius grid ratio");
  lipscan_cmd->add_option("--refinement", lipscan_args.refinement, "grid points per window side");
  add_common(lipscan_cmd, lipscan_common);

  // ---- cantor ----
  auto* cantor_cmd = app.add_subcommand("cantor", "recursive open sets and stages");
  cantor_cmd->require_subcommand(1);
  CommonOpts cantor_common;
  struct {
    std::string a = "0", b = "1";
    int k = 1;
    std::string set;
    std::string win_lo = "0", win_hi = "1";
    std::vector<int> levels;
    std::string budget = "1/2";
    int depth = 1;
    long cap = 20000;
    bool critical = false;
    std::string epsilon = "1/4";
    int copies = 1;
    std::string sets_out;
  } cantor_args;

  auto* cantor_level = cantor_cmd->add_subcommand("level", "level-k open set in (a,b)");
  cantor_level->add_option("--a", cantor_args.a, "left endpoint");
  cantor_level->add_option("--b", cantor_args.b, "right endpoint");
  cantor_level->add_option("--k", cantor_args.k, "level")->required();
  add_common(cantor_level, cantor_common);

  auto* cantor_components = cantor_cmd->add_subcommand("components",
                                                       "closed components with level tags");
  cantor_components->add_option("set", cantor_args.set, "open set file")->required();
  cantor_components->add_option("--window-lo", cantor_args.win_lo, "window left end");
  cantor_components->add_option("--window-hi", cantor_args.win_hi, "window right end");
  add_common(cantor_components, cantor_common);

  auto* cantor_finf = cantor_cmd->add_subcommand("finfinity", "nested stage with measure ledger");
  cantor_finf->add_option("--levels", cantor_args.levels, "levels per generation");
  cantor_finf->add_option("--budget", cantor_args.budget, "cap on the removed measure");
  cantor_finf->add_option("--depth", cantor_args.depth, "generations to apply")->required();
  cantor_finf->add_option("--cap", cantor_args.cap, "component materialization cap");
  cantor_finf->add_option("--set-out", cantor_args.sets_out,
                          "also write the accumulated open set (geometry only)");
  add_common(cantor_finf, cantor_common);

  auto* cantor_density = cantor_cmd->add_subcommand("densitycheck",
                                                    "density windows of a stage");
  cantor_density->add_option("--levels", cantor_args.levels, "levels per generation");
  cantor_density->add_option("--budget", cantor_args.budget, "cap on the removed measure");
  cantor_density->add_option("--depth", cantor_args.depth, "generations to apply")->required();
  cantor_density->add_flag("--critical", cantor_args.critical,
                           "exact maxima via all density breakpoints");
  add_common(cantor_density, cantor_common);

  auto* cantor_full = cantor_cmd->add_subcommand("fullmeasure", "tiled stage assembly");
  cantor_full->add_option("--epsilon", cantor_args.epsilon, "uncovered measure bound");
  cantor_full->add_option("--copies", cantor_args.copies, "number of tiles")->required();
  cantor_full->add_option("--depth", cantor_args.depth, "generations per tile");
  cantor_full->add_option("--window-lo", cantor_args.win_lo, "window left end");
  cantor_full->add_option("--window-hi", cantor_args.win_hi, "window right end");
  cantor_full->add_option("--sets-out", cantor_args.sets_out,
                          "write each tile's accumulated open set to PREFIX.tileN.json");
  add_common(cantor_full, cantor_common);

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "run the exact invariant suite");
  CommonOpts verify_common;
  lipset::VerifyOptions verify_opts;
  std::string verify_factor = "1/4";
  verify_cmd->add_option("--suite", verify_opts.suite,
                         "all | interval | density | builder | estimator | cantor");
  verify_cmd->add_option("--breakpoint-factor", verify_factor,
                         "step factor of the breakpoint rule (fault injection)");
  verify_cmd->add_option("--breakpoints", verify_opts.breakpoint_count,
                         "breakpoints checked per stream");
  verify_cmd->add_option("--depth", verify_opts.cantor_depth, "stage depth for cantor checks");
  add_common(verify_cmd, verify_common);

  // Global --format/--seed may be given after any subcommand.
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    for (CLI::App* sub : a->get_subcommands([](const CLI::App*) { return true; })) {
      sub->fallthrough();
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInputError;
  }
  const bool json_format = format == "json";

  try {
    // ---- set ----
    if (set_cmd->parsed()) {
      if (set_union->parsed()) {
        IntervalSet r = lipset::union_of(lipset::load_set_file(set_args.a),
                                         lipset::load_set_file(set_args.b));
        write_output(set_common.out, dump_set(r));
      } else if (set_intersect->parsed()) {
        IntervalSet r = lipset::intersect(lipset::load_set_file(set_args.a),
                                          lipset::load_set_file(set_args.b));
        write_output(set_common.out, dump_set(r));
      } else if (set_complement->parsed()) {
        auto lo = lipset::ext_from_string(set_window[0]);
        auto hi = lipset::ext_from_string(set_window[1]);
        Interval window(lo, hi, lo.finite(), hi.finite());
        IntervalSet r = lipset::complement_in(lipset::load_set_file(set_args.g), window);
        write_output(set_common.out, dump_set(r));
      } else if (set_measure->parsed()) {
        auto m = lipset::measure(lipset::load_set_file(set_args.a));
        std::string s = m.to_string();
        if (set_common.decimals && m.finite()) s += " (" + m.value().to_decimal() + ")";
        write_output(set_common.out, s + "\n");
      }
      return kExitOk;
    }

    // ---- build ----
    if (build_cmd->parsed()) {
      auto chain = lipset::NestedChain::validate(lipset::load_chain_file(build_args.chain));
      if (build_args.diagnostics) {
        for (const auto& w : lipset::chain_sosd_warnings(chain)) {
          std::cerr << "warning: stage " << w.stage << " endpoint " << w.point
                    << " has min max-density " << w.min_max_density << " at radius "
                    << w.worst_radius << "\n";
        }
      }
      lipset::LipFunction f(std::move(chain));

      std::vector<Rational> xs = rat_list(build_args.eval);
      if (!build_args.grid.empty()) {
        Rational lo = rat(build_args.grid[0]);
        Rational hi = rat(build_args.grid[1]);
        long n = std::stol(build_args.grid[2]);
        if (!(lo < hi) || n < 1) throw std::invalid_argument("build: bad grid");
        for (long i = 0; i <= n; ++i)
          xs.push_back(lo + (hi - lo) * Rational(i) / Rational(n));
      }
      if (xs.empty()) throw std::invalid_argument("build: nothing to evaluate "
                                                  "(use --eval or --grid)");
      std::ostringstream os;
      if (!build_args.tolerance.empty()) {
        Rational tol = rat(build_args.tolerance);
        if (json_format) {
          nlohmann::json rows = nlohmann::json::array();
          for (const Rational& x : xs) {
            auto [lo, hi] = f.eval_enclosure(x, tol);
            rows.push_back({{"x", x.to_string()},
                            {"f_lower", lo.to_string()},
                            {"f_upper", hi.to_string()}});
          }
          os << rows.dump(2) << '\n';
        } else {
          os << (build_common.decimals ? "x,f_lower,f_upper,x_dec,f_lower_dec,f_upper_dec\n"
                                       : "x,f_lower,f_upper\n");
          for (const Rational& x : xs) {
            auto [lo, hi] = f.eval_enclosure(x, tol);
            os << x << ',' << lo << ',' << hi;
            if (build_common.decimals)
              os << ',' << x.to_decimal() << ',' << lo.to_decimal() << ',' << hi.to_decimal();
            os << '\n';
          }
        }
      } else if (json_format) {
        nlohmann::json rows = nlohmann::json::array();
        for (const Rational& x : xs)
          rows.push_back({{"x", x.to_string()}, {"f", f.eval(x).to_string()}});
        os << rows.dump(2) << '\n';
      } else if (xs.size() == 1 && build_args.grid.empty() && build_common.out.empty() &&
                 !build_common.decimals) {
        os << f.eval(xs[0]) << '\n';  // plain value for one-shot queries
      } else {
        os << (build_common.decimals ? "x,f(x),x_dec,f_dec\n" : "x,f(x)\n");
        for (const Rational& x : xs) {
          Rational v = f.eval(x);
          os << x << ',' << v;
          if (build_common.decimals) os << ',' << x.to_decimal() << ',' << v.to_decimal();
          os << '\n';
        }
      }
      write_output(build_common.out, os.str());
      return kExitOk;
    }

    // ---- profile ----
    if (profile_cmd->parsed()) {
      IntervalSet e = lipset::load_set_file(profile_args.set);
      Rational x = rat(profile_args.point);
      if (profile_args.sosd) {
        auto rep = lipset::sosd_scan(e, x, rat(profile_args.rmax), rat(profile_args.rmin),
                                     rat(profile_args.threshold), rat(profile_args.ratio));
        nlohmann::json j{{"x", rep.point.to_string()},
                         {"r_min", rep.r_min.to_string()},
                         {"r_max", rep.r_max.to_string()},
                         {"threshold", rep.threshold.to_string()},
                         {"min_max_density", rep.min_max_density.to_string()},
                         {"worst_radius", rep.worst_radius.to_string()},
                         {"verdict", rep.pass ? "PASS" : "FAIL"}};
        write_output(profile_common.out, j.dump(2) + "\n");
        return rep.pass ? kExitOk : kExitVerifyFail;
      }
      std::vector<Rational> radii = rat_list(profile_args.radii);
      if (radii.empty()) throw std::invalid_argument("profile: provide --radii or --sosd");
      auto prof = lipset::density_profile(e, x, radii);
      if (json_format) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : prof.rows)
          rows.push_back({{"x", prof.point.to_string()},
                          {"r", row.radius.to_string()},
                          {"left", row.left.to_string()},
                          {"right", row.right.to_string()},
                          {"max", row.max_density.to_string()}});
        write_output(profile_common.out, rows.dump(2) + "\n");
      } else {
        write_output(profile_common.out, lipset::profile_csv(prof, profile_common.decimals));
      }
      return kExitOk;
    }

    // ---- lipscan ----
    if (lipscan_cmd->parsed()) {
      auto chain = lipset::NestedChain::validate(lipset::load_chain_file(lipscan_args.chain));
      lipset::LipFunction f(std::move(chain));
      std::ostringstream os;
      nlohmann::json all = nlohmann::json::array();
      for (const Rational& x : rat_list(lipscan_args.points)) {
        auto est = lipset::lip_scan(f, x, rat(lipscan_args.rmax), rat(lipscan_args.rmin),
                                    rat(lipscan_args.ratio), lipscan_args.refinement);
        if (json_format) {
          nlohmann::json rows = nlohmann::json::array();
          for (const auto& row : est.rows)
            rows.push_back({{"r", row.radius.to_string()},
                            {"mf_lower", row.lower.to_string()},
                            {"mf_upper", row.upper.to_string()}});
          all.push_back({{"x", est.x.to_string()},
                         {"lip_lower", est.lip_lower.to_string()},
                         {"lip_upper", est.lip_upper.to_string()},
                         {"Lip_lower", est.Lip_lower.to_string()},
                         {"Lip_upper", est.Lip_upper.to_string()},
                         {"rows", std::move(rows)}});
        } else {
          os << lipset::lip_scan_csv(est, lipscan_common.decimals);
        }
      }
      if (json_format) os << all.dump(2) << '\n';
      write_output(lipscan_common.out, os.str());
      return kExitOk;
    }

    // ---- cantor ----
    if (cantor_cmd->parsed()) {
      if (cantor_level->parsed()) {
        IntervalSet g = lipset::levelk_open(rat(cantor_args.a), rat(cantor_args.b), cantor_args.k);
        write_output(cantor_common.out, dump_set(g));
        return kExitOk;
      }
      if (cantor_components->parsed()) {
        IntervalSet g = lipset::load_set_file(cantor_args.set);
        Interval window = Interval::closed(rat(cantor_args.win_lo), rat(cantor_args.win_hi));
        std::ostringstream os;
        if (json_format) {
          nlohmann::json rows = nlohmann::json::array();
          for (const auto& [comp, tag] : lipset::f_components(g, window))
            rows.push_back({{"lo", comp.lo.to_string()},
                            {"hi", comp.hi.to_string()},
                            {"level", tag}});
          os << rows.dump(2) << '\n';
        } else {
          os << "component_lo,component_hi,level\n";
          for (const auto& [comp, tag] : lipset::f_components(g, window))
            os << comp.lo << ',' << comp.hi << ',' << tag << '\n';
        }
        write_output(cantor_common.out, os.str());
        return kExitOk;
      }

      lipset::LevelSchedule schedule;
      if (cantor_args.levels.empty()) {
        schedule = lipset::LevelSchedule::default_for(cantor_args.depth);
      } else {
        schedule.levels = cantor_args.levels;
      }
      schedule.budget = rat(cantor_args.budget);
      lipset::CantorBuildOptions opts;
      opts.component_cap = cantor_args.cap;

      if (cantor_finf->parsed()) {
        auto stage = lipset::build_f_infinity(schedule, cantor_args.depth, opts);
        nlohmann::json gens = nlohmann::json::array();
        for (const auto& g : stage.ledger)
          gens.push_back({{"level", g.level},
                          {"removed", g.added_measure.to_string()},
                          {"complement", g.complement_after.to_string()},
                          {"components", g.component_count.to_string()}});
        nlohmann::json j{{"depth", stage.depth},
                         {"budget", schedule.budget.to_string()},
                         {"geometry_materialized", stage.geometry},
                         {"complement_measure", stage.complement_measure().to_string()},
                         {"removed_measure", stage.removed_measure().to_string()},
                         {"generations", std::move(gens)}};
        write_output(cantor_common.out, j.dump(2) + "\n");
        if (!cantor_args.sets_out.empty()) {
          if (!stage.geometry)
            throw std::invalid_argument("cantor finfinity: geometry elided, no set to write "
                                        "(raise --cap or lower the levels)");
          std::ofstream out(cantor_args.sets_out);
          if (!out) throw std::invalid_argument("cannot open " + cantor_args.sets_out);
          out << lipset::set_to_json(stage.accumulated_open).dump(2) << "\n";
        }
        return kExitOk;
      }
      if (cantor_density->parsed()) {
        auto stage = lipset::build_f_infinity(schedule, cantor_args.depth, opts);
        auto rep = lipset::density_window_check(stage, cantor_args.critical);
        if (json_format) {
          nlohmann::json rows = nlohmann::json::array();
          for (const auto& r : rep.rows)
            rows.push_back({{"component_lo", r.component.lo.to_string()},
                            {"component_hi", r.component.hi.to_string()},
                            {"level", r.level_tag},
                            {"x", r.x.to_string()},
                            {"side", std::string(1, r.side)},
                            {"density", r.density.to_string()}});
          nlohmann::json j{{"rows", std::move(rows)},
                           {"max_density", rep.max_density.to_string()},
                           {"pass", rep.pass}};
          write_output(cantor_common.out, j.dump(2) + "\n");
        } else {
          write_output(cantor_common.out,
                       lipset::density_window_csv(rep, cantor_common.decimals) +
                           "max," + rep.max_density.to_string() + "\n");
        }
        return rep.pass ? kExitOk : kExitVerifyFail;
      }
      if (cantor_full->parsed()) {
        Interval window = Interval::closed(rat(cantor_args.win_lo), rat(cantor_args.win_hi));
        auto fm = lipset::build_full_measure_sosd(window, rat(cantor_args.epsilon),
                                                  cantor_args.copies, cantor_args.depth, opts);
        nlohmann::json tiles = nlohmann::json::array();
        for (const auto& st : fm.stages) {
          nlohmann::json gens = nlohmann::json::array();
          for (const auto& g : st.ledger)
            gens.push_back({{"level", g.level},
                            {"removed", g.added_measure.to_string()},
                            {"complement", g.complement_after.to_string()},
                            {"components", g.component_count.to_string()}});
          tiles.push_back({{"window_lo", st.window.lo.to_string()},
                           {"window_hi", st.window.hi.to_string()},
                           {"complement_measure", st.complement_measure().to_string()},
                           {"generations", std::move(gens)}});
        }
        nlohmann::json j{{"epsilon", fm.epsilon.to_string()},
                         {"gap_measure", fm.gap_measure.to_string()},
                         {"uncovered_measure", fm.uncovered_measure.to_string()},
                         {"tiles", std::move(tiles)}};
        write_output(cantor_common.out, j.dump(2) + "\n");
        if (!cantor_args.sets_out.empty()) {
          for (std::size_t i = 0; i < fm.stages.size(); ++i) {
            const auto& st = fm.stages[i];
            if (!st.geometry)
              throw std::invalid_argument("cantor fullmeasure: tile " + std::to_string(i + 1) +
                                          " geometry elided, raise --cap");
            std::string path = cantor_args.sets_out + ".tile" + std::to_string(i + 1) + ".json";
            std::ofstream out(path);
            if (!out) throw std::invalid_argument("cannot open " + path);
            out << lipset::set_to_json(st.accumulated_open).dump(2) << "\n";
          }
        }
        return kExitOk;
      }
    }

    // ---- verify ----
    if (verify_cmd->parsed()) {
      verify_opts.seed = seed;
      verify_opts.breakpoint_factor = rat(verify_factor);
      auto results = lipset::run_verification(verify_opts);
      write_output(verify_common.out, lipset::verification_json(verify_opts, results) + "\n");
      return lipset::all_pass(results) ? kExitOk : kExitVerifyFail;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
