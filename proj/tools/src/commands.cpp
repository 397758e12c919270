#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "paps/error.hpp"
#include "paps/evosolve.hpp"
#include "paps/fixedpoint.hpp"
#include "paps/fracsolve.hpp"
#include "paps/funcspace.hpp"
#include "paps/kernel.hpp"
#include "paps/measure.hpp"
#include "paps/mittag_leffler.hpp"
#include "paps/nonlinearity.hpp"
#include "paps/report.hpp"
#include "paps_cli/cli.hpp"
#include "paps_cli/config.hpp"
#include "paps_cli/signal_spec.hpp"

namespace paps::cli {

namespace {

Interval parse_window(const std::string& text) {
  const auto v = parse_numbers(text);
  if (v.size() != 2 || !(v[0] < v[1])) throw ConfigError("window must be 'lo,hi' with lo < hi");
  return {v[0], v[1]};
}

SolverConfig solver_config(const Config& c) {
  SolverConfig s;
  s.grid.t0 = c.number("grid.t0", s.grid.t0);
  s.grid.t1 = c.number("grid.t1", s.grid.t1);
  s.grid.h = c.number("grid.h", s.grid.h);
  s.tolerance = c.number("solver.tolerance", s.tolerance);
  s.max_iterations = c.count("solver.max_iter", s.max_iterations);
  s.t_trunc = c.optional_number("solver.t_trunc");
  s.history_fine = c.number("solver.history_fine", s.history_fine);
  s.grading = c.number("solver.grading", s.grading);
  if (c.has("solver.norm_window")) {
    try {
      s.norm_window = parse_window(c.string("solver.norm_window"));
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), static_cast<int>(c.line("solver.norm_window")));
    }
  }
  s.norm_step = c.number("solver.norm_step", s.norm_step);
  try {
    s.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("solver settings: ") + e.what());
  }
  return s;
}

Signal signal_key(const Config& c, const std::string& key) {
  try {
    return parse_signal(c.string(key));
  } catch (const ConfigError& e) {
    throw ConfigError(key + ": " + e.what(), static_cast<int>(c.line(key)));
  }
}

std::optional<Signal> optional_signal(const Config& c, const std::string& key) {
  if (!c.has(key)) return std::nullopt;
  return signal_key(c, key);
}

/// Modal signal from keys <prefix>1 .. <prefix>M of a section; absent keys are zero.
Signal modal_key(const Config& c, const std::string& section, const std::string& prefix,
                 std::size_t modes) {
  for (const auto& k : c.keys(section)) {
    if (k.rfind(prefix, 0) != 0 || k.size() == prefix.size()) continue;
    const std::string index = k.substr(prefix.size());
    const bool digits = index.find_first_not_of("0123456789") == std::string::npos;
    if (!digits) continue;
    const auto i = std::stoul(index);
    if (i == 0 || i > modes) {
      throw ConfigError(section + "." + k + ": mode index outside 1.." + std::to_string(modes),
                        static_cast<int>(c.line(section + "." + k)));
    }
  }
  std::vector<Signal> parts;
  for (std::size_t k = 1; k <= modes; ++k) {
    const std::string key = section + "." + prefix + std::to_string(k);
    parts.push_back(c.has(key) ? signal_key(c, key) : Signal::constant(0.0));
  }
  return modal_signal(parts);
}

std::vector<double> profile_key(const Config& c, const std::string& key, std::size_t modes) {
  std::vector<double> v = c.numbers(key);
  if (v.size() > modes) {
    throw ConfigError(key + ": " + std::to_string(v.size()) + " coefficients for " +
                          std::to_string(modes) + " modes",
                      static_cast<int>(c.line(key)));
  }
  v.resize(modes, 0.0);
  return v;
}

NonlinearitySpec nonlinearity(const Config& c, std::size_t modes) {
  const std::string kind = c.string("nonlinearity.kind");
  if (kind == "zero") return NonlinearitySpec::zero(modes);
  if (kind == "affine") {
    return NonlinearitySpec::affine(c.number("nonlinearity.a"), modal_key(c, "nonlinearity", "h", modes));
  }
  if (kind == "mk-saturating") {
    return NonlinearitySpec::mk_saturating(signal_key(c, "nonlinearity.K"),
                                           profile_key(c, "nonlinearity.R", modes),
                                           modal_key(c, "nonlinearity", "H", modes));
  }
  if (kind == "mk-saturating-v2") {
    return NonlinearitySpec::mk_saturating_v2(signal_key(c, "nonlinearity.K"),
                                              profile_key(c, "nonlinearity.Q", modes),
                                              modal_key(c, "nonlinearity", "H", modes));
  }
  if (kind == "quadratic-scalar") {
    return NonlinearitySpec::quadratic_scalar(signal_key(c, "nonlinearity.b"),
                                              modal_key(c, "nonlinearity", "C", modes));
  }
  if (kind == "quadratic-field") {
    return NonlinearitySpec::quadratic_field(signal_key(c, "nonlinearity.b"),
                                             modal_key(c, "nonlinearity", "C", modes), modes);
  }
  throw ConfigError("unknown nonlinearity kind '" + kind + "'",
                    static_cast<int>(c.line("nonlinearity.kind")));
}

struct Outputs {
  std::string out = "-";
  std::string format;
  std::string report;
};

ReportFormat format_or(const Outputs& o, ReportFormat fallback) {
  return o.format.empty() ? fallback : parse_format(o.format);
}

void write_solver_outputs(const Outputs& o, const Table& data, const Record& report) {
  emit_report(data, format_or(o, ReportFormat::csv), o.out);
  if (!o.report.empty()) emit_report(report, ReportFormat::json, o.report);
  if (o.report.empty() && o.out != "-") {
    // keep a human-readable summary when no report file was requested
    std::cerr << to_json(report);
  }
}

Record run_header(const std::string& command, const std::string& config, const IterationReport& it) {
  Record r;
  r.set("command", command).set("config", config).set("converged", it.converged);
  r.set("iteration", to_record(it));
  return r;
}

std::vector<double> spectrum_of(const Config& c, std::size_t* modes_out) {
  if (c.has("spectrum")) {
    const auto s = c.numbers("spectrum");
    *modes_out = s.size();
    return s;
  }
  const std::size_t m = c.count("modes", 1);
  if (m == 0) throw ConfigError("modes must be positive", static_cast<int>(c.line("modes")));
  std::vector<double> s(m);
  for (std::size_t k = 0; k < m; ++k) s[k] = static_cast<double>((k + 1) * (k + 1));
  *modes_out = m;
  return s;
}

int cmd_solve_frac(const std::string& path, const Outputs& o) {
  const Config c = Config::load(path);
  std::size_t modes = 0;
  FractionalKernelSpec kernel{c.number("gamma"), spectrum_of(c, &modes)};
  const double p = c.number("p", 2.0);
  const double initial = c.number("initial", 0.0);
  const SolverConfig cfg = solver_config(c);
  const NonlinearitySpec f = nonlinearity(c, modes);
  c.finish();
  const FractionalSolution s = solve_fractional(f, kernel, cfg, p, initial);
  Record rep = run_header("solve-frac", path, s.iteration);
  rep.set("hypotheses", to_record(s.report));
  write_solver_outputs(o, grid_table(s.output), rep);
  return kExitOk;
}

int cmd_heat(const std::string& path, const Outputs& o) {
  const Config c = Config::load(path);
  HeatModelParams hp;
  hp.gamma = c.number("gamma", hp.gamma);
  hp.modes = c.count("modes", hp.modes);
  hp.p = c.number("p", hp.p);
  hp.x_points = c.count("x_points", hp.x_points);
  const std::string kind = c.string("nonlinearity.kind", "mk-saturating");
  if (kind != "mk-saturating") {
    throw ConfigError("heat supports nonlinearity.kind = mk-saturating only",
                      static_cast<int>(c.line("nonlinearity.kind")));
  }
  hp.K = signal_key(c, "nonlinearity.K");
  hp.R = profile_key(c, "nonlinearity.R", hp.modes);
  hp.H = modal_key(c, "nonlinearity", "H", hp.modes);
  const SolverConfig cfg = solver_config(c);
  c.finish();
  const HeatModelResult r = heat_model_run(hp, cfg);
  Record rep = run_header("heat", path, r.solve.iteration);
  rep.set("hypotheses", to_record(r.solve.report));
  write_solver_outputs(o, field_table(r.field), rep);
  return kExitOk;
}

int cmd_solve_evo(const std::string& path, const Outputs& o) {
  const Config c = Config::load(path);
  const std::string kind = c.string("family.kind", "diagonal");
  std::size_t modes = 0;
  std::vector<double> rates;
  if (kind == "diagonal") {
    const auto s = c.numbers("family.spectrum");
    rates = s;
    modes = s.size();
  } else if (kind == "dirichlet") {
    modes = c.count("family.modes", 1);
    for (std::size_t k = 1; k <= modes; ++k) rates.push_back(static_cast<double>(k * k));
  } else {
    throw ConfigError("family.kind must be diagonal or dirichlet", static_cast<int>(c.line("family.kind")));
  }
  if (modes == 0) throw ConfigError("family needs at least one mode");
  const std::size_t split = c.count("family.split", 0);
  if (split > modes) throw ConfigError("family.split exceeds the number of modes", static_cast<int>(c.line("family.split")));
  std::vector<bool> stable(modes, true);
  for (std::size_t k = 0; k < split; ++k) stable[k] = false;
  const std::optional<Signal> shift = optional_signal(c, "family.a");
  const double N = c.number("dichotomy.N", 1.0);
  const double delta = c.number("dichotomy.delta");
  const double rho = c.number("rho");
  const double p = c.number("p", 1.0);
  const SolverConfig cfg = solver_config(c);
  const NonlinearitySpec f = nonlinearity(c, modes);
  c.finish();
  DichotomySpec spec(N, delta, rates, stable, shift);
  // a dichotomy constant that the family does not satisfy is a configuration error
  std::vector<double> grid;
  for (double t = cfg.grid.t0; t <= cfg.grid.t0 + 10.0 + 1e-9; t += 0.25) grid.push_back(t);
  const DichotomyCheck dc = verify_dichotomy(spec, grid);
  if (!dc.holds) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "dichotomy bound N e^{-delta|t-s|} fails (worst ratio %.6g)", dc.worst_ratio);
    throw ConfigError(buf);
  }
  const EvolutionSolution s = solve_semilinear_evolution(f, spec, rho, p, cfg);
  Record rep = run_header("solve-evo", path, s.iteration);
  Record h = to_record(s.report);
  h.set("dichotomy_worst_ratio", dc.worst_ratio);
  rep.set("hypotheses", std::move(h));
  write_solver_outputs(o, grid_table(s.output), rep);
  return kExitOk;
}

int cmd_lotka(const std::string& path, const Outputs& o) {
  const Config c = Config::load(path);
  LotkaVolterraParams lp;
  lp.modes = c.count("modes", lp.modes);
  lp.rho = c.number("rho", lp.rho);
  lp.delta = c.optional_number("delta");
  lp.x_points = c.count("x_points", lp.x_points);
  lp.a = signal_key(c, "coefficients.a");
  lp.b = signal_key(c, "coefficients.b");
  lp.C = modal_key(c, "coefficients", "C", lp.modes);
  const SolverConfig cfg = solver_config(c);
  c.finish();
  const LotkaVolterraResult r = lotka_volterra_run(lp, cfg);
  Record rep = run_header("lotka", path, r.solve.iteration);
  rep.set("bounds", to_record(r.report));
  rep.set("hypotheses", to_record(r.solve.report));
  write_solver_outputs(o, field_table(r.field), rep);
  return kExitOk;
}

std::function<double(double)> probe_map(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string tag = spec.substr(0, colon);
  if (tag == "mk") return [](double x) { return std::abs(x) / (1.0 + std::abs(x)); };
  if (tag == "linear") {
    double k = 2.0;
    if (colon != std::string::npos) {
      const std::string rest = spec.substr(colon + 1);
      if (rest.rfind("k=", 0) != 0) throw ConfigError("linear map takes k=<slope>");
      k = parse_number(rest.substr(2));
    }
    return [k](double x) { return k * x; };
  }
  throw ConfigError("unknown map '" + spec + "' (expected mk or linear:k=...)");
}

void usage(std::ostream& os) {
  os << "usage: paps <subcommand> [options]\n\nsubcommands:\n";
  for (const auto& s : subcommands()) os << "  " << s << "\n";
  os << "\nrun 'paps <subcommand> --help' for options\n";
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"norm",     "ergodic", "translations", "modulus",
                                              "ml",       "constants", "probe",      "solve-frac",
                                              "heat",     "solve-evo", "lotka",      "compose-check"};
  return names;
}

int run_command(const std::vector<std::string>& args) {
  if (args.size() < 2) {
    usage(std::cerr);
    return kExitUsage;
  }
  const std::string& first = args[1];
  const bool is_help = first == "-h" || first == "--help";
  const auto& names = subcommands();
  if (!is_help && std::find(names.begin(), names.end(), first) == names.end()) {
    std::cerr << "paps: unknown subcommand '" << first << "'\n";
    usage(std::cerr);
    return kExitUsage;
  }

  CLI::App app{"Stepanov-space analysis and solvers for abstract fractional and semilinear problems", "paps"};
  app.require_subcommand(1);
  Outputs out;
  auto add_outputs = [&](CLI::App* sub) {
    sub->add_option("-o,--out", out.out, "data output path ('-' for stdout)");
    sub->add_option("--format", out.format, "csv or json");
  };

  std::string signal;
  double p = 1.0;
  std::string window = "-20,20";
  double step = 0.01;
  auto* norm = app.add_subcommand("norm", "Stepanov BS^p norm over a window");
  norm->add_option("--signal", signal, "signal spec")->required();
  norm->add_option("--p", p, "exponent p >= 1");
  norm->add_option("--window", window, "lo,hi");
  norm->add_option("--step", step, "window grid step");
  add_outputs(norm);

  std::string density = "exp-left";
  std::string ladder = "10,100,1000";
  std::optional<double> epsilon;
  auto* ergodic = app.add_subcommand("ergodic", "ergodic means along an r ladder");
  ergodic->add_option("--signal", signal, "signal spec")->required();
  ergodic->add_option("--density", density, "lebesgue, exp-left or table:file=path");
  ergodic->add_option("--p", p, "exponent p >= 1");
  ergodic->add_option("--r", ladder, "comma-separated radii");
  ergodic->add_option("--epsilon", epsilon, "also report the superlevel ratio at this level");
  add_outputs(ergodic);

  double tr_eps = 0.1;
  double search = 20.0;
  std::string tr_window = "-10,10";
  std::string hits_path;
  auto* translations = app.add_subcommand("translations", "epsilon-translation numbers");
  translations->add_option("--signal", signal, "signal spec")->required();
  translations->add_option("--epsilon", tr_eps, "defect threshold");
  translations->add_option("--p", p, "exponent p >= 1");
  translations->add_option("--search", search, "scan tau over [0, L]");
  translations->add_option("--window", tr_window, "lo,hi for the defect sup");
  translations->add_option("--hits", hits_path, "CSV of every hit tau");
  add_outputs(translations);

  std::string deltas = "0.01,0.1,1";
  double mod_step = 0.0;
  auto* modulus = app.add_subcommand("modulus", "uniform continuity modulus");
  modulus->add_option("--signal", signal, "signal spec")->required();
  modulus->add_option("--window", window, "lo,hi");
  modulus->add_option("--deltas", deltas, "comma-separated deltas");
  modulus->add_option("--step", mod_step, "sample step (default min delta / 4)");
  add_outputs(modulus);

  double alpha = 0.5;
  double beta = 1.0;
  std::string zs = "-1";
  auto* ml = app.add_subcommand("ml", "Mittag-Leffler function E_{alpha,beta}(z)");
  ml->add_option("--alpha", alpha, "alpha > 0");
  ml->add_option("--beta", beta, "beta");
  ml->add_option("--z", zs, "comma-separated arguments");
  add_outputs(ml);

  std::string gammas = "0.75";
  std::string ps = "2";
  auto* constants = app.add_subcommand("constants", "contraction constant S per (gamma, p)");
  constants->add_option("--gamma", gammas, "comma-separated gamma values");
  constants->add_option("--p", ps, "comma-separated exponents");
  add_outputs(constants);

  std::string map = "mk";
  std::string range = "-1,1";
  std::string eps_list = "0.001,0.01,0.1,1";
  std::size_t per_eps = 400;
  double near_zero = 1e-3;
  auto* probe = app.add_subcommand("probe", "Lipschitz ratio and Meir-Keeler checks of a scalar map");
  probe->add_option("--map", map, "mk or linear:k=<slope>");
  probe->add_option("--range", range, "lo,hi sample range");
  probe->add_option("--eps", eps_list, "comma-separated epsilons");
  probe->add_option("--per-eps", per_eps, "pairs per epsilon annulus");
  probe->add_option("--near-zero", near_zero, "half-width of the extra grid around 0");
  add_outputs(probe);

  std::string config;
  auto add_solver = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", config, "scenario file")->required();
    sub->add_option("--report", out.report, "JSON report path");
    add_outputs(sub);
    return sub;
  };
  auto* solve_frac = add_solver("solve-frac", "fractional Picard solve (modal CSV)");
  auto* heat = add_solver("heat", "fractional heat model (field CSV t,x,u)");
  auto* solve_evo = add_solver("solve-evo", "semilinear evolution solve (modal CSV)");
  auto* lotka = add_solver("lotka", "Lotka-Volterra pipeline (field CSV t,x,u)");

  std::string scenario = "all";
  auto* compose = app.add_subcommand("compose-check", "ergodic decay of f(s, x(s)) - f(s, x1(s))");
  compose->add_option("--scenario", scenario, "scenario name or 'all'");
  compose->add_option("--density", density, "lebesgue, exp-left or table:file=path");
  compose->add_option("--p", p, "exponent p >= 1");
  compose->add_option("--r", ladder, "comma-separated radii");
  add_outputs(compose);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (norm->parsed()) {
      const Signal s = parse_signal(signal);
      const Interval w = parse_window(window);
      const WindowedMax r = bsp_norm(s, StepanovExponent::of(p), w, step);
      Table t({"signal", "p", "window_lo", "window_hi", "norm", "argmax"});
      t.add_cells({signal, format_number(p), format_number(w.lo), format_number(w.hi),
                   format_number(r.value), format_number(r.argmax)});
      emit_report(t, format_or(out, ReportFormat::csv), out.out);
    } else if (ergodic->parsed()) {
      const Signal s = parse_signal(signal);
      const MeasureDensity d = parse_density(density);
      const auto rs = parse_numbers(ladder);
      const DecayCurve means = ergodic_decay(s, d, StepanovExponent::of(p), rs);
      std::vector<std::string> cols{"r", "mean"};
      if (epsilon) cols.push_back("superlevel");
      Table t(cols);
      for (std::size_t i = 0; i < means.size(); ++i) {
        std::vector<double> row{means[i].r, means[i].value};
        if (epsilon) row.push_back(superlevel_ratio(s, d, *epsilon, means[i].r));
        t.add(row);
      }
      emit_report(t, format_or(out, ReportFormat::csv), out.out);
    } else if (translations->parsed()) {
      const Signal s = parse_signal(signal);
      const TranslationScan scan =
          find_translation_numbers(s, tr_eps, StepanovExponent::of(p), {0.0, search}, parse_window(tr_window));
      emit_report(to_record(scan), format_or(out, ReportFormat::json), out.out);
      if (!hits_path.empty()) {
        Table t({"tau"});
        for (double h : scan.hits) t.add({h});
        emit_report(t, ReportFormat::csv, hits_path);
      }
    } else if (modulus->parsed()) {
      const Signal s = parse_signal(signal);
      const auto table = uniform_continuity_modulus(s, parse_window(window), parse_numbers(deltas), mod_step);
      emit_report(modulus_table(table), format_or(out, ReportFormat::csv), out.out);
    } else if (ml->parsed()) {
      Table t({"alpha", "beta", "z", "value"});
      for (double z : parse_numbers(zs)) t.add({alpha, beta, z, mittag_leffler(alpha, beta, z)});
      emit_report(t, format_or(out, ReportFormat::csv), out.out);
    } else if (constants->parsed()) {
      std::vector<SGammaConstant> rows;
      for (double g : parse_numbers(gammas)) {
        for (double q : parse_numbers(ps)) rows.push_back(s_gamma_constant(g, q));
      }
      emit_report(constants_table(rows), format_or(out, ReportFormat::csv), out.out);
    } else if (probe->parsed()) {
      const auto g = probe_map(map);
      const Interval r = parse_window(range);
      const auto eps = parse_numbers(eps_list);
      auto pairs = annulus_pairs(r.lo, r.hi, eps, per_eps);
      const auto near = grid_pairs(-near_zero, near_zero, 41);
      pairs.insert(pairs.end(), near.begin(), near.end());
      emit_report(to_record(contraction_probe(g, pairs, eps)), format_or(out, ReportFormat::json), out.out);
    } else if (solve_frac->parsed()) {
      return cmd_solve_frac(config, out);
    } else if (heat->parsed()) {
      return cmd_heat(config, out);
    } else if (solve_evo->parsed()) {
      return cmd_solve_evo(config, out);
    } else if (lotka->parsed()) {
      return cmd_lotka(config, out);
    } else if (compose->parsed()) {
      const MeasureDensity d = parse_density(density);
      const auto rs = parse_numbers(ladder);
      Table t({"scenario", "r", "value"});
      bool found = false;
      for (const auto& sc : composition_scenarios()) {
        if (scenario != "all" && scenario != sc.name) continue;
        found = true;
        for (const auto& pt : composition_ergodic_check(sc.f, sc.x, sc.x1, d, StepanovExponent::of(p), rs)) {
          t.add_cells({sc.name, format_number(pt.r), format_number(pt.value)});
        }
      }
      if (!found) throw ConfigError("unknown composition scenario '" + scenario + "'");
      emit_report(t, format_or(out, ReportFormat::csv), out.out);
    }
  } catch (const HypothesisError& e) {
    std::cerr << "paps: hypothesis not satisfied: " << e.what() << "\n"
              << "margin: " << format_number(e.margin()) << "\n";
    return kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "paps: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace paps::cli
