#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsrk/errors.hpp"
#include "tsrk/harness.hpp"
#include "tsrk/problems.hpp"
#include "tsrk/solver.hpp"
#include "tsrk/tableau.hpp"
#include "tsrk/tableau_io.hpp"

namespace {

struct Config {
  std::string method = "order4";
  std::string tableau_file;
  std::string problem = "manufactured-sin";
  std::vector<std::string> params;
  std::size_t N = 32;
  std::size_t levels = 5;
  unsigned samples = 16;
  std::string start = "exact";
  int substeps = 0;
  std::string out;
  bool json = false;
  bool serial = false;
  bool no_restart = false;
  double t_star = 1.0;
};

tsrk::TsrkTableau load_method(const Config& cfg) {
  if (!cfg.tableau_file.empty()) return tsrk::load_tableau(cfg.tableau_file);
  return tsrk::builtin_tableau(cfg.method);
}

tsrk::RfdeProblem load_problem(const Config& cfg) {
  tsrk::ProblemParams params;
  for (const auto& kv : cfg.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw tsrk::Error("--param expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) throw tsrk::Error("--param " + key + ": not a number: '" + value + "'");
    params[key] = x;
  }
  return tsrk::make_problem(cfg.problem, params);
}

tsrk::StartOptions start_options(const Config& cfg) {
  tsrk::StartOptions s;
  s.kind = cfg.start == "substep" ? tsrk::StartKind::Substep : tsrk::StartKind::Exact;
  s.substeps = cfg.substeps;
  s.restart_at_breaking_points = !cfg.no_restart;
  return s;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw tsrk::Error("cannot write " + cfg.out);
  f << text;
}

void add_method_flags(CLI::App* app, Config& cfg) {
  auto* m = app->add_option("--method", cfg.method, "built-in tableau (order4, order5, rk4-embedded, rk3-embedded, euler-embedded)");
  auto* f = app->add_option("--tableau-file", cfg.tableau_file, "tableau file (overrides --method)");
  m->excludes(f);
}

void add_problem_flags(CLI::App* app, Config& cfg) {
  app->add_option("--problem", cfg.problem, "problem name")->capture_default_str();
  app->add_option("--param", cfg.params, "problem parameter key=value (repeatable)");
  app->add_option("--samples-per-step", cfg.samples, "dense samples per step")->capture_default_str()->check(
      CLI::PositiveNumber);
  app->add_option("--start", cfg.start, "starting procedure")->check(CLI::IsMember({"exact", "substep"}))
      ->capture_default_str();
  app->add_option("--substeps", cfg.substeps, "substeps of the starter (0 = automatic)")->check(CLI::NonNegativeNumber);
  app->add_flag("--no-restart", cfg.no_restart, "do not restart at breaking points that fall on mesh nodes");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-step Runge-Kutta methods for retarded functional differential equations"};
  app.require_subcommand(1);
  Config cfg;

  auto* verify = app.add_subcommand("verify", "exact order and zero-stability report");
  add_method_flags(verify, cfg);
  verify->add_flag("--json", cfg.json, "machine-readable output");
  verify->add_option("--out", cfg.out, "output path");

  auto* run = app.add_subcommand("run", "integrate once and print dense samples as CSV");
  add_method_flags(run, cfg);
  add_problem_flags(run, cfg);
  run->add_option("--N", cfg.N, "number of steps")->capture_default_str();
  run->add_option("--out", cfg.out, "output path");

  auto* converge = app.add_subcommand("converge", "refinement study as CSV");
  add_method_flags(converge, cfg);
  add_problem_flags(converge, cfg);
  converge->add_option("--N", cfg.N, "coarsest step count")->capture_default_str();
  converge->add_option("--levels", cfg.levels, "number of halvings + 1")->capture_default_str();
  converge->add_flag("--serial", cfg.serial, "run the ladder sequentially");
  converge->add_option("--out", cfg.out, "output path");

  auto* residual = app.add_subcommand("residual", "local residual versus leading-term prediction");
  add_method_flags(residual, cfg);
  residual->add_option("--problem", cfg.problem, "problem name")->capture_default_str();
  residual->add_option("--param", cfg.params, "problem parameter key=value (repeatable)");
  residual->add_option("--N", cfg.N, "coarsest 1/h")->capture_default_str();
  residual->add_option("--levels", cfg.levels, "number of step sizes")->capture_default_str();
  residual->add_option("--t-star", cfg.t_star, "node t_{n-1} of the probed step")->capture_default_str();
  residual->add_option("--out", cfg.out, "CSV output path (summary goes to stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    const tsrk::TsrkTableau tab = load_method(cfg);
    if (verify->parsed()) {
      const auto report = tsrk::verify(tab);
      emit(cfg, cfg.json ? tsrk::render_json(report) : tsrk::render_text(report));
    } else if (run->parsed()) {
      const auto problem = load_problem(cfg);
      const auto tr = tsrk::integrate(tab, problem, cfg.N, start_options(cfg));
      emit(cfg, tsrk::run_csv(tr, cfg.samples));
    } else if (converge->parsed()) {
      const auto problem = load_problem(cfg);
      tsrk::ConvergenceOptions opt;
      opt.ladder.clear();
      for (std::size_t i = 0, n = cfg.N; i < cfg.levels; ++i, n *= 2) opt.ladder.push_back(n);
      opt.samples_per_step = cfg.samples;
      opt.start = start_options(cfg);
      opt.parallel = !cfg.serial;
      const auto study = tsrk::convergence_study(tab, problem, opt);
      emit(cfg, tsrk::convergence_csv(study));
      if (!study.stability.zero_stable) {
        std::cerr << "note: " << tab.name << " is not zero-stable (v(1) = " << study.stability.v_at_1.to_string()
                  << ")\n";
      }
    } else if (residual->parsed()) {
      const auto problem = load_problem(cfg);
      tsrk::ResidualOptions opt;
      opt.steps.clear();
      double inv = static_cast<double>(cfg.N);
      for (std::size_t i = 0; i < cfg.levels; ++i, inv *= 2) opt.steps.push_back(1.0 / inv);
      opt.t_star = cfg.t_star;
      const auto study = tsrk::residual_study(tab, problem, opt);
      if (cfg.out.empty()) {
        std::cout << tsrk::residual_csv(study);
        std::cerr << tsrk::residual_summary(study);
      } else {
        emit(cfg, tsrk::residual_csv(study));
        std::cout << tsrk::residual_summary(study);
      }
    }
  } catch (const tsrk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
