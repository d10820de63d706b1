// srbf: command-line front end for cycle analysis, duality bounds, activation
// classification and shifted-RBF fitting.
//
// Exit codes: 0 success, 1 input error, 2 numerical failure.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "srbf/experiment.hpp"

namespace {

using srbf::experiment::ExperimentConfig;
using srbf::experiment::ExperimentReport;

void emit(const ExperimentReport& rep, const ExperimentConfig& cfg) {
  for (const auto& line : rep.summary) std::cout << line << '\n';
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
  if (cfg.out_dir) {
    rep.write(*cfg.out_dir);
  } else if (cfg.kind == "classify-activation") {
    std::cout << rep.tables.front().str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shifted radial basis function networks: cycles, duality bounds and fitting"};
  app.set_config("--config", "", "INI/TOML file with option values");
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string points, centroids, grid, targets, out, shifts;
  double tol = 0.0;
  std::size_t dim = 0, max_terms = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "distance grouping tolerance (default 1e-9*(1+max distance))");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", out, "output directory for report.json and CSV files");
  };
  auto add_fit_options = [&](CLI::App* sub) {
    sub->add_option("--activation", cfg.activation, "activation id")->capture_default_str();
    sub->add_option("--shifts", shifts, "shift grid MIN:MAX:COUNT (default: covers observed distances)");
    sub->add_option("--ridge", cfg.ridge, "ridge penalty")->capture_default_str();
  };

  auto* analyze = app.add_subcommand("analyze", "cycle detection, tau iteration, closed paths and orbits");
  analyze->add_option("--points", points, "point file")->required();
  analyze->add_option("--centroids", centroids, "centroid file")->required();
  add_common(analyze);

  auto* fit = app.add_subcommand("fit", "least-squares fit of a shifted RBF network to a target grid");
  fit->add_option("--grid", grid, "grid file with a trailing target column")->required();
  fit->add_option("--centroids", centroids, "fixed centroid file (default: free lattice)");
  fit->add_option("--dim", dim, "input dimension (default: columns - 1)");
  fit->add_option("--lattice", cfg.lattice, "lattice points per axis in free-centroid mode")->capture_default_str();
  fit->add_option("--max-terms", max_terms, "also run a greedy fit with at most this many terms");
  fit->add_option("--greedy-tol", cfg.greedy_tol, "greedy stopping tolerance")->capture_default_str();
  add_fit_options(fit);
  add_common(fit);

  auto* bound = app.add_subcommand("bound", "annihilating functional and lower bound on the uniform error");
  bound->add_option("--points", points, "point file")->required();
  bound->add_option("--centroids", centroids, "centroid file")->required();
  bound->add_option("--targets", targets, "target values, one per point (default: worst case)");
  bound->add_flag("--fit", cfg.fit, "also fit a network over the centroids and report its error");
  add_fit_options(bound);
  add_common(bound);

  auto* classify = app.add_subcommand("classify-activation", "check an activation against the density hypotheses");
  classify->add_option("--activation", cfg.activation, "activation id")->capture_default_str();
  classify->add_option("--dim", dim, "dimension d (default 1)");
  classify->add_option("--p", cfg.p, "exponent p >= 1")->capture_default_str();
  classify->add_option("--out", out, "output directory");

  auto* demo = app.add_subcommand("demo", "run a canned experiment");
  demo->add_option("name", cfg.demo, "demo name")
      ->required()
      ->check(CLI::IsMember(srbf::experiment::demos::names()));
  add_fit_options(demo);
  add_common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!points.empty()) cfg.points = points;
    if (!centroids.empty()) cfg.centroids = centroids;
    if (!grid.empty()) cfg.grid = grid;
    if (!targets.empty()) cfg.targets = targets;
    if (!out.empty()) cfg.out_dir = out;
    if (!shifts.empty()) cfg.shifts = srbf::experiment::parse_shift_grid(shifts);
    if (tol != 0.0) cfg.tol = tol;
    if (dim != 0) cfg.dim = dim;
    if (max_terms != 0) cfg.max_terms = max_terms;

    ExperimentReport rep;
    if (analyze->parsed()) {
      cfg.kind = "analyze";
      rep = srbf::experiment::run_analyze(cfg);
    } else if (fit->parsed()) {
      cfg.kind = "fit";
      rep = srbf::experiment::run_fit(cfg);
    } else if (bound->parsed()) {
      cfg.kind = "bound";
      rep = srbf::experiment::run_bound(cfg);
    } else if (classify->parsed()) {
      cfg.kind = "classify-activation";
      rep = srbf::experiment::run_classify(cfg);
    } else {
      cfg.kind = "demo";
      rep = srbf::experiment::run_demo(cfg.demo, cfg);
    }
    emit(rep, cfg);
  } catch (const srbf::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const srbf::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
