#pragma once

// Experiment orchestration behind the command-line tool: runs the analyses,
// collects a JSON record plus CSV tables, and writes them to an output
// directory. CSV tables hold only reproducible numbers; wall-clock timings
// live in report.json.

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "srbf/activations.hpp"
#include "srbf/cycles.hpp"
#include "srbf/duality.hpp"
#include "srbf/errors.hpp"
#include "srbf/geometry.hpp"
#include "srbf/network.hpp"
#include "srbf/point_io.hpp"

namespace srbf::experiment {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::size_t kDefaultShiftCount = 64;
inline constexpr std::size_t kBoundShiftCount = 512;

using Json = nlohmann::ordered_json;

struct ExperimentConfig {
  std::string kind;  // analyze | fit | bound | classify-activation | demo
  std::string demo;
  std::optional<std::filesystem::path> points;
  std::optional<std::filesystem::path> centroids;
  std::optional<std::filesystem::path> grid;
  std::optional<std::filesystem::path> targets;
  std::optional<std::filesystem::path> out_dir;
  std::string activation = "gaussian";
  std::optional<std::size_t> dim;
  double p = 1.0;
  std::optional<ShiftGrid> shifts;
  double ridge = kDefaultRidge;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_terms;
  double greedy_tol = 1e-6;
  std::size_t lattice = 5;
  bool fit = false;

  /// Every referenced input file must exist.
  void validate() const {
    for (const auto* f : {&points, &centroids, &grid, &targets}) {
      if (*f && !std::filesystem::exists(**f)) throw InputError("file not found: " + (*f)->string());
    }
    if (tol) detail::require(*tol > 0.0, "tolerance must be positive");
    detail::require(ridge >= 0.0, "ridge must be nonnegative");
  }
};

/// "MIN:MAX:COUNT"
inline ShiftGrid parse_shift_grid(const std::string& spec) {
  const auto a = spec.find(':');
  const auto b = a == std::string::npos ? a : spec.find(':', a + 1);
  detail::require(b != std::string::npos, "shift grid must look like MIN:MAX:COUNT");
  ShiftGrid g;
  g.min = io::parse_double(spec.substr(0, a), "--shifts");
  g.max = io::parse_double(spec.substr(a + 1, b - a - 1), "--shifts");
  const double count = io::parse_double(spec.substr(b + 1), "--shifts");
  detail::require(count >= 1 && count == std::floor(count), "shift count must be a positive integer");
  detail::require(g.min <= g.max, "shift grid needs MIN <= MAX");
  g.count = static_cast<std::size_t>(count);
  return g;
}

struct CsvTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out.str();
  }
};

struct ExperimentReport {
  Json record = Json::object();
  std::vector<CsvTable> tables;
  std::vector<std::pair<std::string, std::string>> files;  // extra artifacts, e.g. model files
  std::vector<std::string> summary;
  std::vector<std::string> warnings;

  const CsvTable* table(const std::string& name) const {
    for (const auto& t : tables)
      if (t.name == name) return &t;
    return nullptr;
  }

  void write(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& text) {
      std::ofstream out(dir / name, std::ios::binary);
      if (!out) throw InputError("cannot write " + (dir / name).string());
      out << text;
    };
    put("report.json", record.dump(2) + "\n");
    for (const auto& t : tables) put(t.name + ".csv", t.str());
    for (const auto& [name, text] : files) put(name, text);
  }
};

namespace detail {

using srbf::detail::require;
using Clock = std::chrono::steady_clock;

inline double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

inline std::string num(double v) { return io::format_double(v); }
inline std::string num(std::int64_t v) { return std::to_string(v); }
inline std::string num(std::size_t v) { return std::to_string(v); }

inline std::string join(const std::vector<std::size_t>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

inline std::string join(const std::vector<exact::Integer>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

inline Json point_json(const Point& p) { return Json(std::vector<double>(p.coords().begin(), p.coords().end())); }

inline Json points_json(std::span<const Point> pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(point_json(p));
  return a;
}

/// Human-readable equations of the incidence system, e.g. "l1+l2=0".
inline std::vector<std::string> equations(const IncidenceMatrix& A) {
  std::vector<std::string> eqs;
  for (std::size_t r = 0; r < A.rows; ++r) {
    std::string e;
    for (std::size_t c = 0; c < A.cols; ++c) {
      if (A.at(r, c)) e += (e.empty() ? "" : "+") + std::string("l") + std::to_string(A.column_points[c] + 1);
    }
    eqs.push_back(e + "=0");
  }
  return eqs;
}

inline std::string prefixed(const std::string& prefix, const std::string& name) {
  return prefix.empty() ? name : prefix + "_" + name;
}

inline PointConfiguration load_points(const ExperimentConfig& cfg) {
  require(cfg.points.has_value(), "--points is required");
  return PointConfiguration(io::read_points(*cfg.points));
}

inline CentroidSet load_centroids(const ExperimentConfig& cfg) {
  require(cfg.centroids.has_value(), "--centroids is required");
  return CentroidSet(io::read_points(*cfg.centroids));
}

/// Range of the point-to-centroid distances.
inline std::pair<double, double> distance_range(std::span<const Point> pts, std::span<const Point> centroids) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& x : pts)
    for (const auto& c : centroids) {
      const double d = distance(x, c);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  return {lo, hi};
}

inline Json shift_grid_json(const ShiftGrid& g) {
  return Json{{"min", g.min}, {"max", g.max}, {"count", g.count}, {"spacing", g.spacing()}};
}

}  // namespace detail

/// Cycle analysis of X with respect to S: exact cycle test, tau iteration on
/// all of X, and for two centroids the closed-path search and orbits.
inline void analyze_into(ExperimentReport& rep, const PointConfiguration& X, const CentroidSet& S, double tol,
                         const std::string& prefix = "") {
  Json res;
  const auto t0 = detail::Clock::now();
  const auto grouping = group_levels(X, S, tol);
  const auto A = incidence_matrix(grouping);
  const auto witness = detect_cycle(X, S, tol);
  const double cycle_ms = detail::elapsed_ms(t0);

  res["tolerance"] = tol;
  res["points"] = X.size();
  res["centroids"] = S.size();
  Json levels = Json::array();
  for (const auto& c : grouping.centroids) levels.push_back(c.levels.size());
  res["levels_per_centroid"] = levels;
  res["incidence_system"] = detail::equations(A);
  res["cycle"] = witness.has_value();
  rep.summary.push_back(prefix + (prefix.empty() ? "" : ": ") + "cycle " + (witness ? "yes" : "no"));

  CsvTable inc{detail::prefixed(prefix, "incidence"), {"centroid", "level", "value"}, {}};
  for (std::size_t p = 0; p < X.size(); ++p) inc.header.push_back("x" + std::to_string(p + 1));
  for (std::size_t r = 0; r < A.rows; ++r) {
    const auto [ci, lj] = A.row_labels[r];
    std::vector<std::string> row{detail::num(ci + 1), detail::num(lj + 1),
                                 detail::num(grouping.centroids[ci].levels[lj].level)};
    for (std::size_t c = 0; c < A.cols; ++c) row.push_back(std::to_string(A.at(r, c)));
    inc.rows.push_back(std::move(row));
  }
  rep.tables.push_back(std::move(inc));

  if (witness) {
    res["witness"] = witness->lambda();
    res["witness_verified"] = verify_witness(X, S, witness->lambda(), tol);
    rep.summary.push_back("  witness: " + detail::join(witness->lambda()));
    CsvTable w{detail::prefixed(prefix, "witness"), {"point", "lambda"}, {}};
    for (std::size_t p = 0; p < X.size(); ++p) w.rows.push_back({detail::num(p), detail::num(witness->lambda()[p])});
    rep.tables.push_back(std::move(w));
  }

  const auto t1 = detail::Clock::now();
  const auto trace = tau_fixpoint(X.all_indices(), X, S, tol);
  const double tau_ms = detail::elapsed_ms(t1);
  Json iterates = Json::array();
  CsvTable tau{detail::prefixed(prefix, "tau"), {"step", "size", "members"}, {}};
  for (std::size_t s = 0; s < trace.iterates.size(); ++s) {
    iterates.push_back(trace.iterates[s]);
    tau.rows.push_back({detail::num(s), detail::num(trace.iterates[s].size()), detail::join(trace.iterates[s])});
  }
  rep.tables.push_back(std::move(tau));
  res["tau"] = {{"iterates", iterates},
                {"terminal", trace.terminal},
                {"steps", trace.steps},
                {"cycle_free_certified", trace.cycle_free()}};
  rep.summary.push_back("  tau: " + std::to_string(trace.steps) + " step(s), terminal size " +
                        std::to_string(trace.terminal.size()) + (trace.cycle_free() ? " (cycle-free)" : ""));

  Json timings{{"cycle_ms", cycle_ms}, {"tau_ms", tau_ms}};
  if (S.size() == 2) {
    const auto t2 = detail::Clock::now();
    const auto path = find_closed_path(X, S, tol);
    const auto orb = orbits(X, S, tol);
    timings["paths_ms"] = detail::elapsed_ms(t2);
    if (path) {
      const auto pw = path_witness(*path, X, S, tol);
      res["closed_path"] = {{"points", path->points},
                            {"start_relation", to_string(path->start)},
                            {"witness", pw.lambda()},
                            {"witness_verified", verify_witness(X, S, pw.lambda(), tol)}};
      rep.summary.push_back("  closed path: " + detail::join(path->points) + " (starts on " +
                            to_string(path->start) + ")");
      CsvTable cp{detail::prefixed(prefix, "closed_path"), {"position", "point"}, {}};
      for (std::size_t i = 0; i < path->points.size(); ++i)
        cp.rows.push_back({detail::num(i), detail::num(path->points[i])});
      rep.tables.push_back(std::move(cp));
    } else {
      res["closed_path"] = nullptr;
      rep.summary.push_back("  closed path: none");
    }
    res["orbits"] = orb.orbits;
    rep.summary.push_back("  orbits: " + std::to_string(orb.orbits.size()));
    CsvTable ot{detail::prefixed(prefix, "orbits"), {"orbit", "point"}, {}};
    for (std::size_t o = 0; o < orb.orbits.size(); ++o)
      for (PointIndex p : orb.orbits[o]) ot.rows.push_back({detail::num(o), detail::num(p)});
    rep.tables.push_back(std::move(ot));
  }
  rep.record["results"][prefix.empty() ? "analysis" : prefix] = res;
  rep.record["timings_ms"][prefix.empty() ? "analysis" : prefix] = timings;
}

struct BoundOutcome {
  bool cycle = false;
  double bound = 0.0;
  double norm = 0.0;
  std::optional<double> fitted_error_support;
  std::optional<double> fitted_error_all;
};

/// Duality bound for `target` (one value per point of X, or the worst-case
/// target when empty), optionally compared with a least-squares fit over S.
inline BoundOutcome bound_into(ExperimentReport& rep, const PointConfiguration& X, const CentroidSet& S, double tol,
                               std::optional<std::vector<double>> target, const std::vector<Activation>& fit_with,
                               std::optional<ShiftGrid> shifts, double ridge, const std::string& prefix = "") {
  BoundOutcome out;
  Json res;
  const auto witness = detect_cycle(X, S, tol);
  res["cycle"] = witness.has_value();
  const std::string key = prefix.empty() ? "bound" : prefix;
  if (!witness) {
    rep.summary.push_back(key + ": no cycle, no annihilating functional");
    rep.record["results"][key] = res;
    return out;
  }
  out.cycle = true;
  const auto F = AnnihilatingFunctional::from_witness(*witness, X, S, tol);
  if (target) {
    detail::require(target->size() == X.size(), "expected one target value per point");
  } else {
    target = worst_case_target(F, X.size());
  }
  const auto on_support = restrict_to_support(F, *target);
  out.norm = F.norm();
  out.bound = lower_bound(F, on_support);
  res["witness"] = witness->lambda();
  res["support"] = F.support();
  res["norm"] = F.norm();
  res["functional_value"] = functional_apply(F, on_support);
  res["bound"] = out.bound;
  rep.summary.push_back(key + ": norm " + detail::num(F.norm()) + ", lower bound " + detail::num(out.bound));

  CsvTable t{detail::prefixed(prefix, "bound"), {"point", "lambda", "target"}, {}};
  for (std::size_t p = 0; p < X.size(); ++p)
    t.rows.push_back({detail::num(p), detail::num(witness->lambda()[p]), detail::num((*target)[p])});

  if (!fit_with.empty()) {
    const auto [lo, hi] = detail::distance_range(X.points(), S.points());
    const ShiftGrid grid_spec = shifts.value_or(shift_grid_covering(lo, hi, kBoundShiftCount));
    res["shift_grid"] = detail::shift_grid_json(grid_spec);
    const EvaluationGrid grid({X.points().begin(), X.points().end()}, *target);
    CsvTable ft{detail::prefixed(prefix, "fitted"), {"activation", "bound", "error_support", "error_all"}, {}};
    Json fits = Json::array();
    for (const auto& g : fit_with) {
      const auto fit = fit_least_squares(build_dictionary(S, grid_spec, g), grid, ridge);
      double err_support = 0.0;
      for (PointIndex p : F.support())
        err_support = std::max(err_support, std::abs(eval_shifted(fit.model, X[p]) - (*target)[p]));
      out.fitted_error_support = out.fitted_error_support ? std::min(*out.fitted_error_support, err_support) : err_support;
      out.fitted_error_all = out.fitted_error_all ? std::min(*out.fitted_error_all, fit.report.uniform_error)
                                                  : fit.report.uniform_error;
      fits.push_back({{"activation", g.id()},
                      {"error_support", err_support},
                      {"error_all", fit.report.uniform_error},
                      {"rms", fit.report.rms}});
      ft.rows.push_back({g.id(), detail::num(out.bound), detail::num(err_support), detail::num(fit.report.uniform_error)});
      rep.summary.push_back("  fitted (" + g.id() + "): uniform error on support " + detail::num(err_support));
      for (const auto& w : fit.report.warnings) rep.warnings.push_back(g.id() + ": " + w);
    }
    res["fits"] = fits;
    rep.tables.push_back(std::move(ft));
  }
  rep.tables.push_back(std::move(t));
  rep.record["results"][key] = res;
  return out;
}

struct FitOutcome {
  double uniform_error = 0.0;
  double rms = 0.0;
  std::size_t atoms = 0;
  std::optional<double> greedy_error;
};

inline FitOutcome fit_into(ExperimentReport& rep, const Dictionary& dict, const EvaluationGrid& grid, double ridge,
                           std::optional<std::size_t> max_terms, double greedy_tol, const std::string& prefix = "") {
  FitOutcome out;
  const std::string key = prefix.empty() ? "fit" : prefix;
  const auto t0 = detail::Clock::now();
  const auto fit = fit_least_squares(dict, grid, ridge);
  rep.record["timings_ms"][key] = detail::elapsed_ms(t0);
  out.uniform_error = fit.report.uniform_error;
  out.rms = fit.report.rms;
  out.atoms = fit.model.terms().size();

  Json res{{"activation", dict.activation().id()},
           {"fixed_centroids", dict.fixed_centroids()},
           {"centroids", dict.centroids().size()},
           {"shift_grid", detail::shift_grid_json(dict.shifts())},
           {"atoms", dict.size()},
           {"ridge", ridge},
           {"samples", grid.size()},
           {"uniform_error", fit.report.uniform_error},
           {"rms", fit.report.rms},
           {"numerical_rank", fit.report.numerical_rank},
           {"dropped_atoms", fit.report.dropped_atoms.size()}};
  for (const auto& w : fit.report.warnings) rep.warnings.push_back(w);
  rep.summary.push_back(key + ": " + std::to_string(dict.size()) + " atoms, uniform error " +
                        detail::num(fit.report.uniform_error) + ", rms " + detail::num(fit.report.rms));

  CsvTable resid{detail::prefixed(prefix, "residuals"), {"sample"}, {}};
  for (std::size_t i = 0; i < grid.dim(); ++i) resid.header.push_back("x" + std::to_string(i + 1));
  resid.header.insert(resid.header.end(), {"target", "prediction", "residual"});
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const auto& x = grid.samples()[s];
    const double h = eval_shifted(fit.model, x);
    std::vector<std::string> row{detail::num(s)};
    for (std::size_t i = 0; i < x.dim(); ++i) row.push_back(detail::num(x[i]));
    row.insert(row.end(), {detail::num(grid.targets()[s]), detail::num(h), detail::num(h - grid.targets()[s])});
    resid.rows.push_back(std::move(row));
  }
  rep.tables.push_back(std::move(resid));
  std::ostringstream model_text;
  write_model(model_text, fit.model);
  rep.files.emplace_back(detail::prefixed(prefix, "model.txt"), model_text.str());

  if (max_terms) {
    const auto greedy = greedy_fit(dict, grid, *max_terms, greedy_tol);
    out.greedy_error = greedy.uniform_error;
    res["greedy"] = {{"max_terms", *max_terms},
                     {"tolerance", greedy_tol},
                     {"terms", greedy.selected.size()},
                     {"uniform_error", greedy.uniform_error},
                     {"met_tolerance", greedy.met_tolerance},
                     {"selected_atoms", greedy.selected}};
    rep.summary.push_back("  greedy: " + std::to_string(greedy.selected.size()) + " term(s), uniform error " +
                          detail::num(greedy.uniform_error) + (greedy.met_tolerance ? "" : " (tolerance not met)"));
    std::ostringstream gm;
    write_model(gm, greedy.model);
    rep.files.emplace_back(detail::prefixed(prefix, "greedy_model.txt"), gm.str());
  }
  rep.record["results"][key] = res;
  return out;
}

inline Json hypothesis_json(const HypothesisReport& r) {
  auto integral = [](const IntegralEstimate& e) {
    return Json{{"value", e.value}, {"last_change", e.last_change}, {"domain", e.domain}, {"verdict", to_string(e.verdict)}};
  };
  auto limit = [](const LimitEstimate& e) {
    return Json{{"verdict", to_string(e.verdict)}, {"value", e.value}, {"diagnostic", e.diagnostic}};
  };
  return Json{{"activation", r.activation},
              {"dimension", r.dimension},
              {"p", r.p},
              {"bounded_estimate", r.bounded_estimate},
              {"bounded", to_string(r.bounded)},
              {"monotone", to_string(r.monotone)},
              {"nonconstant", to_string(r.nonconstant)},
              {"limit_plus", limit(r.limit_plus)},
              {"limit_minus", limit(r.limit_minus)},
              {"lp_integral", integral(r.lp)},
              {"radial_integral", integral(r.radial)},
              {"eligible", {{"thm2.1", r.eligible_thm21}, {"cor2.1", r.eligible_cor21}, {"thm2.2", r.eligible_thm22}}}};
}

inline CsvTable hypothesis_table(const std::vector<HypothesisReport>& reports) {
  CsvTable t{"classification",
             {"activation", "d", "p", "bounded_estimate", "bounded", "monotone", "nonconstant", "limit_plus",
              "limit_minus", "lp_integral", "lp_verdict", "radial_integral", "radial_verdict", "thm2.1", "cor2.1",
              "thm2.2"},
             {}};
  auto lim = [](const LimitEstimate& e) {
    return e.verdict == Verdict::kPass ? detail::num(e.value) : std::string("none");
  };
  for (const auto& r : reports) {
    t.rows.push_back({r.activation, std::to_string(r.dimension), detail::num(r.p), detail::num(r.bounded_estimate),
                      to_string(r.bounded), to_string(r.monotone), to_string(r.nonconstant), lim(r.limit_plus),
                      lim(r.limit_minus), detail::num(r.lp.value), to_string(r.lp.verdict), detail::num(r.radial.value),
                      to_string(r.radial.verdict), r.eligible_thm21 ? "yes" : "no", r.eligible_cor21 ? "yes" : "no",
                      r.eligible_thm22 ? "yes" : "no"});
  }
  return t;
}

namespace detail {

inline ExperimentReport new_report(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.record["version"] = kVersion;
  rep.record["experiment"] = cfg.kind == "demo" ? "demo " + cfg.demo : cfg.kind;
  Json in{{"activation", cfg.activation}, {"ridge", cfg.ridge}, {"seed", cfg.seed}};
  if (cfg.points) in["points"] = cfg.points->string();
  if (cfg.centroids) in["centroids"] = cfg.centroids->string();
  if (cfg.grid) in["grid"] = cfg.grid->string();
  if (cfg.targets) in["targets"] = cfg.targets->string();
  if (cfg.tol) in["tol"] = *cfg.tol;
  if (cfg.shifts) in["shifts"] = shift_grid_json(*cfg.shifts);
  rep.record["inputs"] = in;
  rep.record["results"] = Json::object();
  rep.record["timings_ms"] = Json::object();
  return rep;
}

inline void finish(ExperimentReport& rep, detail::Clock::time_point start) {
  rep.record["timings_ms"]["total"] = elapsed_ms(start);
  rep.record["warnings"] = rep.warnings;
}

}  // namespace detail

inline ExperimentReport run_analyze(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = detail::Clock::now();
  auto rep = detail::new_report(cfg);
  const auto X = detail::load_points(cfg);
  const auto S = detail::load_centroids(cfg);
  const double tol = cfg.tol.value_or(default_tolerance(X, S));
  analyze_into(rep, X, S, tol);
  detail::finish(rep, start);
  return rep;
}

inline ExperimentReport run_bound(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = detail::Clock::now();
  auto rep = detail::new_report(cfg);
  const auto X = detail::load_points(cfg);
  const auto S = detail::load_centroids(cfg);
  const double tol = cfg.tol.value_or(default_tolerance(X, S));
  std::optional<std::vector<double>> target;
  if (cfg.targets) target = io::read_values(*cfg.targets);
  std::vector<Activation> fit_with;
  if (cfg.fit) fit_with.push_back(activation_from_id(cfg.activation));
  rep.record["inputs"]["tolerance_used"] = tol;
  bound_into(rep, X, S, tol, target, fit_with, cfg.shifts, cfg.ridge);
  detail::finish(rep, start);
  return rep;
}

inline ExperimentReport run_fit(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = detail::Clock::now();
  auto rep = detail::new_report(cfg);
  detail::require(cfg.grid.has_value(), "--grid is required");
  auto data = io::read_grid(*cfg.grid, cfg.dim, true);
  const EvaluationGrid grid(std::move(data.samples), std::move(data.targets));
  const auto g = activation_from_id(cfg.activation);

  std::vector<Point> centroids;
  bool fixed = false;
  if (cfg.centroids) {
    centroids = io::read_points(*cfg.centroids);
    fixed = true;
  } else {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& x : grid.samples())
      for (double v : x.coords()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    centroids = lattice(grid.dim(), lo, hi, cfg.lattice);
    rep.record["inputs"]["lattice_per_axis"] = cfg.lattice;
  }
  const auto [dlo, dhi] = detail::distance_range(grid.samples(), centroids);
  const ShiftGrid shifts = cfg.shifts.value_or(shift_grid_covering(dlo, dhi, kDefaultShiftCount));
  const Dictionary dict = fixed ? build_dictionary(CentroidSet(std::move(centroids)), shifts, g)
                                : build_dictionary(std::move(centroids), shifts, g);
  fit_into(rep, dict, grid, cfg.ridge, cfg.max_terms, cfg.greedy_tol);
  detail::finish(rep, start);
  return rep;
}

inline ExperimentReport run_classify(const ExperimentConfig& cfg) {
  const auto start = detail::Clock::now();
  auto rep = detail::new_report(cfg);
  const auto g = activation_from_id(cfg.activation);
  const std::size_t d = cfg.dim.value_or(1);
  const auto r = classify(g, static_cast<int>(d), cfg.p);
  rep.record["results"]["classification"] = hypothesis_json(r);
  rep.tables.push_back(hypothesis_table({r}));
  rep.summary.push_back(g.id() + " (d=" + std::to_string(d) + ", p=" + detail::num(cfg.p) +
                        "): thm2.1 " + (r.eligible_thm21 ? "yes" : "no") + ", cor2.1 " +
                        (r.eligible_cor21 ? "yes" : "no") + ", thm2.2 " + (r.eligible_thm22 ? "yes" : "no"));
  detail::finish(rep, start);
  return rep;
}

// ---------------------------------------------------------------------------
// Canned demos

namespace demos {

inline CentroidSet two_centroids() { return CentroidSet{Point{0.0, 0.0}, Point{4.0, 0.0}}; }

inline PointConfiguration two_point_cycle() { return PointConfiguration{Point{2.0, 1.0}, Point{2.0, -1.0}}; }

/// Intersection in the upper half plane of |x - (0,0)| = r1 and |x - (4,0)| = r2.
inline Point circle_intersection(double r1, double r2) {
  const double x = (r1 * r1 - r2 * r2 + 16.0) / 8.0;
  return Point{x, std::sqrt(r1 * r1 - x * x)};
}

/// A, B, C, D on the circles |x-c1| = 2, 3 and |x-c2| = 3, 4, ordered so the
/// level equations read l1+l2, l3+l4, l2+l3, l1+l4.
inline PointConfiguration four_point_cycle() {
  return PointConfiguration{circle_intersection(2, 3), circle_intersection(2, 4), circle_intersection(3, 4),
                            circle_intersection(3, 3)};
}

inline EvaluationGrid sincos_grid(std::size_t per_axis = 21) {
  auto samples = lattice(2, -1.0, 1.0, per_axis);
  std::vector<double> f;
  for (const auto& x : samples) f.push_back(std::sin(x[0]) * std::cos(x[1]));
  return EvaluationGrid(std::move(samples), std::move(f));
}

/// Free 5x5 lattice over [-1,1]^2 with 16 shifts covering the observed distances.
inline Dictionary density_dictionary(const EvaluationGrid& grid, const Activation& g) {
  auto centroids = lattice(2, -1.0, 1.0, 5);
  const auto [lo, hi] = detail::distance_range(grid.samples(), centroids);
  return build_dictionary(std::move(centroids), shift_grid_covering(lo, hi, 16), g);
}

inline std::vector<std::string> names() {
  return {"two-point-cycle", "four-point-cycle", "density-2d", "nondensity-duality", "classic-vs-shifted"};
}

}  // namespace demos

inline ExperimentReport run_demo(const std::string& name, ExperimentConfig cfg = {}) {
  cfg.kind = "demo";
  cfg.demo = name;
  const auto start = detail::Clock::now();
  auto rep = detail::new_report(cfg);
  const auto all_builtins = [] {
    std::vector<Activation> v;
    for (const auto& n : builtin_names()) v.push_back(builtin(n));
    return v;
  };

  if (name == "two-point-cycle" || name == "four-point-cycle") {
    const auto X = name == "two-point-cycle" ? demos::two_point_cycle() : demos::four_point_cycle();
    const auto S = demos::two_centroids();
    const double tol = cfg.tol.value_or(default_tolerance(X, S));
    rep.record["inputs"]["points"] = detail::points_json(X.points());
    rep.record["inputs"]["centroids"] = detail::points_json(S.points());
    analyze_into(rep, X, S, tol);
    bound_into(rep, X, S, tol, std::nullopt, {activation_from_id(cfg.activation)}, cfg.shifts, cfg.ridge);
  } else if (name == "density-2d") {
    const auto grid = demos::sincos_grid();
    fit_into(rep, demos::density_dictionary(grid, activation_from_id(cfg.activation)), grid, cfg.ridge,
             cfg.max_terms, cfg.greedy_tol);
  } else if (name == "nondensity-duality") {
    // The four-point cycle plus a few random points around it.
    const auto cycle = demos::four_point_cycle();
    std::vector<Point> pts(cycle.points().begin(), cycle.points().end());
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> coord(-1.0, 5.0);
    for (int i = 0; i < 4; ++i) pts.push_back(Point{coord(rng), coord(rng)});
    const PointConfiguration X(std::move(pts));
    const auto S = demos::two_centroids();
    const double tol = cfg.tol.value_or(default_tolerance(X, S));
    rep.record["inputs"]["points"] = detail::points_json(X.points());
    rep.record["inputs"]["centroids"] = detail::points_json(S.points());
    analyze_into(rep, X, S, tol);
    bound_into(rep, X, S, tol, std::nullopt, all_builtins(), cfg.shifts, cfg.ridge);
  } else if (name == "classic-vs-shifted") {
    const auto grid = demos::sincos_grid();
    const auto g = activation_from_id(cfg.activation);
    const auto shifted = fit_into(rep, demos::density_dictionary(grid, g), grid, cfg.ridge, std::nullopt, 0.0, "shifted");
    std::vector<double> sigmas;
    for (int i = 0; i < 16; ++i) sigmas.push_back(0.25 * std::pow(2.0, 4.0 * i / 15.0));  // 0.25 .. 4
    const auto classic = fit_classic_least_squares(lattice(2, -1.0, 1.0, 5), sigmas, g, grid, cfg.ridge);
    rep.record["results"]["classic"] = {{"smoothing_factors", sigmas.size()},
                                        {"atoms", classic.model.terms().size()},
                                        {"uniform_error", classic.uniform_error},
                                        {"rms", classic.rms}};
    rep.summary.push_back("classic: " + std::to_string(classic.model.terms().size()) + " atoms, uniform error " +
                          detail::num(classic.uniform_error) + ", rms " + detail::num(classic.rms));
    rep.tables.push_back({"comparison",
                          {"form", "atoms", "uniform_error", "rms"},
                          {{"shifted", detail::num(shifted.atoms), detail::num(shifted.uniform_error), detail::num(shifted.rms)},
                           {"classic", detail::num(classic.model.terms().size()), detail::num(classic.uniform_error),
                            detail::num(classic.rms)}}});
  } else {
    throw InputError("unknown demo '" + name + "'");
  }
  detail::finish(rep, start);
  return rep;
}

}  // namespace srbf::experiment
