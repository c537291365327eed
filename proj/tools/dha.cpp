// dha: uncertainty windows, shape-invariance spectra and finite-difference
// cross-checks for the tanh-deformed Heisenberg algebra.
//
// Exit codes: 0 success, 1 usage error, 2 inconsistent algebra,
// 3 numerical or I/O failure, 4 verification tolerance failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dha/algebra_bounds.hpp"
#include "dha/errors.hpp"
#include "dha/grid_oracle.hpp"
#include "dha/report.hpp"
#include "dha/shape_chain.hpp"

namespace {

using dha::report::Cell;
using dha::report::ResultDocument;
using dha::report::Table;

enum ExitCode : int { kOk = 0, kUsage = 1, kInconsistent = 2, kNumerical = 3, kTolerance = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string algebra = "tanh";
  double alpha = 1.0;
  double beta = 0.01;
  double delta = 0.01;
  double v0 = 30.0;
  double sigma = 1.0;
  std::optional<double> xi0;
  std::optional<double> eta0;
  std::optional<double> half_width;
  std::optional<std::size_t> points;
  bool sharp = false;
  bool linear = false;
  bool timestamp = false;
  int debug_formal = 0;
  std::string format = "csv";
  std::string output;
  std::string oracle_check;
};

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ResultDocument make_document(const Options& opt, std::string command, nlohmann::ordered_json params) {
  ResultDocument doc;
  doc.command = std::move(command);
  doc.parameters = std::move(params);
  if (opt.timestamp) doc.timestamp = utc_now();
  return doc;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
  out << text;
  if (!out.flush()) throw IoError(fmt::format("failed writing '{}'", path));
}

void emit(const Options& opt, const ResultDocument& doc) {
  write_text(opt.output, opt.format == "json" ? dha::report::to_json(doc)
                                              : dha::report::to_csv(doc.table));
}

dha::Grid grid_or(const Options& opt, double half_width, std::size_t points) {
  return dha::Grid(opt.half_width.value_or(half_width), opt.points.value_or(points));
}

nlohmann::ordered_json grid_params(const dha::Grid& grid) {
  return {{"L", grid.half_width()}, {"N", grid.points()}, {"h", grid.spacing()}};
}

// (xi0, eta0) for grid checks: explicit values, else the undeformed match of v0.
dha::InitialParams reference_params(const Options& opt) {
  const dha::InitialParams matched = dha::match_initial_params(opt.v0, 0.0, 0.0);
  return {opt.xi0.value_or(matched.xi0), opt.eta0.value_or(matched.eta0)};
}

int cmd_bounds(const Options& opt) {
  ResultDocument doc;
  bool consistent = true;
  double margin = 0.0;
  if (opt.algebra == "quartic") {
    const auto algebra = dha::QuarticAlgebra::unchecked(opt.alpha, opt.beta);
    doc = make_document(opt, "bounds", {{"algebra", "quartic"}, {"alpha", opt.alpha}, {"beta", opt.beta}});
    doc.table = dha::report::bounds_table(algebra);
    const auto report = dha::check_consistency(algebra);
    consistent = report.consistent;
    margin = report.margin;
    if (!consistent) {
      std::cerr << fmt::format("inconsistent algebra: alpha*beta^2 = {} > 4\n",
                               opt.alpha * opt.beta * opt.beta);
    }
  } else {
    const auto algebra = dha::TanhAlgebra::unchecked(opt.alpha, opt.beta, opt.delta);
    doc = make_document(opt, "bounds",
                        {{"algebra", "tanh"}, {"alpha", opt.alpha}, {"beta", opt.beta}, {"delta", opt.delta},
                         {"sharp", opt.sharp}});
    doc.table = dha::report::bounds_table(algebra, opt.sharp);
    const auto report = dha::check_consistency(algebra);
    consistent = report.consistent;
    margin = report.margin;
    if (!consistent) {
      std::cerr << fmt::format("inconsistent algebra: beta*delta = {} > 4\n", opt.beta * opt.delta);
    } else if (opt.sharp && !dha::check_consistency(algebra, dha::Criterion::sharp).consistent) {
      std::cerr << fmt::format("no sharp momentum window: beta*delta = {} > 1\n", opt.beta * opt.delta);
    }
  }
  if (consistent && margin == 0.0) {
    std::cerr << "warning: degenerate algebra (margin 0), windows collapse to points\n";
  }
  emit(opt, doc);
  return consistent ? kOk : kInconsistent;
}

int cmd_spectrum(const Options& opt) {
  const dha::SpectrumResult result = dha::spectrum(opt.v0, opt.beta, opt.delta);
  ResultDocument doc = make_document(
      opt, "spectrum", {{"v0", opt.v0}, {"beta", opt.beta}, {"delta", opt.delta}, {"linear", opt.linear}});
  doc.table = dha::report::spectrum_table(result, opt.linear);
  doc.diagnostics = {{"xi0", result.xi0},
                     {"eta0", result.eta0},
                     {"constant_shift", result.constant_shift},
                     {"n_max", result.n_max}};
  if (opt.debug_formal > 0) {
    const dha::LadderChain chain = dha::build_chain(result.xi0, result.eta0, opt.beta, opt.delta);
    const auto formal = dha::formal_continuation(chain, opt.debug_formal);
    for (std::size_t k = 0; k < formal.size(); ++k) {
      std::cerr << fmt::format("formal n={}: e_chain={:.17g} (not a physical level)\n",
                               result.n_max + 1 + static_cast<int>(k), formal[k]);
    }
  }
  emit(opt, doc);
  return kOk;
}

int cmd_figure(const Options& opt) {
  const dha::SpectrumResult undeformed = dha::spectrum(opt.v0, 0.0, 0.0);
  const dha::SpectrumResult deformed = dha::spectrum(opt.v0, opt.beta, opt.delta);
  ResultDocument doc =
      make_document(opt, "figure", {{"v0", opt.v0}, {"beta", opt.beta}, {"delta", opt.delta}});
  doc.table = dha::report::figure_table(undeformed, deformed);

  bool above = true;
  const std::size_t common = std::min(undeformed.levels.size(), deformed.levels.size());
  for (std::size_t n = 0; n < common; ++n) {
    above = above && deformed.levels[n].e_physical > undeformed.levels[n].e_physical;
  }
  doc.diagnostics = {{"deformed_above_undeformed", above}};

  const bool json = opt.format == "json";
  const std::string path = opt.output.empty() ? (json ? "figure.json" : "figure.csv") : opt.output;
  write_text(path, json ? dha::report::to_json(doc) : dha::report::to_csv(doc.table));
  if (!json) {
    const std::filesystem::path csv(path);
    std::filesystem::path script = csv;
    script.replace_filename(csv.stem().string() + "_plot.py");
    write_text(script.string(), dha::report::plot_script(csv.filename().string()));
    std::cerr << fmt::format("wrote {} and {}\n", csv.string(), script.string());
  }
  return kOk;
}

int oracle_pt(const Options& opt) {
  const auto [xi0, eta0] = reference_params(opt);
  const dha::Grid grid = grid_or(opt, 20.0, 4001);
  const auto levels = dha::solve_reference(xi0, eta0, grid);
  const int expected = dha::compute_n_max(xi0, eta0, 0.0) + 1;

  auto params = grid_params(grid);
  params["xi0"] = xi0;
  params["eta0"] = eta0;
  ResultDocument doc = make_document(opt, "oracle pt", params);
  doc.table.columns = {"n", "eigenvalue", "analytic", "abs_error"};
  double max_error = 0.0;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const double analytic = -std::pow(eta0 - static_cast<double>(n) * xi0, 2);
    const double error = std::abs(levels[n].eigenvalue - analytic);
    max_error = std::max(max_error, error);
    doc.table.rows.push_back({static_cast<long long>(n), levels[n].eigenvalue, analytic, error});
  }
  const bool pass = static_cast<int>(levels.size()) == expected && max_error <= 5e-3;
  doc.diagnostics = {{"bound_states", levels.size()},
                     {"expected_bound_states", expected},
                     {"max_abs_error", max_error},
                     {"tolerance", 5e-3},
                     {"pass", pass}};
  emit(opt, doc);
  std::cerr << fmt::format("oracle pt: {} bound states (expected {}), max |error| {:.3g} (tol 5e-3): {}\n",
                           levels.size(), expected, max_error, pass ? "pass" : "FAIL");
  return pass ? kOk : kTolerance;
}

int oracle_linear(const Options& opt) {
  const auto [xi0, eta0] = reference_params(opt);
  const dha::Grid grid = grid_or(opt, 12.0, 2401);
  const dha::HlinCheck check = dha::hlin_expectation_check(xi0, eta0, opt.beta, opt.delta, grid);

  std::vector<std::string> status(check.rows.size());
  bool pass = true;
  nlohmann::ordered_json nmax_diag = nullptr;
  for (std::size_t k = 0; k < check.rows.size(); ++k) {
    const dha::HlinRow& row = check.rows[k];
    if (row.n > check.n_max) {
      status[k] = "beyond-n_max";
      continue;
    }
    if (row.is_n_max) {
      const auto refinement = dha::refinement_sweep(xi0, eta0, opt.beta, opt.delta, grid, row.n);
      const auto sweep =
          dha::n_max_length_sweep(xi0, eta0, opt.beta, opt.delta, grid.spacing(), {10.0, 15.0, 20.0});
      const bool length_divergent = sweep.strictly_increasing && sweep.relative_spread > 0.1;
      const bool divergent = length_divergent || !refinement.converging;
      status[k] = divergent ? "divergent" : (row.within_tolerance ? "pass" : "fail");
      pass = pass && (divergent || row.within_tolerance);
      nmax_diag = {{"n", row.n},
                   {"refinement",
                    {{"h", refinement.coarse_spacing},
                     {"deviation_h", refinement.coarse_deviation},
                     {"deviation_h_over_2", refinement.fine_deviation},
                     {"converging", refinement.converging}}},
                   {"length_sweep",
                    {{"L", sweep.half_widths},
                     {"expectation", sweep.expectations},
                     {"strictly_increasing", sweep.strictly_increasing},
                     {"relative_spread", sweep.relative_spread}}}};
      std::cerr << fmt::format(
          "n_max={}: |dev| {:.4g} at h, {:.4g} at h/2; L-sweep {{10,15,20}} -> {:.6f} {:.6f} {:.6f} "
          "(spread {:.3g}); {}\n",
          row.n, refinement.coarse_deviation, refinement.fine_deviation, sweep.expectations[0],
          sweep.expectations[1], sweep.expectations[2], sweep.relative_spread, status[k]);
      continue;
    }
    status[k] = row.within_tolerance ? "pass" : "fail";
    pass = pass && row.within_tolerance;
  }

  auto params = grid_params(grid);
  params.update({{"xi0", xi0}, {"eta0", eta0}, {"beta", opt.beta}, {"delta", opt.delta}});
  ResultDocument doc = make_document(opt, "oracle linear", params);
  doc.table = dha::report::hlin_table(check, status);
  doc.diagnostics = {{"n_max", check.n_max}, {"n_max_diagnostic", nmax_diag}, {"pass", pass}};
  emit(opt, doc);
  return pass ? kOk : kTolerance;
}

void require_localized(const dha::Grid& grid, const dha::GridState& state) {
  double outside = 0.0;
  for (std::size_t i = 0; i < grid.points(); ++i) {
    if (std::abs(grid.node(i)) > 0.5 * grid.half_width()) {
      outside += grid.weight(i) * state.values[i] * state.values[i];
    }
  }
  if (outside > 1e-10) {
    throw std::invalid_argument(
        fmt::format("state is not localized within |x| <= L/2 (outside mass {:.3g})", outside));
  }
}

int oracle_commutator(const Options& opt) {
  const dha::Grid grid = grid_or(opt, 15.0, 3001);
  const auto state = dha::GridState::gaussian(grid, opt.sigma);
  require_localized(grid, state);

  const double r0 = dha::commutator_residual(opt.alpha, 0.0, 0.0, grid, state);
  const double r_full = dha::commutator_residual(opt.alpha, opt.beta, opt.delta, grid, state);
  const double r_half = dha::commutator_residual(opt.alpha, opt.beta / 2, opt.delta / 2, grid, state);
  const double ratio = r_half / r_full;
  const bool pass = r0 <= 5e-4 && ratio >= 0.2 && ratio <= 0.32;

  auto params = grid_params(grid);
  params.update({{"alpha", opt.alpha}, {"beta", opt.beta}, {"delta", opt.delta}, {"sigma", opt.sigma}});
  ResultDocument doc = make_document(opt, "oracle commutator", params);
  doc.table.columns = {"beta", "delta", "residual"};
  doc.table.rows = {{0.0, 0.0, r0}, {opt.beta, opt.delta, r_full}, {opt.beta / 2, opt.delta / 2, r_half}};
  doc.diagnostics = {{"ratio", ratio}, {"ratio_window", {0.2, 0.32}}, {"undeformed_limit", 5e-4}, {"pass", pass}};
  emit(opt, doc);
  std::cerr << fmt::format("oracle commutator: r(0)={:.3g}, ratio r(b/2,d/2)/r(b,d) = {:.4f} (window [0.2, 0.32]): {}\n",
                           r0, ratio, pass ? "pass" : "FAIL");
  return pass ? kOk : kTolerance;
}

int oracle_heisenberg(const Options& opt) {
  const dha::TanhAlgebra algebra(opt.alpha, opt.beta, opt.delta);
  const dha::Grid grid = grid_or(opt, 15.0, 3001);
  const auto state = dha::GridState::gaussian(grid, opt.sigma);
  require_localized(grid, state);
  const dha::HeisenbergReport r = dha::verify_heisenberg(state, algebra, grid);
  const dha::TanhWindow window = dha::tanh_window(algebra);
  const bool in_window = r.dp >= window.dp_min && r.dp <= window.dp_max;
  const bool pass = r.satisfied && r.tanh_spread_bounded;

  auto params = grid_params(grid);
  params.update({{"alpha", opt.alpha}, {"beta", opt.beta}, {"delta", opt.delta}, {"sigma", opt.sigma}});
  ResultDocument doc = make_document(opt, "oracle heisenberg", params);
  doc.table.columns = {"sigma",         "dtanh",     "dp",        "mean_commutator", "rhs_half_mean",
                       "satisfied",     "dtanh_le_1", "dp_in_window"};
  doc.table.rows = {{opt.sigma, r.dtanh, r.dp, r.mean_commutator, r.rhs_half_mean, r.satisfied,
                     r.tanh_spread_bounded, in_window}};
  doc.diagnostics = {{"pass", pass}};
  emit(opt, doc);
  return pass ? kOk : kTolerance;
}

int cmd_oracle(const Options& opt) {
  if (opt.oracle_check == "pt") return oracle_pt(opt);
  if (opt.oracle_check == "linear") return oracle_linear(opt);
  if (opt.oracle_check == "commutator") return oracle_commutator(opt);
  return oracle_heisenberg(opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformed Heisenberg algebra: uncertainty windows, exact spectra and grid cross-checks"};
  app.set_config("--config", "", "Read key=value options from a file (flags take precedence)");
  app.require_subcommand(1);

  Options opt;
  app.add_option("--algebra", opt.algebra, "Algebra for bounds: tanh or quartic")
      ->check(CLI::IsMember({"tanh", "quartic"}))
      ->capture_default_str();
  app.add_option("--alpha", opt.alpha, "Algebra scale alpha")->capture_default_str();
  app.add_option("--beta", opt.beta, "Deformation parameter beta")->capture_default_str();
  app.add_option("--delta", opt.delta, "Deformation parameter delta")->capture_default_str();
  app.add_option("--v0", opt.v0, "Well depth of P^2 - v0/cosh^2 X")->capture_default_str();
  app.add_option("--xi0", opt.xi0, "Override xi0 for oracle checks");
  app.add_option("--eta0", opt.eta0, "Override eta0 for oracle checks");
  app.add_option("--L", opt.half_width, "Grid half-width");
  app.add_option("--N", opt.points, "Grid points (odd)");
  app.add_option("--sigma", opt.sigma, "Gaussian width for oracle commutator/heisenberg")
      ->capture_default_str();
  app.add_flag("--sharp", opt.sharp, "bounds: add the sharp momentum window");
  app.add_flag("--linear", opt.linear, "spectrum: add the linear-order column");
  app.add_option("--debug-formal", opt.debug_formal,
                 "spectrum: print K formal levels past n_max to stderr (not physical)");
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("-o,--output", opt.output, "Output path (default stdout; figure: figure.csv)");
  app.add_flag("--timestamp", opt.timestamp, "Include a UTC timestamp in JSON metadata");

  auto* bounds = app.add_subcommand("bounds", "Uncertainty windows and algebra consistency");
  auto* spectrum = app.add_subcommand("spectrum", "Exact chain spectrum of P^2 - v0/cosh^2 X");
  auto* figure = app.add_subcommand("figure", "Undeformed vs deformed levels as CSV plus plot script");
  auto* oracle = app.add_subcommand("oracle", "Finite-difference cross-checks");
  oracle->add_option("check", opt.oracle_check, "pt | linear | commutator | heisenberg")
      ->required()
      ->check(CLI::IsMember({"pt", "linear", "commutator", "heisenberg"}));
  for (auto* sub : {bounds, spectrum, figure, oracle}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*bounds) return cmd_bounds(opt);
    if (*spectrum) return cmd_spectrum(opt);
    if (*figure) return cmd_figure(opt);
    return cmd_oracle(opt);
  } catch (const dha::InconsistentAlgebra& e) {
    std::cerr << "inconsistent algebra: " << e.what() << '\n';
    return kInconsistent;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const dha::ConvergenceFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}
