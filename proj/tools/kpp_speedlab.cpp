// kpp-speedlab: minimal KPP front speeds for reaction-advection-diffusion
// problems with shear flows, via the principal-eigenvalue variational formula.
//
// Exit codes: 0 success, 2 validation error, 3 solver failure,
// 4 premise failure, 5 simulation domain overrun.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kpp/acceptance.hpp"
#include "kpp/asymptotics.hpp"
#include "kpp/config.hpp"
#include "kpp/errors.hpp"
#include "kpp/frontsim.hpp"
#include "kpp/speed.hpp"

namespace {

struct CommonOpts {
  double alpha = 1.0;
  double beta = 1.0;
  std::string flow = "zero";
  double fprime0 = 1.0;
  std::string bc = "periodic";
  double length = 1.0;
  int n = 256;
  std::string config_path;  // consumed before parsing; kept for --help
};

kpp::BoundaryKind parse_bc(const std::string& bc) {
  if (bc == "neumann") return kpp::BoundaryKind::IntervalNeumann;
  if (bc == "periodic") return kpp::BoundaryKind::CirclePeriodic;
  throw kpp::ValidationError("bc", "expected neumann or periodic, got '" + bc + "'");
}

kpp::ProblemSpec build_spec(const CommonOpts& opts, const kpp::KppReaction& reaction) {
  const kpp::CrossSection cs = kpp::make_grid(parse_bc(opts.bc), opts.length, opts.n);
  return kpp::ProblemSpec{cs, kpp::DiffusionSpec{opts.alpha, opts.beta},
                          kpp::parse_flow_spec(opts.flow, cs), reaction};
}

kpp::KppReaction parse_reaction(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind == "logistic") {
    if (colon == std::string::npos || text.compare(colon + 1, 3, "mu=") != 0) {
      throw kpp::ValidationError("reaction", "expected logistic:mu=R");
    }
    return kpp::KppReaction::make_logistic(std::stod(text.substr(colon + 4)));
  }
  if (kind == "poly") {
    if (colon == std::string::npos || text.compare(colon + 1, 7, "coeffs=") != 0) {
      throw kpp::ValidationError("reaction", "expected poly:coeffs=c0,c1,...");
    }
    std::vector<double> coeffs;
    std::string rest = text.substr(colon + 8);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string item =
          rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      coeffs.push_back(std::stod(item));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    auto reaction = kpp::KppReaction::polynomial(std::move(coeffs));
    const auto check = kpp::kpp_check(reaction);
    if (!check.accepted) {
      throw kpp::ValidationError("reaction", check.violation->what);
    }
    return reaction;
  }
  throw kpp::ValidationError("reaction", "unknown kind '" + kind + "'");
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_diffusion = true) {
  if (with_diffusion) {
    cmd->add_option("--alpha", opts.alpha, "axial diffusion coefficient");
    cmd->add_option("--beta", opts.beta, "transverse diffusion coefficient");
  }
  cmd->add_option("--flow", opts.flow,
                  "shear flow: zero | cosine:amplitude=R[:mode=INT] | pwl:file=PATH");
  cmd->add_option("--fprime0", opts.fprime0, "growth rate f'(0)");
  cmd->add_option("--bc", opts.bc, "cross-section boundary: neumann | periodic");
  cmd->add_option("--length", opts.length, "cross-section cell length");
  cmd->add_option("--n", opts.n, "cross-section grid cells");
  cmd->add_option("--config", opts.config_path, "key = value configuration file (flags win)");
}

// Expands `--config PATH` into `--key value` pairs appended after the other
// arguments. Keys already present on the command line are skipped: explicit
// flags win over the file.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (auto it = args.begin(); it != args.end();) {
    if (*it == "--config") {
      if (std::next(it) == args.end()) {
        throw kpp::ValidationError("config", "--config requires a file path");
      }
      path = *std::next(it);
      it = args.erase(it, std::next(it, 2));
    } else if (it->rfind("--config=", 0) == 0) {
      path = it->substr(9);
      it = args.erase(it);
    } else {
      ++it;
    }
  }
  if (path.empty()) return args;

  const kpp::RunConfig config = kpp::load_config_file(path);
  for (const auto& [key, value] : config.entries) {
    const std::string flag = "--" + key;
    const bool already_given =
        std::any_of(args.begin(), args.end(), [&](const std::string& arg) {
          return arg == flag || arg.rfind(flag + "=", 0) == 0;
        });
    if (already_given) continue;
    args.push_back(flag);
    args.push_back(value);
  }
  return args;
}

void write_csv(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw kpp::ValidationError("out", "cannot open '" + path + "' for writing");
  }
  out << content;
}

int cmd_speed(const CommonOpts& opts, const std::string& csv_path) {
  const auto spec = build_spec(opts, kpp::KppReaction::make_logistic(opts.fprime0));
  const kpp::SpeedResult r = kpp::minimal_speed(spec);
  std::cout << "c_star=" << kpp::format_double(r.c_star)
            << " lambda_star=" << kpp::format_double(r.lambda_star)
            << " k=" << kpp::format_double(r.k_at_star) << " n=" << opts.n << "\n";
  if (!csv_path.empty()) {
    std::string csv = "c_star,lambda_star,k,n\n";
    csv += kpp::format_double(r.c_star) + "," + kpp::format_double(r.lambda_star) + "," +
           kpp::format_double(r.k_at_star) + "," + std::to_string(opts.n) + "\n";
    write_csv(csv_path, csv);
  }
  return 0;
}

int cmd_scan(const CommonOpts& opts, const std::string& param, double from, double to,
             int points, const std::string& out_path) {
  if (param != "b") {
    throw kpp::ValidationError("param", "only 'b' scans are supported");
  }
  if (!(from > 0.0) || !(to > 0.0)) {
    throw kpp::ValidationError("from", "scan range must be positive");
  }
  if (points < 2) {
    throw kpp::ValidationError("points", "need at least 2 grid points");
  }
  const kpp::CrossSection cs = kpp::make_grid(parse_bc(opts.bc), opts.length, opts.n);
  const kpp::ShearFlow flow = kpp::parse_flow_spec(opts.flow, cs);
  const auto reaction = kpp::KppReaction::make_logistic(opts.fprime0);

  std::vector<double> grid(points);
  const double ratio = std::pow(to / from, 1.0 / (points - 1));
  double b = from;
  for (int i = 0; i < points; ++i) {
    grid[i] = b;
    b *= ratio;
  }
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  auto rows = kpp::scan_speed_vs_b(flow, reaction, cs, sorted);
  // Emit in the requested order (from -> to).
  if (grid.front() > grid.back()) std::reverse(rows.begin(), rows.end());

  std::string csv = "b,c_star,lambda_star,status\n";
  int ok_rows = 0;
  for (const auto& row : rows) {
    csv += kpp::format_double(row.b) + ",";
    if (row.ok) {
      csv += kpp::format_double(row.c_star) + "," + kpp::format_double(row.lambda_star) + ",ok\n";
      ++ok_rows;
    } else {
      csv += "nan,nan,failed\n";
    }
  }
  write_csv(out_path, csv);
  std::cout << "rows=" << rows.size() << " ok=" << ok_rows << " out=" << out_path << "\n";
  if (ok_rows == 0) {
    throw kpp::SolverError("all scan rows failed");
  }
  return 0;
}

int cmd_counterexample(const CommonOpts& opts, const std::string& mode, double delta_flag,
                       const std::string& trace_path) {
  const kpp::CrossSection cs = kpp::make_grid(parse_bc(opts.bc), opts.length, opts.n);
  const kpp::ShearFlow flow = kpp::parse_flow_spec(opts.flow, cs);
  const auto reaction = kpp::KppReaction::make_logistic(opts.fprime0);
  std::optional<double> delta;
  if (delta_flag > 0.0) delta = delta_flag;

  std::vector<std::pair<double, double>> trace;
  bool success = false;
  if (mode == "proportional") {
    const auto report = kpp::find_proportional_counterexample(flow, reaction, cs, delta);
    std::cout << "mode=proportional delta=" << kpp::format_double(report.delta)
              << " M1=" << kpp::format_double(report.M1)
              << " epsilon1=" << kpp::format_double(report.epsilon1)
              << " c_small=" << kpp::format_double(report.speed_small_diffusion)
              << " c_large=" << kpp::format_double(report.speed_large_diffusion)
              << " margin=" << kpp::format_double(report.margin)
              << " verified=" << (report.verified ? "true" : "false") << "\n";
    trace = report.trace;
    success = report.margin > 0.0 && report.verified;
  } else if (mode == "nonproportional") {
    const auto report = kpp::find_nonproportional_counterexample(flow, reaction, cs, delta);
    std::cout << "mode=nonproportional delta=" << kpp::format_double(report.delta)
              << " epsilon=" << kpp::format_double(report.epsilon)
              << " M=" << kpp::format_double(report.M)
              << " c_eps=" << kpp::format_double(report.c_eps)
              << " c_M=" << kpp::format_double(report.c_M)
              << " verified=" << (report.verified ? "true" : "false") << "\n";
    trace = report.trace;
    success = report.c_eps > report.c_M && report.verified;
  } else {
    throw kpp::ValidationError("mode", "expected proportional or nonproportional");
  }

  if (!trace_path.empty()) {
    std::string csv = "parameter,speed\n";
    for (const auto& [p, c] : trace) {
      csv += kpp::format_double(p) + "," + kpp::format_double(c) + "\n";
    }
    write_csv(trace_path, csv);
  }
  if (!success) {
    throw kpp::SolverError("counterexample not confirmed at the doubled resolution");
  }
  return 0;
}

int cmd_simulate(const CommonOpts& opts, const std::string& reaction_text, double strip, int nx,
                 double tend, const std::string& traj_path) {
  const auto reaction = parse_reaction(reaction_text);
  auto spec = build_spec(opts, reaction);
  kpp::SimConfig sim;
  sim.strip_length = strip;
  sim.nx = nx;
  sim.t_end = tend;

  const double c_star = kpp::minimal_speed(spec).c_star;
  const kpp::FrontSimResult r = kpp::simulate_front(spec, sim);
  const double gap_pct = 100.0 * std::abs(r.measured_speed - c_star) / c_star;
  std::cout << "measured_speed=" << kpp::format_double(r.measured_speed)
            << " variational_c=" << kpp::format_double(c_star)
            << " gap_pct=" << kpp::format_double(gap_pct) << "\n";
  if (!traj_path.empty()) {
    std::string csv = "t,x_front\n";
    for (const auto& [t, x] : r.positions) {
      csv += kpp::format_double(t) + "," + kpp::format_double(x) + "\n";
    }
    write_csv(traj_path, csv);
  }
  return 0;
}

int cmd_verify(const std::string& suite) {
  if (suite != "quick" && suite != "full") {
    throw kpp::ValidationError("suite", "expected quick or full");
  }
  const auto results =
      kpp::run_acceptance(suite == "full" ? kpp::SuiteScale::Full : kpp::SuiteScale::Quick);
  bool all_passed = true;
  for (const auto& r : results) {
    std::cout << r.id << " " << r.name << ": measured=" << kpp::format_double(r.measured)
              << " tol=" << kpp::format_double(r.tolerance) << " "
              << (r.passed ? "PASS" : "FAIL") << "  [" << r.detail << "]\n";
    all_passed = all_passed && r.passed;
  }
  std::cout << (all_passed ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal KPP front speeds with shear advection"};
  app.require_subcommand(1);
  int exit_code = 0;

  CommonOpts speed_opts;
  std::string speed_csv;
  auto* speed = app.add_subcommand("speed", "compute c* for one problem");
  add_common(speed, speed_opts);
  speed->add_option("--csv", speed_csv, "optional CSV output path");
  speed->callback([&] { exit_code = cmd_speed(speed_opts, speed_csv); });

  CommonOpts scan_opts;
  std::string scan_param = "b", scan_out;
  double scan_from = 1e-3, scan_to = 1e3;
  int scan_points = 25;
  auto* scan = app.add_subcommand("scan", "sweep c* over the transverse diffusion b");
  add_common(scan, scan_opts, /*with_diffusion=*/false);
  scan->add_option("--param", scan_param, "swept parameter (only 'b')");
  scan->add_option("--from", scan_from, "first grid value");
  scan->add_option("--to", scan_to, "last grid value");
  scan->add_option("--points", scan_points, "grid points (geometric spacing)");
  scan->add_option("--out", scan_out, "CSV output path")->required();
  scan->callback(
      [&] { exit_code = cmd_scan(scan_opts, scan_param, scan_from, scan_to, scan_points, scan_out); });

  CommonOpts ce_opts;
  ce_opts.n = 512;
  std::string ce_mode = "proportional", ce_trace;
  double ce_delta = 0.0;
  auto* counterexample =
      app.add_subcommand("counterexample", "search for a non-monotonicity witness");
  add_common(counterexample, ce_opts, /*with_diffusion=*/false);
  counterexample->add_option("--mode", ce_mode, "proportional | nonproportional");
  counterexample->add_option("--delta", ce_delta, "premise margin (default: auto)");
  counterexample->add_option("--trace", ce_trace, "optional CSV trace path");
  counterexample->callback(
      [&] { exit_code = cmd_counterexample(ce_opts, ce_mode, ce_delta, ce_trace); });

  CommonOpts sim_opts;
  std::string sim_reaction = "logistic:mu=1", sim_traj;
  double sim_strip = 200.0, sim_tend = 80.0;
  int sim_nx = 2000;
  auto* simulate = app.add_subcommand("simulate", "time-domain front-speed cross-check");
  add_common(simulate, sim_opts);
  simulate->add_option("--reaction", sim_reaction, "logistic:mu=R | poly:coeffs=c0,c1,...");
  simulate->add_option("--strip", sim_strip, "x-extent of the strip");
  simulate->add_option("--nx", sim_nx, "x grid cells");
  simulate->add_option("--tend", sim_tend, "integration time");
  simulate->add_option("--traj", sim_traj, "optional trajectory CSV path");
  simulate->callback([&] {
    exit_code = cmd_simulate(sim_opts, sim_reaction, sim_strip, sim_nx, sim_tend, sim_traj);
  });

  std::string verify_suite = "quick";
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--suite", verify_suite, "quick | full");
  verify->callback([&] { exit_code = cmd_verify(verify_suite); });

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const kpp::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const kpp::PremiseError& e) {
    std::cerr << "premise failure: " << e.what() << "\n";
    return 4;
  } catch (const kpp::DomainOverrunError& e) {
    std::cerr << "simulation overran the strip: " << e.what() << "\n";
    return 5;
  } catch (const kpp::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return exit_code;
}
