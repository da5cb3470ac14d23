#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "discnet/analysis.hpp"
#include "discnet/config.hpp"
#include "discnet/exact.hpp"
#include "discnet/output.hpp"

namespace fs = std::filesystem;
using namespace discnet;

namespace {

struct Overrides {
  std::optional<std::string> scheme;
  std::optional<double> lambda;
  std::optional<double> epsilon;
  std::optional<double> dx;
  std::optional<double> T;
  std::optional<std::string> coupling;
};

void apply(Overrides const& o, Scenario& s) {
  if (o.scheme) s.sim.scheme = parse_scheme_name(*o.scheme);
  if (o.epsilon) s.sim.epsilon = *o.epsilon;
  if (o.lambda) s.sim.lambda = *o.lambda;
  else if (o.scheme && s.sim.scheme == SchemeKind::Regularized && s.sim.epsilon > 0.0) s.sim.lambda = s.sim.epsilon;
  if (o.dx) s.sim.dx = *o.dx;
  if (o.T) s.sim.T = *o.T;
  if (o.coupling) {
    if (*o.coupling == "paper") s.sim.outflow_coupling = OutflowCoupling::Paper;
    else if (*o.coupling == "conservative") s.sim.outflow_coupling = OutflowCoupling::Conservative;
    else throw ConfigError("--coupling expects paper or conservative");
  }
  if (s.sim.scheme == SchemeKind::Regularized && !(s.sim.epsilon > 0.0))
    throw ConfigError("the regularized scheme needs epsilon > 0");
}

std::optional<ExactSolution> try_exact(RoadNetwork const& net) {
  try {
    return ExactSolution(net);
  } catch (ConfigError const&) {
    return std::nullopt;
  }
}

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

void write_file(fs::path const& path, std::string const& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int cmd_run(std::string const& config, std::string const& out_dir, Overrides const& o, bool print_config,
            bool svg) {
  Scenario s = load_scenario(config);
  apply(o, s);
  if (print_config) {
    std::cout << scenario_to_json(s);
    return 0;
  }
  Trajectory const traj = simulate(s.network, s.sim);
  fs::create_directories(out_dir);
  {
    std::ostringstream os;
    write_trajectory_csv(os, s.network, traj);
    write_file(fs::path(out_dir) / "trajectory.csv", os.str());
  }
  {
    std::ostringstream os;
    write_junctions_csv(os, traj);
    write_file(fs::path(out_dir) / "junctions.csv", os.str());
  }
  auto const exact = try_exact(s.network);
  if (svg) {
    for (Snapshot const& snap : traj.snapshots) {
      std::ostringstream os;
      ExactSolution const* ex = exact && exact->valid_at(snap.time) ? &*exact : nullptr;
      write_profile_svg(os, s.network, traj.grids, snap, ex);
      write_file(fs::path(out_dir) / ("profile_t" + time_tag(snap.time) + ".svg"), os.str());
    }
  }
  Snapshot const& last = traj.snapshots.back();
  std::cout << "scenario " << s.name << ": scheme " << scheme_name(s.sim.scheme) << ", " << traj.steps
            << " steps, t = " << fmt_num(last.time) << "\n";
  std::cout << "mass: initial " << fmt_num(traj.mass.initial) << ", final " << fmt_num(traj.mass.final)
            << ", external net " << fmt_num(traj.mass.external_net) << ", junction imbalance "
            << fmt_num(traj.mass.junction_created) << "\n";
  if (exact && exact->valid_at(last.time))
    std::cout << "L1 error vs exact: " << fmt_num(l1_error(traj.grids, last, *exact)) << "\n";
  std::cout << "wrote " << out_dir << "\n";
  return 0;
}

int cmd_table(std::string const& config, std::string const& out_file, std::vector<double> const& dx) {
  TableSpec spec = load_table(config);
  if (!dx.empty()) spec.dx = dx;
  TableResult const result = run_table(spec);
  std::ostringstream os;
  write_table_csv(os, result);
  if (out_file.empty()) {
    std::cout << os.str();
  } else {
    write_file(out_file, os.str());
    std::cout << "wrote " << out_file << "\n";
  }
  return 0;
}

int cmd_compare(std::string const& config, Overrides const& o) {
  Scenario s = load_scenario(config);
  apply(o, s);
  ExactSolution const exact(s.network);
  std::cout << "scheme,lambda,epsilon,dx,time,l1_error\n";
  SimulationConfig split = s.sim;
  split.scheme = SchemeKind::Splitting;
  split.record_junctions = false;
  if (split.lambda * s.network.flux().max_abs_slope() > 1.0) split.lambda = 1.0 / s.network.flux().max_abs_slope();
  SimulationConfig reg = split;
  reg.scheme = SchemeKind::Regularized;
  reg.epsilon = s.sim.epsilon > 0.0 ? s.sim.epsilon : 0.1;
  reg.lambda = reg.epsilon;
  for (SimulationConfig const& c : {split, reg}) {
    Trajectory const traj = simulate(s.network, c);
    Snapshot const& last = traj.snapshots.back();
    std::cout << scheme_name(c.scheme) << ',' << fmt_num(c.lambda) << ','
              << (c.scheme == SchemeKind::Regularized ? fmt_num(c.epsilon) : std::string("")) << ','
              << fmt_num(c.dx) << ',' << fmt_num(last.time) << ',' << fmt_num(l1_error(traj.grids, last, exact))
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for traffic flow on road networks with a discontinuous fundamental diagram"};
  app.require_subcommand(1);

  std::string config, out_dir = "out", table_out;
  Overrides o;
  bool print_config = false, no_svg = false;
  std::vector<double> table_dx;

  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("--scheme", o.scheme, "Override the scheme: splitting, regularized or exact");
    sub->add_option("--lambda", o.lambda, "Override lambda = dt/dx");
    sub->add_option("--epsilon", o.epsilon, "Override the regularization width");
    sub->add_option("--dx", o.dx, "Override the grid spacing");
    sub->add_option("--T", o.T, "Override the final time");
    sub->add_option("--coupling", o.coupling, "Outflow coupling at junctions: paper or conservative");
  };

  CLI::App* run = app.add_subcommand("run", "Simulate one scenario and write CSV and SVG output");
  run->add_option("config", config, "Scenario JSON file")->required();
  run->add_option("-o,--out", out_dir, "Output directory");
  run->add_flag("--print-config", print_config, "Print the parsed scenario as canonical JSON and exit");
  run->add_flag("--no-svg", no_svg, "Skip the SVG profile plots");
  add_overrides(run);

  CLI::App* table = app.add_subcommand("table", "Run a convergence table and print it as CSV");
  table->add_option("config", config, "Table JSON file")->required();
  table->add_option("-o,--out", table_out, "Write the CSV here instead of stdout");
  table->add_option("--dx", table_dx, "Replace the dx list");

  CLI::App* compare = app.add_subcommand("compare", "Compare splitting and regularized schemes against the exact solution");
  compare->add_option("config", config, "Scenario JSON file")->required();
  add_overrides(compare);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config, out_dir, o, print_config, !no_svg);
    if (table->parsed()) return cmd_table(config, table_out, table_dx);
    if (compare->parsed()) return cmd_compare(config, o);
  } catch (CflError const& e) {
    std::cerr << "CFL error: " << e.what() << "\n";
    return 3;
  } catch (ConfigError const& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
