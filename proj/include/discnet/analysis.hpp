#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "discnet/exact.hpp"
#include "discnet/network.hpp"

namespace discnet {

/// Sum over roads of sum_j |U_j - u(x_j, t)| * dx, with t the snapshot time.
double l1_error(std::vector<RoadGrid> const& grids, Snapshot const& snap, ExactSolution const& exact);

/// Least-squares slope of log(error) against log(dx).
double convergence_rate(std::span<std::pair<double, double> const> dx_error);

struct TableColumn {
  SchemeKind scheme = SchemeKind::Splitting;
  double lambda = 0.5;
  double epsilon = 0.0;
};

struct TableScenario {
  std::string name;
  RoadNetwork network;
  SimulationConfig base;
};

struct TableSpec {
  std::string name;
  std::vector<TableScenario> scenarios;
  std::vector<TableColumn> columns;
  std::vector<double> dx;
};

struct TableRecord {
  std::string scenario;
  std::string scheme;
  double lambda_or_epsilon = 0.0;
  double dx = 0.0;
  double l1_error = 0.0;
  double time = 0.0;
  /// Range of every g value the run produced, for invariant checks.
  double g_min = 0.0;
  double g_max = 0.0;
};

struct TableRate {
  std::string scenario;
  std::string scheme;
  double lambda_or_epsilon = 0.0;
  double rate = 0.0;
};

struct TableResult {
  std::vector<TableRecord> records;
  std::vector<TableRate> rates;
};

std::string scheme_name(SchemeKind kind);

/// Runs every scenario x column x dx cell and fits one rate per scenario and column.
TableResult run_table(TableSpec const& spec);

/// CSV with columns scenario, scheme, lambda_or_epsilon, dx, l1_error; rates follow as rows
/// whose dx field reads CR.
void write_table_csv(std::ostream& os, TableResult const& result);

}  // namespace discnet
