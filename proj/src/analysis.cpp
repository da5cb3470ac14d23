#include "discnet/analysis.hpp"

#include <cmath>
#include <ostream>

#include "discnet/output.hpp"

namespace discnet {

double l1_error(std::vector<RoadGrid> const& grids, Snapshot const& snap, ExactSolution const& exact) {
  if (grids.size() != snap.density.size()) throw ConfigError("l1_error: snapshot and grid describe different networks");
  if (!exact.valid_at(snap.time)) throw ConfigError("l1_error: exact reference is not valid at the snapshot time");
  double err = 0.0;
  for (std::size_t r = 0; r < grids.size(); ++r) {
    if (grids[r].x.size() != snap.density[r].size()) throw ConfigError("l1_error: grid size mismatch");
    double road = 0.0;
    for (std::size_t k = 0; k < grids[r].x.size(); ++k)
      road += std::abs(snap.density[r][k] - exact.evaluate(static_cast<int>(r), grids[r].x[k], snap.time));
    err += road * grids[r].dx;
  }
  return err;
}

double convergence_rate(std::span<std::pair<double, double> const> dx_error) {
  if (dx_error.size() < 2) throw DomainError("convergence_rate needs at least two (dx, error) pairs");
  double sx = 0.0, sy = 0.0;
  for (auto const& [dx, e] : dx_error) {
    if (!(dx > 0.0 && e > 0.0)) throw DomainError("convergence_rate needs positive dx and errors");
    sx += std::log(dx);
    sy += std::log(e);
  }
  double const n = static_cast<double>(dx_error.size());
  double const mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (auto const& [dx, e] : dx_error) {
    sxx += (std::log(dx) - mx) * (std::log(dx) - mx);
    sxy += (std::log(dx) - mx) * (std::log(e) - my);
  }
  if (sxx == 0.0) throw DomainError("convergence_rate needs at least two distinct dx values");
  return sxy / sxx;
}

std::string scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Splitting: return "splitting";
    case SchemeKind::Regularized: return "regularized";
    case SchemeKind::ExactReference: return "exact";
  }
  return "unknown";
}

TableResult run_table(TableSpec const& spec) {
  if (spec.dx.empty()) throw ConfigError("table: dx list is empty");
  if (spec.columns.empty()) throw ConfigError("table: no scheme columns");
  TableResult result;
  for (TableScenario const& sc : spec.scenarios) {
    ExactSolution const exact(sc.network);
    for (TableColumn const& col : spec.columns) {
      double const param = col.scheme == SchemeKind::Regularized ? col.epsilon : col.lambda;
      std::vector<std::pair<double, double>> pairs;
      for (double dx : spec.dx) {
        SimulationConfig cfg = sc.base;
        cfg.scheme = col.scheme;
        cfg.lambda = col.lambda;
        cfg.epsilon = col.epsilon;
        cfg.dx = dx;
        cfg.output_times.clear();
        cfg.record_junctions = false;
        Trajectory const traj = simulate(sc.network, cfg);
        Snapshot const& last = traj.snapshots.back();
        double const err = l1_error(traj.grids, last, exact);
        result.records.push_back(
            TableRecord{sc.name, scheme_name(col.scheme), param, dx, err, last.time, traj.g_min, traj.g_max});
        pairs.emplace_back(dx, err);
      }
      double rate = NAN;
      if (pairs.size() >= 2) rate = convergence_rate(pairs);
      result.rates.push_back(TableRate{sc.name, scheme_name(col.scheme), param, rate});
    }
  }
  return result;
}

void write_table_csv(std::ostream& os, TableResult const& result) {
  os << "scenario,scheme,lambda_or_epsilon,dx,l1_error\n";
  for (TableRecord const& r : result.records)
    os << r.scenario << ',' << r.scheme << ',' << fmt_num(r.lambda_or_epsilon) << ',' << fmt_num(r.dx) << ','
       << fmt_num(r.l1_error) << '\n';
  for (TableRate const& r : result.rates)
    os << r.scenario << ',' << r.scheme << ',' << fmt_num(r.lambda_or_epsilon) << ",CR," << fmt_num(r.rate) << '\n';
}

}  // namespace discnet
