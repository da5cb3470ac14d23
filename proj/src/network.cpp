#include "discnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "discnet/exact.hpp"

namespace discnet {

namespace {

constexpr double kStepTol = 1e-9;

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

int grid_count(double length, double dx) {
  double const ratio = length / dx;
  double const rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
    throw ConfigError("road length must be an integer multiple of dx");
  return static_cast<int>(rounded);
}

}  // namespace

double PiecewiseConstant::at(double s) const {
  if (pieces.empty()) throw ConfigError("empty piecewise-constant function");
  double v = pieces.front().second;
  for (std::size_t k = 1; k < pieces.size(); ++k)
    if (s >= pieces[k].first) v = pieces[k].second;
  return v;
}

bool PiecewiseConstant::is_constant() const {
  return std::all_of(pieces.begin(), pieces.end(), [&](auto const& p) { return p.second == pieces.front().second; });
}

RoadNetwork::RoadNetwork(DiscFlux flux, std::vector<Road> roads, std::vector<Junction> junctions)
    : flux_(flux), roads_(std::move(roads)), junctions_(std::move(junctions)) {
  if (roads_.empty()) throw ConfigError("network has no roads");
  std::set<std::string> ids;
  for (Road const& r : roads_) {
    if (r.id.empty()) throw ConfigError("road id must not be empty");
    if (!ids.insert(r.id).second) throw ConfigError("duplicate road id '" + r.id + "'");
    if (!(r.length > 0.0)) throw ConfigError("road '" + r.id + "': length must be positive");
    if (r.u0.pieces.empty()) throw ConfigError("road '" + r.id + "': missing initial data");
    for (std::size_t k = 1; k < r.u0.pieces.size(); ++k)
      if (!(r.u0.pieces[k].first > r.u0.pieces[k - 1].first))
        throw ConfigError("road '" + r.id + "': initial data breakpoints must increase");
    for (auto const& [x, v] : r.u0.pieces) {
      (void)x;
      if (!(v >= 0.0 && v <= flux_.u_max())) throw ConfigError("road '" + r.id + "': initial density outside [0, u_max]");
    }
  }
  left_.assign(roads_.size(), Attachment{});
  right_.assign(roads_.size(), Attachment{});
  for (std::size_t j = 0; j < junctions_.size(); ++j) {
    Junction& jn = junctions_[j];
    validate(jn.spec);
    std::string const where = "junction " + std::to_string(j) + " (" + kind_name(jn.spec) + ")";
    if (jn.in.size() != idx(incoming_count(jn.spec)) || jn.out.size() != idx(outgoing_count(jn.spec)))
      throw ConfigError(where + ": road counts do not match the junction kind");
    if (jn.ahead_out.empty()) jn.ahead_out.assign(jn.out.size(), TrafficAhead::FreeFlowing);
    if (jn.ahead_out.size() != jn.out.size()) throw ConfigError(where + ": one ahead flag per outgoing road expected");
    for (std::size_t p = 0; p < jn.in.size(); ++p) {
      int const r = jn.in[p];
      if (r < 0 || idx(r) >= roads_.size()) throw ConfigError(where + ": unknown incoming road");
      if (right_[idx(r)].attached()) throw ConfigError("road '" + roads_[idx(r)].id + "' enters two junctions");
      right_[idx(r)] = Attachment{static_cast<int>(j), static_cast<int>(p)};
    }
    for (std::size_t p = 0; p < jn.out.size(); ++p) {
      int const r = jn.out[p];
      if (r < 0 || idx(r) >= roads_.size()) throw ConfigError(where + ": unknown outgoing road");
      if (left_[idx(r)].attached()) throw ConfigError("road '" + roads_[idx(r)].id + "' leaves two junctions");
      left_[idx(r)] = Attachment{static_cast<int>(j), static_cast<int>(p)};
    }
  }
}

int RoadNetwork::road_index(std::string const& id) const {
  for (std::size_t r = 0; r < roads_.size(); ++r)
    if (roads_[r].id == id) return static_cast<int>(r);
  throw ConfigError("unknown road id '" + id + "'");
}

double RoadNetwork::road_start(int road) const {
  return right_[idx(road)].attached() ? -roads_[idx(road)].length : 0.0;
}

double RoadNetwork::far_field_left(int road, double t) const {
  Road const& r = roads_[idx(road)];
  return r.left.trace ? r.left.trace->at(t) : r.u0.at(road_start(road));
}

double RoadNetwork::far_field_right(int road, double t) const {
  Road const& r = roads_[idx(road)];
  return r.right.trace ? r.right.trace->at(t) : r.u0.at(road_end(road));
}

RoadGrid make_grid(double a, double b, double dx, GridLayout layout) {
  if (!(dx > 0.0)) throw ConfigError("dx must be positive");
  int const m = grid_count(b - a, dx);
  RoadGrid g{a, b, dx, {}};
  switch (layout) {
    case GridLayout::Nodes:
      for (int j = 0; j <= m; ++j) g.x.push_back(a + j * dx);
      break;
    case GridLayout::Interior:
      for (int j = 1; j < m; ++j) g.x.push_back(a + j * dx);
      break;
    case GridLayout::Cells:
      for (int j = 0; j < m; ++j) g.x.push_back(a + (j + 0.5) * dx);
      break;
  }
  if (g.x.empty()) throw ConfigError("dx too coarse: a road would have no cells");
  return g;
}

std::vector<RoadGrid> make_grids(RoadNetwork const& net, double dx, GridLayout layout) {
  std::vector<RoadGrid> grids;
  for (std::size_t r = 0; r < net.roads().size(); ++r)
    grids.push_back(make_grid(net.road_start(static_cast<int>(r)), net.road_end(static_cast<int>(r)), dx, layout));
  return grids;
}

double total_mass(std::vector<RoadGrid> const& grids, Snapshot const& snap) {
  double m = 0.0;
  for (std::size_t r = 0; r < grids.size(); ++r)
    for (double u : snap.density[r]) m += u * grids[r].dx;
  return m;
}

namespace {

struct Stepper {
  RoadNetwork const& net;
  SimulationConfig const& cfg;
  SplitFlux sf;
  std::optional<RegularizedFlux> rf;
  AlgorithmVariant variant;

  Stepper(RoadNetwork const& n, SimulationConfig const& c)
      : net(n), cfg(c), sf(n.flux()),
        variant(c.strict_paper_algorithms ? AlgorithmVariant::StrictPaper : AlgorithmVariant::Corrected) {
    if (cfg.scheme == SchemeKind::Regularized) {
      rf.emplace(n.flux(), cfg.epsilon);
      check_cfl(*rf, cfg.lambda);
    } else if (cfg.scheme == SchemeKind::Splitting) {
      check_cfl(sf, cfg.lambda);
    }
  }

  std::vector<JunctionTrace> junction_step(std::vector<std::vector<double>> const& u) const {
    DiscFlux const& f = net.flux();
    std::vector<JunctionTrace> out;
    for (Junction const& jn : net.junctions()) {
      std::vector<double> d, s;
      for (int r : jn.in) {
        double const last = u[idx(r)].back();
        d.push_back(rf ? rf->demand(last) : demand(f, last));
      }
      for (std::size_t p = 0; p < jn.out.size(); ++p) {
        double const first = u[idx(jn.out[p])].front();
        s.push_back(rf ? rf->supply(first) : supply(f, first, jn.ahead_out[p]));
      }
      if (rf) {
        JunctionFluxes const fx = junction_fluxes_from(jn.spec, d, s);
        JunctionTrace t{fx.f_in, fx.f_out, fx.f_in, fx.f_out, std::vector<double>(fx.f_in.size(), 0.0)};
        out.push_back(std::move(t));
      } else {
        out.push_back(adjust(f, jn.spec, d, s, variant));
      }
    }
    return out;
  }

  LeftBoundary left_boundary(int r, double t, std::vector<JunctionTrace> const& traces) const {
    Attachment const& at = net.left_attachment(r);
    if (at.attached()) {
      JunctionTrace const& tr = traces[idx(at.junction)];
      if (rf || cfg.outflow_coupling == OutflowCoupling::Conservative)
        return LeftBoundary::total_flux(tr.f_out[idx(at.port)]);
      return LeftBoundary::prescribed_p(tr.f_adj_out[idx(at.port)]);
    }
    RoadEnd const& end = net.roads()[idx(r)].left;
    if (end.kind == RoadEnd::Kind::Closed) return LeftBoundary::closed();
    return LeftBoundary::ghost(net.far_field_left(r, t));
  }

  RightBoundary right_boundary(int r, double t, std::vector<JunctionTrace> const& traces) const {
    Attachment const& at = net.right_attachment(r);
    if (at.attached()) {
      JunctionTrace const& tr = traces[idx(at.junction)];
      return RightBoundary::coupled(tr.f_adj_in[idx(at.port)], tr.g_boundary[idx(at.port)]);
    }
    RoadEnd const& end = net.roads()[idx(r)].right;
    if (end.kind == RoadEnd::Kind::Closed) return RightBoundary::closed();
    return RightBoundary::ghost(net.far_field_right(r, t), end.ahead);
  }
};

}  // namespace

Trajectory simulate(RoadNetwork const& net, SimulationConfig const& cfg) {
  if (!(cfg.T > 0.0)) throw ConfigError("time horizon T must be positive");
  if (!(cfg.lambda > 0.0)) throw ConfigError("lambda must be positive");
  Stepper const stepper(net, cfg);

  Trajectory traj;
  traj.grids = make_grids(net, cfg.dx, cfg.grid_layout);
  double const dt = cfg.lambda * cfg.dx;
  traj.dt = dt;
  std::size_t const n_roads = net.roads().size();

  std::optional<ExactSolution> exact;
  if (cfg.scheme == SchemeKind::ExactReference) exact.emplace(net);

  std::vector<std::vector<double>> u(n_roads);
  for (std::size_t r = 0; r < n_roads; ++r)
    for (double x : traj.grids[r].x) u[r].push_back(net.roads()[r].u0.at(x));

  std::vector<double> targets;
  for (double t : cfg.output_times) {
    if (t < 0.0 || t > cfg.T * (1.0 + 1e-12)) throw ConfigError("output time outside [0, T]");
    targets.push_back(std::min(t, cfg.T));
  }
  targets.push_back(cfg.T);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  // With paper_time_stop every target is realised at the last full step not beyond it.
  std::vector<int> target_steps;
  if (cfg.paper_time_stop)
    for (double t : targets) target_steps.push_back(static_cast<int>(std::floor(t / dt + kStepTol)));

  auto snapshot = [&](int step, double time) {
    Snapshot s{step, time, u};
    if (exact)
      for (std::size_t r = 0; r < n_roads; ++r)
        for (std::size_t k = 0; k < u[r].size(); ++k)
          s.density[r][k] = exact->evaluate(static_cast<int>(r), traj.grids[r].x[k], time);
    if (traj.snapshots.empty() || traj.snapshots.back().step != step) traj.snapshots.push_back(std::move(s));
  };

  traj.mass.initial = total_mass(traj.grids, Snapshot{0, 0.0, u});
  traj.g_min = 0.0;
  traj.g_max = -net.flux().alpha();
  bool g_seen = false;

  std::size_t next = 0;
  int step = 0;
  double t = 0.0;
  auto flush_targets = [&]() {
    while (next < targets.size()) {
      bool const due = cfg.paper_time_stop ? target_steps[next] <= step
                                           : targets[next] <= t + kStepTol * dt;
      if (!due) break;
      snapshot(step, t);
      ++next;
    }
  };
  flush_targets();

  while (next < targets.size()) {
    double h = dt;
    if (!cfg.paper_time_stop) h = std::min(dt, targets[next] - t);
    double const lambda = h / cfg.dx;

    if (!exact) {
      std::vector<JunctionTrace> const traces = stepper.junction_step(u);
      if (cfg.record_junctions)
        for (std::size_t j = 0; j < traces.size(); ++j)
          traj.junction_log.push_back(JunctionRecord{step, t, static_cast<int>(j), traces[j]});
      for (JunctionTrace const& tr : traces)
        for (double g : tr.g_boundary) {
          traj.g_min = g_seen ? std::min(traj.g_min, g) : g;
          traj.g_max = g_seen ? std::max(traj.g_max, g) : g;
          g_seen = true;
        }

      std::vector<StepReport> reports(n_roads);
      for (std::size_t r = 0; r < n_roads; ++r) {
        int const ri = static_cast<int>(r);
        LeftBoundary const lb = stepper.left_boundary(ri, t, traces);
        RightBoundary const rb = stepper.right_boundary(ri, t, traces);
        reports[r] = stepper.rf ? step_regularized(u[r], *stepper.rf, lambda, lb, rb)
                                : full_step(u[r], stepper.sf, lambda, lb, rb);
      }
      for (std::size_t r = 0; r < n_roads; ++r) {
        int const ri = static_cast<int>(r);
        StepReport const& rep = reports[r];
        double const w = h;
        if (net.left_attachment(ri).attached()) traj.mass.junction_created += w * rep.flux_left;
        else traj.mass.external_net += w * rep.flux_left;
        if (net.right_attachment(ri).attached()) traj.mass.junction_created -= w * rep.flux_right;
        else traj.mass.external_net -= w * rep.flux_right;
        traj.mass.clamped += rep.clamped;
        if (!stepper.rf) {
          traj.g_min = g_seen ? std::min(traj.g_min, rep.g_min) : rep.g_min;
          traj.g_max = g_seen ? std::max(traj.g_max, rep.g_max) : rep.g_max;
          g_seen = true;
        }
      }
    }

    ++step;
    bool const lands = !cfg.paper_time_stop && h < dt;
    t = lands ? targets[next] : (cfg.paper_time_stop ? step * dt : t + h);
    if (!cfg.paper_time_stop && std::abs(targets[next] - t) <= kStepTol * dt) t = targets[next];
    flush_targets();
  }

  traj.steps = step;
  if (!g_seen) traj.g_min = traj.g_max = 0.0;
  traj.mass.final = total_mass(traj.grids, Snapshot{step, t, u});
  return traj;
}

}  // namespace discnet
