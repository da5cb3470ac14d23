#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "discnet/config.hpp"
#include "discnet/network.hpp"
#include "test_support.hpp"

using namespace discnet;
using testing_support::close;
using testing_support::reference_flux;

namespace {

Scenario bundled(std::string const& name) { return load_scenario(std::filesystem::path(DISCNET_CONFIG_DIR) / name); }

Road plain(std::string id, double length, PiecewiseConstant u0) {
  Road r;
  r.id = std::move(id);
  r.length = length;
  r.u0 = std::move(u0);
  return r;
}

}  // namespace

TEST_CASE("grid layouts") {
  RoadGrid const nodes = make_grid(-2.0, 0.0, 0.5, GridLayout::Nodes);
  CHECK(nodes.x.size() == 5);
  CHECK(nodes.x.front() == -2.0);
  CHECK(close(nodes.x.back(), 0.0));
  CHECK(make_grid(0.0, 2.0, 0.5, GridLayout::Interior).x.size() == 3);
  RoadGrid const cells = make_grid(0.0, 2.0, 0.5, GridLayout::Cells);
  CHECK(cells.x.size() == 4);
  CHECK(close(cells.x.front(), 0.25));
  CHECK_THROWS_AS(make_grid(0.0, 2.0, 0.3, GridLayout::Cells), ConfigError);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 1.0, GridLayout::Interior), ConfigError);
}

TEST_CASE("network validation") {
  DiscFlux const f = reference_flux();
  auto c = PiecewiseConstant::constant(0.3);
  CHECK_THROWS_AS(RoadNetwork(f, {}, {}), ConfigError);
  CHECK_THROWS_AS(RoadNetwork(f, {plain("a", 1.0, c), plain("a", 1.0, c)}, {}), ConfigError);
  CHECK_THROWS_AS(RoadNetwork(f, {plain("a", -1.0, c)}, {}), ConfigError);
  CHECK_THROWS_AS(RoadNetwork(f, {plain("a", 1.0, PiecewiseConstant::constant(1.5))}, {}), ConfigError);
  Junction bad{OneToTwo{0.5, 0.5}, {0}, {1}, {TrafficAhead::FreeFlowing}};
  CHECK_THROWS_AS(RoadNetwork(f, {plain("a", 1.0, c), plain("b", 1.0, c)}, {bad}), ConfigError);
  Junction ok{OneToOne{}, {0}, {1}, {TrafficAhead::FreeFlowing}};
  RoadNetwork const net(f, {plain("a", 1.0, c), plain("b", 1.0, c)}, {ok});
  CHECK(net.road_start(0) == -1.0);
  CHECK(net.road_start(1) == 0.0);
  CHECK(net.right_attachment(0).attached());
  CHECK(!net.left_attachment(0).attached());
  CHECK(net.road_index("b") == 1);
  CHECK_THROWS_AS(net.road_index("zz"), ConfigError);
  Junction twice{OneToOne{}, {0}, {1}, {TrafficAhead::FreeFlowing}};
  CHECK_THROWS_AS(RoadNetwork(f, {plain("a", 1.0, c), plain("b", 1.0, c)}, {ok, twice}), ConfigError);
}

TEST_CASE("piecewise constant data") {
  PiecewiseConstant const pc{{{0.0, 0.2}, {1.0, 0.7}}};
  CHECK(pc.at(-5.0) == 0.2);
  CHECK(pc.at(0.99) == 0.2);
  CHECK(pc.at(1.0) == 0.7);
  CHECK(!pc.is_constant());
  CHECK(PiecewiseConstant::constant(0.3).is_constant());
}

TEST_CASE("a single road with constant data stays constant") {
  DiscFlux const f = reference_flux();
  for (double c : {0.2, 0.5, 0.8}) {
    RoadNetwork const net(f, {plain("a", 1.0, PiecewiseConstant::constant(c))}, {});
    SimulationConfig cfg;
    cfg.dx = 0.05;
    cfg.lambda = 0.75;
    cfg.T = 1.0;
    cfg.output_times = {0.5};
    Trajectory const traj = simulate(net, cfg);
    REQUIRE(traj.snapshots.size() == 2);
    for (Snapshot const& s : traj.snapshots)
      for (double v : s.density[0]) CHECK(close(v, c));
  }
}

TEST_CASE("total mass") {
  DiscFlux const f = reference_flux();
  RoadNetwork const net(f, {plain("a", 2.0, PiecewiseConstant::constant(0.4))}, {});
  auto const grids = make_grids(net, 0.01, GridLayout::Cells);
  Snapshot const s{0, 0.0, {std::vector<double>(grids[0].x.size(), 0.4)}};
  CHECK(close(total_mass(grids, s), 0.8));
}

TEST_CASE("output times and time stop conventions") {
  Scenario s = bundled("scenario_1to2_ex1.json");
  s.sim.dx = 0.04;
  s.sim.lambda = 0.75;
  s.sim.output_times = {0.1, 0.25};
  s.sim.paper_time_stop = true;
  Trajectory const paper = simulate(s.network, s.sim);
  // dt = 0.03: the last full step not beyond each target
  REQUIRE(paper.snapshots.size() == 3);
  CHECK(paper.snapshots[0].step == 3);
  CHECK(paper.snapshots[1].step == 8);
  CHECK(paper.snapshots[2].step == 16);
  CHECK(close(paper.snapshots[2].time, 0.48));

  s.sim.paper_time_stop = false;
  Trajectory const exact_stop = simulate(s.network, s.sim);
  REQUIRE(exact_stop.snapshots.size() == 3);
  CHECK(close(exact_stop.snapshots[0].time, 0.1));
  CHECK(close(exact_stop.snapshots[2].time, 0.5));

  s.sim.output_times = {0.7};
  CHECK_THROWS_AS(simulate(s.network, s.sim), ConfigError);
}

TEST_CASE("the exact reference scheme samples the exact solution") {
  Scenario s = bundled("scenario_2to1_ex1.json");
  s.sim.scheme = SchemeKind::ExactReference;
  s.sim.dx = 0.1;
  Trajectory const traj = simulate(s.network, s.sim);
  Snapshot const& last = traj.snapshots.back();
  int const out = s.network.road_index("out1");
  auto const& x = traj.grids[static_cast<std::size_t>(out)].x;
  for (std::size_t k = 0; k < x.size(); ++k)
    CHECK(close(last.density[static_cast<std::size_t>(out)][k], x[k] <= last.time ? 0.45 : 0.3));
}

TEST_CASE("conservative coupling balances the junction") {
  for (char const* name : {"scenario_1to2_ex1.json", "scenario_2to1_ex2.json"}) {
    Scenario s = bundled(name);
    s.sim.outflow_coupling = OutflowCoupling::Conservative;
    s.sim.dx = 0.02;
    Trajectory const traj = simulate(s.network, s.sim);
    CHECK(std::abs(traj.mass.junction_created) <= 1e-12);
    CHECK(std::abs(traj.mass.final - traj.mass.initial - traj.mass.external_net) <= 1e-10);
  }
}

TEST_CASE("junction log records every step") {
  Scenario s = bundled("scenario_1to2_ex2.json");
  s.sim.dx = 0.04;
  Trajectory const traj = simulate(s.network, s.sim);
  CHECK(static_cast<int>(traj.junction_log.size()) == traj.steps);
  CHECK(close(traj.junction_log.front().trace.f_in[0], 0.3));
  CHECK(close(traj.junction_log.front().trace.f_adj_in[0], 0.5));
  CHECK(traj.g_min >= -0.25);
  CHECK(traj.g_max <= 0.0);
}
