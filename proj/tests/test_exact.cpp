#include <doctest.h>

#include <filesystem>

#include "discnet/config.hpp"
#include "discnet/exact.hpp"
#include "golden.hpp"
#include "test_support.hpp"

using namespace discnet;
using testing_support::close;
using testing_support::reference_flux;

namespace {

Scenario bundled(std::string const& name) { return load_scenario(std::filesystem::path(DISCNET_CONFIG_DIR) / name); }

}  // namespace

TEST_CASE("junction solution of the split with a jammed first branch") {
  DiscFlux const f = reference_flux();
  std::vector<double> const in{0.4}, out{0.9, 0.7};
  JunctionSolution const sol = exact_network_solution(f, OneToTwo{0.75, 0.25}, in, out);
  REQUIRE(sol.in[0].waves.size() == 2);
  CHECK(close(sol.in[0].waves[0].speed, -1.5));
  CHECK(close(sol.in[0].waves[1].speed, -0.5));
  CHECK(close(evaluate_fan(sol.in[0], -1.0), 0.5));
  CHECK(sol.out[0].waves.empty());
}

TEST_CASE("merge without congestion") {
  DiscFlux const f = reference_flux();
  std::vector<double> const in{0.2, 0.25}, out{0.3};
  JunctionSolution const sol = exact_network_solution(f, TwoToOne{0.75}, in, out);
  CHECK(sol.in[0].waves.empty());
  CHECK(sol.in[1].waves.empty());
  REQUIRE(sol.out[0].waves.size() == 1);
  CHECK(close(sol.out[0].waves[0].speed, 1.0));
  CHECK(close(evaluate_fan(sol.out[0], 0.5), 0.45));
}

TEST_CASE("equal equilibrium densities stay constant") {
  DiscFlux const f = reference_flux();
  std::vector<double> const in{0.2}, out{0.2};
  JunctionSolution const sol = exact_network_solution(f, OneToOne{}, in, out);
  CHECK(sol.in[0].waves.empty());
  CHECK(sol.out[0].waves.empty());
}

TEST_CASE("point evaluation of the bundled scenarios") {
  Scenario const ex1 = bundled("scenario_1to2_ex1.json");
  ExactSolution const e1(ex1.network);
  CHECK(close(e1.evaluate(ex1.network.road_index("in1"), -1.0, 1.0), 0.5));

  Scenario const m2 = bundled("scenario_2to1_ex2.json");
  ExactSolution const e2(m2.network);
  int const in1 = m2.network.road_index("in1");
  CHECK(close(e2.evaluate(in1, -1.5, 1.0), 0.5));
  CHECK(close(e2.evaluate(in1, -1.9, 0.5), 0.6));
  CHECK_THROWS_AS(e2.evaluate(in1, -3.0, 1.0), DomainError);
  CHECK(close(e2.valid_until(), 1.0));

  for (int r = 0; r < 3; ++r)
    for (double x : {0.0, 0.7, 1.9}) {
      double const xx = m2.network.road_start(r) + x;
      CHECK(e2.evaluate(r, xx, 0.0) == m2.network.roads()[static_cast<std::size_t>(r)].u0.at(xx));
    }
}

TEST_CASE("golden closed-form solutions") {
  for (golden::Scenario const& g : golden::all()) {
    Scenario const s = bundled(g.config);
    ExactSolution const exact(s.network);
    for (golden::Road const& road : g.roads) {
      int const r = s.network.road_index(road.id);
      WaveFan const& fan = exact.fan(r);
      REQUIRE(fan.waves.size() == road.speeds.size());
      for (std::size_t w = 0; w < road.speeds.size(); ++w) CHECK(close(fan.waves[w].speed, road.speeds[w]));
      double const a = s.network.road_start(r);
      for (double t : {0.5, 1.0})
        for (int k = 0; k < 20; ++k) {
          double const x = a + 0.1 * k + 0.03;
          CHECK(close(exact.evaluate(r, x, t), road.u(x, t)));
        }
    }
  }
}

TEST_CASE("exact reference limits") {
  DiscFlux const f = reference_flux();
  Road a{"a", 1.0, 0, PiecewiseConstant{{{0.0, 0.4}, {0.5, 0.9}}}, {}, {}};
  RoadNetwork const single(f, {a}, {});
  ExactSolution const e(single);
  CHECK(close(e.anchor(0), 0.5));
  CHECK(close(e.evaluate(0, 0.1, 0.1), 0.4));
  CHECK(close(e.evaluate(0, 0.9, 0.1), 0.9));

  Road b{"b", 1.0, 0, PiecewiseConstant{{{0.0, 0.4}, {0.3, 0.9}, {0.6, 0.2}}}, {}, {}};
  CHECK_THROWS_AS(ExactSolution(RoadNetwork(f, {b}, {})), ConfigError);
}
