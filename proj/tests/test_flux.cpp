#include <doctest.h>

#include <cmath>

#include "discnet/flux.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace discnet;
using testing_support::close;
using testing_support::reference_flux;

TEST_CASE("evaluation takes the left value at the critical density") {
  DiscFlux const f = reference_flux();
  CHECK(close(eval(f, 0.4), 0.4));
  CHECK(close(eval(f, 0.5), 0.5));
  CHECK(close(eval(f, 0.7), 0.15));
  CHECK(close(eval(f, 1.0), 0.0));
  CHECK_THROWS_AS(eval(f, -0.01), DomainError);
  CHECK_THROWS_AS(eval(f, 1.01), DomainError);
  CHECK(close(eval(f, 1.0 + 1e-14), 0.0));
}

TEST_CASE("jump magnitude") {
  CHECK(close(jump_magnitude(reference_flux()), 0.25));
  CHECK(jump_magnitude(DiscFlux(1.0, 0.0, -1.0, 1.0, 0.5, 1.0)) == 0.0);
  // branch 2 through (1, 0) with f(u*+) = 0.1
  CHECK(close(jump_magnitude(DiscFlux(1.0, 0.0, -0.2, 0.2, 0.5, 1.0)), 0.4));
}

TEST_CASE("flux construction rejects invalid data") {
  CHECK_THROWS_AS(DiscFlux(1.0, 0.0, 0.0, 0.1, 0.5, 1.0), ConfigError);
  CHECK_THROWS_AS(DiscFlux(-1.0, 0.0, -0.5, 0.5, 0.5, 1.0), ConfigError);
  CHECK_THROWS_AS(DiscFlux(1.0, 0.1, -0.5, 0.5, 0.5, 1.0), ConfigError);
  CHECK_THROWS_AS(DiscFlux(1.0, 0.0, -0.5, 0.6, 0.5, 1.0), ConfigError);
  CHECK_THROWS_AS(DiscFlux(1.0, 0.0, -0.5, 0.5, 1.2, 1.0), ConfigError);
  // an upward jump is not a valid diagram
  CHECK_THROWS_AS(DiscFlux(0.2, 0.0, -1.0, 1.0, 0.5, 1.0), ConfigError);
}

TEST_CASE("demand and supply") {
  DiscFlux const f = reference_flux();
  CHECK(close(demand(f, 0.4), 0.4));
  CHECK(close(demand(f, 0.9), 0.5));
  CHECK(demand(f, 0.0) == 0.0);
  CHECK(close(supply(f, 0.9), 0.05));
  CHECK(close(supply(f, 0.5, TrafficAhead::FreeFlowing), 0.5));
  CHECK(close(supply(f, 0.5, TrafficAhead::Congested), 0.25));
  CHECK(close(supply(f, 0.2), 0.5));
}

TEST_CASE("demand and supply agree with their sup characterisation") {
  DiscFlux const f = reference_flux();
  oracle::Affine const o = oracle::reference_flux();
  for (int k = 0; k <= 200; ++k) {
    double const u = k / 200.0;
    CHECK(close(demand(f, u), o.demand(u)));
    CHECK(close(supply(f, u), o.supply(u)));
    CHECK(close(supply(f, u, TrafficAhead::Congested), o.supply(u, true)));
  }
}

TEST_CASE("eta maps to the density with equal flux on the other branch") {
  DiscFlux const f = reference_flux();
  CHECK(close(eta(f, 0.2), 0.6));
  CHECK(close(eta(f, 0.3), 0.5));
  CHECK(close(eta(f, 0.7), 0.15));
  CHECK(close(eta(f, 0.5), 0.5));
  CHECK(close(eta(f, 0.25), 0.5));
  CHECK(close(eta(f, 0.0), 1.0));
}

TEST_CASE("gamma intersection") {
  DiscFlux const f = reference_flux();
  CHECK(close(gamma_intersection(f, 13.0 / 15.0), 1.0 / 3.0));
  CHECK(close(gamma_intersection(f, 1.0), 1.0 / 3.0));
  // affine branch 2: the chord never tilts, so the limit at u*+ is 1/3 as well
  CHECK(close(gamma_intersection(f, 0.5 + 1e-9), 1.0 / 3.0, 1e-9));
  CHECK_THROWS_AS(gamma_intersection(f, 0.5), DomainError);
  CHECK_THROWS_AS(gamma_intersection(f, 0.3), DomainError);
}

TEST_CASE("split into continuous part and Heaviside part") {
  SplitFlux const sf = split(reference_flux());
  CHECK(close(sf.p(0.7), 0.4));
  CHECK(close(sf.p(0.4), 0.4));
  CHECK(sf.g(0.4) == 0.0);
  CHECK(close(sf.g(0.7), -0.25));
  CHECK(sf.g(0.5) == 0.0);
  CHECK(close(sf.p(0.5), 0.5));
  CHECK(close(sf.p(0.5 + 1e-12), 0.5, 1e-11));
  for (int k = 0; k <= 100; ++k) {
    double const u = k / 100.0;
    CHECK(close(sf.p(u) + sf.g(u), eval(reference_flux(), u)));
  }
}

TEST_CASE("regularized flux") {
  DiscFlux const f = reference_flux();
  RegularizedFlux const rf = regularize(f, 0.1);
  CHECK(close(rf.mid_slope(), -3.0));
  CHECK(close(rf(0.5), 0.5));
  CHECK(close(rf(0.6), 0.2));
  CHECK(close(rf(0.55), 0.35));
  for (int k = 0; k <= 100; ++k) {
    double const u = k / 100.0;
    if (u > 0.5 && u < 0.6) continue;
    CHECK(close(rf(u), eval(f, u)));
  }
  CHECK(regularize(f, 0.01).mid_slope() < regularize(f, 0.1).mid_slope());
  CHECK_THROWS_AS(regularize(f, 0.0), ConfigError);
  CHECK_THROWS_AS(regularize(f, 0.6), ConfigError);
}

TEST_CASE("inverse of the implicit update map") {
  SplitFlux const sf = split(reference_flux());
  double const lambda = 0.75;
  CHECK(close(g_inverse(sf, lambda, 0.4), 0.4));
  CHECK(close(g_inverse(sf, lambda, 0.6), 0.5));
  CHECK(close(g_inverse(sf, lambda, 0.8), 0.6125));
  for (int k = 0; k <= 100; ++k) {
    double const u = k / 100.0;
    if (sf.base().at_critical(u)) continue;
    CHECK(close(g_inverse(sf, lambda, sf.G(lambda, u)), u));
  }
}
