#include <doctest.h>

#include <random>
#include <vector>

#include "discnet/junction.hpp"
#include "test_support.hpp"

using namespace discnet;
using testing_support::close;
using testing_support::reference_flux;

namespace {

std::vector<double> demands(DiscFlux const& f, std::vector<double> const& u) {
  std::vector<double> d;
  for (double v : u) d.push_back(demand(f, v));
  return d;
}

std::vector<double> supplies(DiscFlux const& f, std::vector<double> const& u, std::vector<TrafficAhead> const& a) {
  std::vector<double> s;
  for (std::size_t j = 0; j < u.size(); ++j) s.push_back(supply(f, u[j], a[j]));
  return s;
}

}  // namespace

TEST_CASE("maximal junction fluxes") {
  DiscFlux const f = reference_flux();
  {
    std::vector<double> const in{0.4}, out{0.9, 0.7};
    auto const fx = junction_fluxes(f, OneToTwo{0.75, 0.25}, in, out);
    CHECK(close(fx.f_in[0], 1.0 / 15.0));
    CHECK(close(fx.f_out[0], 1.0 / 20.0));
    CHECK(close(fx.f_out[1], 1.0 / 60.0));
  }
  {
    std::vector<double> const in{0.2, 0.25}, out{0.3};
    auto const fx = junction_fluxes(f, TwoToOne{0.75}, in, out);
    CHECK(close(fx.f_in[0], 0.2));
    CHECK(close(fx.f_in[1], 0.25));
    CHECK(close(fx.f_out[0], 0.45));
  }
  {
    std::vector<double> const in{0.6, 0.7}, out{0.4};
    auto const fx = junction_fluxes(f, TwoToOne{0.8}, in, out);
    CHECK(close(fx.f_in[0], 0.4));
    CHECK(close(fx.f_in[1], 0.1));
    CHECK(close(fx.f_out[0], 0.5));
  }
  for (double u : {0.0, 0.3, 0.5, 0.9}) {
    std::vector<double> const in{0.0}, out{u};
    auto const fx = junction_fluxes(f, OneToOne{}, in, out);
    CHECK(fx.f_in[0] == 0.0);
    CHECK(fx.f_out[0] == 0.0);
  }
}

TEST_CASE("junction specifications are validated") {
  CHECK_THROWS_AS(validate(OneToTwo{1.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(validate(OneToTwo{0.6, 0.6}), ConfigError);
  CHECK_THROWS_AS(validate(TwoToOne{0.0}), ConfigError);
  CHECK_THROWS_AS(validate(TwoToOne{1.5}), ConfigError);
  CHECK_NOTHROW(validate(OneToTwo{0.75, 0.25}));
  CHECK(kind_name(TwoToOne{}) == "2to1");
  CHECK(incoming_count(TwoToOne{}) == 2);
  CHECK(outgoing_count(OneToTwo{}) == 2);
  DiscFlux const f = reference_flux();
  std::vector<double> const one{0.3}, two{0.3, 0.3};
  CHECK_THROWS_AS(junction_fluxes(f, OneToTwo{}, one, one), ConfigError);
}

TEST_CASE("junction densities") {
  DiscFlux const f = reference_flux();
  {
    std::vector<double> const in{0.4}, out{0.9, 0.7};
    JunctionSpec const spec = OneToTwo{0.75, 0.25};
    auto const dens = junction_densities(f, spec, in, out, junction_fluxes(f, spec, in, out));
    CHECK(close(dens.in[0].density, 13.0 / 15.0));
    CHECK(close(dens.out[0].density, 0.9));
    CHECK(close(dens.out[1].density, 1.0 / 60.0));
  }
  {
    std::vector<double> const in{0.6, 0.7}, out{0.4};
    JunctionSpec const spec = TwoToOne{0.8};
    auto const dens = junction_densities(f, spec, in, out, junction_fluxes(f, spec, in, out));
    CHECK(dens.in[0].density == 0.5);
    CHECK(close(dens.in[0].flux, 0.4));
    CHECK(close(dens.in[1].density, 0.8));
    CHECK(close(dens.out[0].density, 0.5));
  }
  {
    std::vector<double> const in{0.2}, out{0.2};
    JunctionSpec const spec = OneToOne{};
    auto const dens = junction_densities(f, spec, in, out, junction_fluxes(f, spec, in, out));
    CHECK(close(dens.in[0].density, 0.2));
    CHECK(close(dens.out[0].density, 0.2));
  }
  {
    std::vector<double> const in{0.4}, out{0.3};
    JunctionFluxes const bad{{0.45}, {0.45}};
    CHECK_THROWS_AS(junction_densities(f, OneToOne{}, in, out, bad), DomainError);
  }
}

TEST_CASE("one-to-one adjustment") {
  DiscFlux const f = reference_flux();
  auto const b = adjust_1to1(f, 0.4, 0.05);
  CHECK(close(b.f_adj_in[0], 0.3));
  CHECK(close(b.f_adj_out[0], 0.3));
  CHECK(close(b.g_boundary[0], -0.25));
  auto const full = adjust_1to1(f, 0.5, 0.5);
  CHECK(close(full.f_adj_in[0], 0.5));
  CHECK(close(full.f_adj_out[0], 0.5));
  auto const free = adjust_1to1(f, 0.2, 0.5);
  CHECK(close(free.f_adj_in[0], 0.2));
  CHECK(close(free.f_adj_out[0], 0.2));
  CHECK(boundary_g(free, 0) == 0.0);
  auto const tie = adjust_1to1(f, 0.2, 0.2);
  CHECK(close(tie.f_adj_in[0], 0.2));
  CHECK(close(tie.f_adj_out[0], 0.45));
}

TEST_CASE("one-to-two adjustment") {
  DiscFlux const f = reference_flux();
  auto const ex1 = adjust_1to2(f, 0.4, 0.05, 0.15, 0.75, 0.25);
  CHECK(close(ex1.f_adj_in[0], 19.0 / 60.0));
  CHECK(close(ex1.f_adj_out[0], 0.3));
  CHECK(close(ex1.f_adj_out[1], 1.0 / 60.0));
  CHECK(close(boundary_g(ex1, 0), -0.25));

  auto const ex2 = adjust_1to2(f, 0.4, 0.15, 0.5, 0.5, 0.5);
  CHECK(close(ex2.f_in[0], 0.3));
  CHECK(close(ex2.f_adj_in[0], 0.5));
  CHECK(close(ex2.f_adj_out[0], 0.4));
  CHECK(close(ex2.f_adj_out[1], 0.15));
  CHECK(close(boundary_g(ex2, 0), -0.2));

  CHECK_THROWS_AS(adjust_1to2(f, 0.4, 0.15, 0.5, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(boundary_g(ex2, 1), std::out_of_range);
}

TEST_CASE("literal algorithm text differs from the corrected rules") {
  DiscFlux const f = reference_flux();
  // the corrected rules shift the binding road; the literal guards compare S*beta with S/beta
  auto const strict = adjust_1to2(f, 0.4, 0.15, 0.5, 0.5, 0.5, AlgorithmVariant::StrictPaper);
  auto const fixed = adjust_1to2(f, 0.4, 0.15, 0.5, 0.5, 0.5, AlgorithmVariant::Corrected);
  CHECK(close(strict.f_adj_in[0], fixed.f_adj_in[0]));
  CHECK(close(strict.f_adj_out[0], 0.15));
  CHECK(close(fixed.f_adj_out[0], 0.4));
  // the literal merge update z2 = f_max - z2 breaks conservation when the first road is capped
  auto const merge = adjust_2to1(f, 0.2, 0.5, 0.5, 0.8, AlgorithmVariant::StrictPaper);
  CHECK(!close(merge.f_in[0] + merge.f_in[1], merge.f_out[0]));
  auto const merge_fixed = adjust_2to1(f, 0.2, 0.5, 0.5, 0.8);
  CHECK(close(merge_fixed.f_in[0] + merge_fixed.f_in[1], merge_fixed.f_out[0]));
}

TEST_CASE("two-to-one adjustment") {
  DiscFlux const f = reference_flux();
  auto const ex2 = adjust_2to1(f, 0.5, 0.5, 0.5, 0.8);
  CHECK(close(ex2.f_adj_in[0], 0.5));
  CHECK(close(ex2.f_adj_in[1], 0.35));
  CHECK(close(ex2.f_adj_out[0], 0.5));
  CHECK(close(boundary_g(ex2, 0), -0.1));
  CHECK(close(boundary_g(ex2, 1), -0.25));

  auto const ex1 = adjust_2to1(f, 0.2, 0.25, 0.5, 0.75);
  CHECK(close(ex1.f_adj_in[0], 0.2));
  CHECK(close(ex1.f_adj_in[1], 0.25));
  CHECK(close(ex1.f_adj_out[0], 0.45));

  auto const zero = adjust_2to1(f, 0.0, 0.0, 0.3, 0.5);
  for (double v : {zero.f_adj_in[0], zero.f_adj_in[1], zero.f_adj_out[0], zero.g_boundary[0], zero.g_boundary[1]})
    CHECK(v == 0.0);
}

TEST_CASE("adjusted fluxes equal p at the junction densities") {
  DiscFlux const f = reference_flux();
  SplitFlux const sf = split(f);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto draw = [&] { return uni(rng) < 0.15 ? 0.5 : uni(rng); };
  auto ahead = [&] { return uni(rng) < 0.5 ? TrafficAhead::FreeFlowing : TrafficAhead::Congested; };
  for (int k = 0; k < 3000; ++k) {
    JunctionSpec spec;
    int const kind = k % 3;
    if (kind == 0) spec = OneToOne{};
    else if (kind == 1) {
      double const b = 0.05 + 0.9 * uni(rng);
      spec = OneToTwo{b, 1.0 - b};
    } else {
      spec = TwoToOne{0.05 + 0.9 * uni(rng)};
    }
    std::vector<double> in, out;
    std::vector<TrafficAhead> a;
    for (int i = 0; i < incoming_count(spec); ++i) in.push_back(draw());
    for (int j = 0; j < outgoing_count(spec); ++j) {
      out.push_back(draw());
      a.push_back(ahead());
    }
    auto const fx = junction_fluxes(f, spec, in, out, a);
    auto const dens = junction_densities(f, spec, in, out, fx, a);
    auto const trace = adjust(f, spec, demands(f, in), supplies(f, out, a));
    double sum_shift = 0.0, sum_g = 0.0, sum_in = 0.0, sum_out = 0.0;
    for (std::size_t i = 0; i < in.size(); ++i) {
      CHECK(close(trace.f_adj_in[i], sf.p(dens.in[i].density)));
      CHECK(trace.g_boundary[i] >= -f.alpha());
      CHECK(trace.g_boundary[i] <= 0.0);
      sum_shift += trace.f_adj_in[i] - trace.f_in[i];
      sum_g += trace.g_boundary[i];
      sum_in += trace.f_in[i];
    }
    for (std::size_t j = 0; j < out.size(); ++j) {
      CHECK(close(trace.f_adj_out[j], sf.p(dens.out[j].density)));
      sum_out += trace.f_out[j];
    }
    CHECK(close(sum_shift, -sum_g));
    CHECK(close(sum_in, sum_out));
  }
}
