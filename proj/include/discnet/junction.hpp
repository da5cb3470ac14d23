#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "discnet/flux.hpp"
#include "discnet/riemann.hpp"

namespace discnet {

struct OneToOne {};

/// One incoming road split onto two outgoing roads with fractions beta1 + beta2 = 1.
struct OneToTwo {
  double beta1 = 0.5;
  double beta2 = 0.5;
};

/// Two incoming roads merging; q is the share of capacity granted to the first one.
struct TwoToOne {
  double q = 0.5;
};

using JunctionSpec = std::variant<OneToOne, OneToTwo, TwoToOne>;

void validate(JunctionSpec const& spec);
int incoming_count(JunctionSpec const& spec);
int outgoing_count(JunctionSpec const& spec);
std::string kind_name(JunctionSpec const& spec);

/// Selects the flux adjustment rules. `StrictPaper` follows the literal rule text
/// verbatim, including comparisons that mix S*beta with S/beta and the swapped merge update.
enum class AlgorithmVariant { Corrected, StrictPaper };

struct JunctionFluxes {
  std::vector<double> f_in;
  std::vector<double> f_out;
};

/// Flux maximisation from precomputed demands and supplies; reused by the regularized scheme.
JunctionFluxes junction_fluxes_from(JunctionSpec const& spec, std::span<double const> demands,
                                    std::span<double const> supplies);

JunctionFluxes junction_fluxes(DiscFlux const& f, JunctionSpec const& spec, std::span<double const> u0_in,
                               std::span<double const> u0_out, std::span<TrafficAhead const> ahead = {});

struct JunctionDensities {
  std::vector<RiemannState> in;
  std::vector<RiemannState> out;
};

JunctionDensities junction_densities(DiscFlux const& f, JunctionSpec const& spec, std::span<double const> u0_in,
                                     std::span<double const> u0_out, JunctionFluxes const& fluxes,
                                     std::span<TrafficAhead const> ahead = {});

/// Raw and p-adjusted fluxes at one junction for one time step.
struct JunctionTrace {
  std::vector<double> f_in;
  std::vector<double> f_out;
  std::vector<double> f_adj_in;
  std::vector<double> f_adj_out;
  std::vector<double> g_boundary;
};

JunctionTrace adjust_1to1(DiscFlux const& f, double d1, double s1);
JunctionTrace adjust_1to2(DiscFlux const& f, double d1, double s1, double s2, double beta1, double beta2,
                          AlgorithmVariant variant = AlgorithmVariant::Corrected);
JunctionTrace adjust_2to1(DiscFlux const& f, double d1, double d2, double s1, double q,
                          AlgorithmVariant variant = AlgorithmVariant::Corrected);

JunctionTrace adjust(DiscFlux const& f, JunctionSpec const& spec, std::span<double const> demands,
                     std::span<double const> supplies, AlgorithmVariant variant = AlgorithmVariant::Corrected);

double boundary_g(JunctionTrace const& trace, int incoming_index);

}  // namespace discnet
