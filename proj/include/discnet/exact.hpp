#pragma once

#include <span>
#include <vector>

#include "discnet/junction.hpp"
#include "discnet/network.hpp"
#include "discnet/riemann.hpp"

namespace discnet {

/// Exact solution around one junction with constant data on every road.
/// Fans are anchored at the junction: incoming fans only hold waves of nonpositive speed,
/// outgoing fans only waves of nonnegative speed.
struct JunctionSolution {
  JunctionFluxes fluxes;
  JunctionDensities densities;
  std::vector<WaveFan> in;
  std::vector<WaveFan> out;
};

JunctionSolution exact_network_solution(DiscFlux const& f, JunctionSpec const& spec, std::span<double const> u0_in,
                                        std::span<double const> u0_out, std::span<TrafficAhead const> ahead = {});

/// Reference solution of a whole scenario: at most one junction, constant data on attached
/// roads, and at most one initial jump on unattached roads.
class ExactSolution {
 public:
  explicit ExactSolution(RoadNetwork const& net);

  /// Density at (x, t); x must lie on the road, otherwise DomainError.
  double evaluate(int road, double x, double t) const;
  WaveFan const& fan(int road) const { return fans_[static_cast<std::size_t>(road)]; }
  double anchor(int road) const { return anchors_[static_cast<std::size_t>(road)]; }

  /// Time until the first wave reaches the far end of some road; beyond it the solution is
  /// no longer the pure junction solution.
  double valid_until() const { return horizon_; }
  bool valid_at(double t) const { return t <= horizon_ * (1.0 + 1e-12); }

 private:
  RoadNetwork net_;
  std::vector<WaveFan> fans_;
  std::vector<double> anchors_;
  double horizon_ = 0.0;
};

}  // namespace discnet
