#include "discnet/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace discnet {

namespace {

RiemannState far_state(DiscFlux const& f, double u, TrafficAhead ahead) {
  RiemannState s = state_of(f, u);
  if (f.at_critical(u) && ahead == TrafficAhead::Congested) s.flux = f.f_plus();
  return s;
}

double reach_time(double distance, double speed) {
  if (speed == 0.0) return std::numeric_limits<double>::infinity();
  return distance / std::abs(speed);
}

}  // namespace

JunctionSolution exact_network_solution(DiscFlux const& f, JunctionSpec const& spec, std::span<double const> u0_in,
                                        std::span<double const> u0_out, std::span<TrafficAhead const> ahead) {
  JunctionSolution sol;
  sol.fluxes = junction_fluxes(f, spec, u0_in, u0_out, ahead);
  sol.densities = junction_densities(f, spec, u0_in, u0_out, sol.fluxes, ahead);
  for (std::size_t i = 0; i < u0_in.size(); ++i)
    sol.in.push_back(solve_riemann(f, state_of(f, u0_in[i]), sol.densities.in[i]));
  for (std::size_t j = 0; j < u0_out.size(); ++j) {
    TrafficAhead const a = j < ahead.size() ? ahead[j] : TrafficAhead::FreeFlowing;
    sol.out.push_back(solve_riemann(f, sol.densities.out[j], far_state(f, u0_out[j], a)));
  }
  return sol;
}

ExactSolution::ExactSolution(RoadNetwork const& net) : net_(net) {
  DiscFlux const& f = net.flux();
  std::size_t const n = net.roads().size();
  fans_.resize(n);
  anchors_.assign(n, 0.0);
  horizon_ = std::numeric_limits<double>::infinity();
  if (net.junctions().size() > 1) throw ConfigError("exact reference supports at most one junction");

  if (net.junctions().size() == 1) {
    Junction const& jn = net.junctions().front();
    std::vector<double> u_in, u_out;
    for (int r : jn.in) {
      auto const& u0 = net.roads()[static_cast<std::size_t>(r)].u0;
      if (!u0.is_constant()) throw ConfigError("exact reference needs constant initial data on junction roads");
      u_in.push_back(u0.pieces.front().second);
    }
    for (int r : jn.out) {
      auto const& u0 = net.roads()[static_cast<std::size_t>(r)].u0;
      if (!u0.is_constant()) throw ConfigError("exact reference needs constant initial data on junction roads");
      u_out.push_back(u0.pieces.front().second);
    }
    JunctionSolution const sol = exact_network_solution(f, jn.spec, u_in, u_out, jn.ahead_out);
    for (std::size_t i = 0; i < jn.in.size(); ++i) {
      auto const r = static_cast<std::size_t>(jn.in[i]);
      fans_[r] = sol.in[i];
      anchors_[r] = 0.0;
    }
    for (std::size_t j = 0; j < jn.out.size(); ++j) {
      auto const r = static_cast<std::size_t>(jn.out[j]);
      fans_[r] = sol.out[j];
      anchors_[r] = 0.0;
    }
  }

  for (std::size_t r = 0; r < n; ++r) {
    int const ri = static_cast<int>(r);
    Road const& road = net.roads()[r];
    double const a = net.road_start(ri);
    double const b = net.road_end(ri);
    if (!net.left_attachment(ri).attached() && !net.right_attachment(ri).attached()) {
      auto const& pieces = road.u0.pieces;
      if (pieces.size() > 2) throw ConfigError("exact reference supports at most one initial jump per road");
      if (pieces.size() == 2) {
        anchors_[r] = pieces[1].first;
        fans_[r] = solve_riemann(f, pieces[0].second, pieces[1].second);
      } else {
        anchors_[r] = a;
        fans_[r] = WaveFan{pieces.front().second, pieces.front().second, {}};
      }
    }
    for (Wave const& w : fans_[r].waves) {
      double const distance = w.speed < 0.0 ? anchors_[r] - a : b - anchors_[r];
      horizon_ = std::min(horizon_, reach_time(distance, w.speed));
    }
  }
}

double ExactSolution::evaluate(int road, double x, double t) const {
  auto const r = static_cast<std::size_t>(road);
  if (r >= fans_.size()) throw std::out_of_range("exact solution: road index out of range");
  double const a = net_.road_start(road), b = net_.road_end(road);
  double const tol = 1e-12 * std::max(1.0, b - a);
  if (!(x >= a - tol && x <= b + tol))
    throw DomainError("exact solution: x = " + std::to_string(x) + " lies outside road " + net_.roads()[r].id);
  if (t <= 0.0) return net_.roads()[r].u0.at(x);
  return evaluate_fan(fans_[r], (x - anchors_[r]) / t);
}

}  // namespace discnet
