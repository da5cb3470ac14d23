#pragma once

#include <span>
#include <vector>

#include "discnet/flux.hpp"

namespace discnet {

/// Result of the implicit half step for the Heaviside part.
///
/// `g` has one more entry than `u_half`: g[j] belongs to the left face of cell j and
/// g.back() is the seed supplied at the right end of the road.
struct HalfStep {
  std::vector<double> u_half;
  std::vector<double> g;
};

HalfStep half_step_g(std::span<double const> u, SplitFlux const& sf, double lambda, double g_right);

double godunov_flux_p(SplitFlux const& sf, double u_left, double u_right);
double godunov_flux(RegularizedFlux const& rf, double u_left, double u_right);

/// g value beyond a far-field right boundary whose trace is s.
double right_boundary_g(DiscFlux const& f, double s, TrafficAhead ahead = TrafficAhead::FreeFlowing);

/// How the left face of a road is closed.
///
/// Ghost samples a far-field density r, PrescribedP imposes the p-part of the face flux,
/// TotalFlux imposes the full face flux (p plus the g carried by the first cell), and
/// Closed lets nothing through.
struct LeftBoundary {
  enum class Kind { Ghost, PrescribedP, TotalFlux, Closed };
  Kind kind = Kind::Ghost;
  double value = 0.0;

  static LeftBoundary ghost(double r) { return {Kind::Ghost, r}; }
  static LeftBoundary prescribed_p(double flux) { return {Kind::PrescribedP, flux}; }
  static LeftBoundary total_flux(double flux) { return {Kind::TotalFlux, flux}; }
  static LeftBoundary closed() { return {Kind::Closed, 0.0}; }
};

/// How the right face of a road is closed. Coupled carries the adjusted junction flux and its g.
struct RightBoundary {
  enum class Kind { Ghost, Coupled, Closed };
  Kind kind = Kind::Ghost;
  double value = 0.0;
  double g = 0.0;
  TrafficAhead ahead = TrafficAhead::FreeFlowing;

  static RightBoundary ghost(double s, TrafficAhead ahead = TrafficAhead::FreeFlowing) {
    return {Kind::Ghost, s, 0.0, ahead};
  }
  static RightBoundary coupled(double p_flux, double g) { return {Kind::Coupled, p_flux, g, TrafficAhead::FreeFlowing}; }
  static RightBoundary closed() { return {Kind::Closed, 0.0, 0.0, TrafficAhead::FreeFlowing}; }
};

/// Face fluxes actually used by a step (p plus g for the splitting scheme) and diagnostics.
struct StepReport {
  double flux_left = 0.0;
  double flux_right = 0.0;
  double g_min = 0.0;
  double g_max = 0.0;
  double first_cell_g = 0.0;
  double clamped = 0.0;
};

/// Checks lambda * max|p'| <= 1, throwing CflError otherwise.
void check_cfl(SplitFlux const& sf, double lambda);
void check_cfl(RegularizedFlux const& rf, double lambda);

/// One step of the splitting scheme on a single road, updating `u` in place.
StepReport full_step(std::vector<double>& u, SplitFlux const& sf, double lambda, LeftBoundary left,
                     RightBoundary right);

/// One Godunov step on the regularized flux. Coupled and TotalFlux values are total face fluxes.
StepReport step_regularized(std::vector<double>& u, RegularizedFlux const& rf, double lambda, LeftBoundary left,
                            RightBoundary right);

}  // namespace discnet
