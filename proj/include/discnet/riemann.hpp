#pragma once

#include <vector>

#include "discnet/flux.hpp"

namespace discnet {

enum class WaveKind { Shock, Contact, Rarefaction };

/// A single discontinuity (or fan) travelling at `speed`.
///
/// Rarefactions only arise for strictly concave branches, so with affine branches the
/// solver emits shocks and contacts. For a rarefaction `speed` is its leading edge and
/// `trailing_speed` its trailing edge; for the other kinds both coincide.
struct Wave {
  WaveKind kind = WaveKind::Shock;
  double speed = 0.0;
  double left_state = 0.0;
  double right_state = 0.0;
  double trailing_speed = 0.0;
};

/// Self-similar Riemann solution: constant states separated by waves of increasing speed.
struct WaveFan {
  double left_state = 0.0;
  double right_state = 0.0;
  std::vector<Wave> waves;
};

/// A density together with the flux it carries; the flux only differs from f(density)
/// when the density is exactly u*, where any value in [f(u*+), f(u*-)] can be selected.
struct RiemannState {
  double density = 0.0;
  double flux = 0.0;
};

RiemannState state_of(DiscFlux const& f, double u);

WaveFan solve_riemann(DiscFlux const& f, double u_left, double u_right);
WaveFan solve_riemann(DiscFlux const& f, RiemannState left, RiemannState right);

/// Density at xi = x / t. On a wave exactly, the state to its left is returned.
double evaluate_fan(WaveFan const& fan, double xi);

}  // namespace discnet
