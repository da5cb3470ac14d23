#include "discnet/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace discnet {

namespace {

constexpr double kCflTol = 1e-12;
constexpr double kClampTol = 1e-9;

double clamp_state(double u, double u_max, double& clamped) {
  if (!(u >= -kClampTol && u <= u_max + kClampTol)) {
    std::ostringstream os;
    os.precision(17);
    os << "density " << u << " left [0, " << u_max << "] during an update";
    throw DomainError(os.str());
  }
  double const c = std::clamp(u, 0.0, u_max);
  clamped += std::abs(c - u);
  return c;
}

void cfl_or_throw(double lambda, double slope, double extra_bound, char const* scheme) {
  double const admissible = std::min(1.0 / slope, extra_bound);
  if (!(lambda > 0.0)) throw CflError(std::string(scheme) + ": lambda must be positive", admissible);
  if (lambda > admissible * (1.0 + kCflTol)) {
    std::ostringstream os;
    os << scheme << ": lambda = " << lambda << " violates the CFL bound; admissible lambda <= " << admissible;
    throw CflError(os.str(), admissible);
  }
}

}  // namespace

HalfStep half_step_g(std::span<double const> u, SplitFlux const& sf, double lambda, double g_right) {
  double const alpha = sf.alpha();
  double const us = sf.u_star();
  double const shift = lambda * alpha;
  std::size_t const n = u.size();
  HalfStep hs{std::vector<double>(n), std::vector<double>(n + 1)};
  hs.g[n] = g_right;
  for (std::size_t k = n; k-- > 0;) {
    double const z = u[k] - lambda * hs.g[k + 1];
    if (z < us) {
      hs.u_half[k] = sf.g_inverse(lambda, z);
      hs.g[k] = 0.0;
    } else if (z < us + shift) {
      hs.u_half[k] = us;
      hs.g[k] = std::clamp((us - z) / lambda, -alpha, 0.0);
    } else {
      hs.u_half[k] = sf.g_inverse(lambda, z);
      hs.g[k] = -alpha;
    }
  }
  return hs;
}

double godunov_flux_p(SplitFlux const& sf, double u_left, double u_right) {
  double const us = sf.u_star();
  return std::min(sf.p(std::min(u_left, us)), sf.p(std::max(u_right, us)));
}

double godunov_flux(RegularizedFlux const& rf, double u_left, double u_right) {
  return std::min(rf.demand(u_left), rf.supply(u_right));
}

double right_boundary_g(DiscFlux const& f, double s, TrafficAhead ahead) {
  s = f.checked(s);
  if (f.at_critical(s)) return ahead == TrafficAhead::Congested ? -f.alpha() : 0.0;
  return s < f.u_star() ? 0.0 : -f.alpha();
}

void check_cfl(SplitFlux const& sf, double lambda) {
  cfl_or_throw(lambda, sf.base().max_abs_slope(), INFINITY, "splitting scheme");
}

void check_cfl(RegularizedFlux const& rf, double lambda) {
  cfl_or_throw(lambda, rf.max_abs_slope(), rf.epsilon(), "regularized scheme");
}

StepReport full_step(std::vector<double>& u, SplitFlux const& sf, double lambda, LeftBoundary left,
                     RightBoundary right) {
  check_cfl(sf, lambda);
  DiscFlux const& f = sf.base();
  std::size_t const n = u.size();
  if (n == 0) throw ConfigError("a road needs at least one cell");

  double seed = 0.0;
  switch (right.kind) {
    case RightBoundary::Kind::Ghost: seed = right_boundary_g(f, right.value, right.ahead); break;
    case RightBoundary::Kind::Coupled: seed = right.g; break;
    case RightBoundary::Kind::Closed: seed = -f.alpha(); break;
  }
  HalfStep const hs = half_step_g(u, sf, lambda, seed);

  std::vector<double> p(n + 1);
  for (std::size_t k = 1; k < n; ++k) p[k] = godunov_flux_p(sf, hs.u_half[k - 1], hs.u_half[k]);
  switch (left.kind) {
    case LeftBoundary::Kind::Ghost: p[0] = godunov_flux_p(sf, left.value, hs.u_half[0]); break;
    case LeftBoundary::Kind::PrescribedP: p[0] = left.value; break;
    case LeftBoundary::Kind::TotalFlux: p[0] = left.value - hs.g[0]; break;
    case LeftBoundary::Kind::Closed: p[0] = -hs.g[0]; break;
  }
  switch (right.kind) {
    case RightBoundary::Kind::Ghost: p[n] = godunov_flux_p(sf, hs.u_half[n - 1], right.value); break;
    case RightBoundary::Kind::Coupled: p[n] = right.value; break;
    case RightBoundary::Kind::Closed: p[n] = f.alpha(); break;
  }

  StepReport report;
  for (std::size_t k = 0; k < n; ++k)
    u[k] = clamp_state(hs.u_half[k] - lambda * (p[k + 1] - p[k]), f.u_max(), report.clamped);
  report.flux_left = p[0] + hs.g[0];
  report.flux_right = p[n] + hs.g[n];
  auto const [lo, hi] = std::minmax_element(hs.g.begin(), hs.g.end());
  report.g_min = *lo;
  report.g_max = *hi;
  report.first_cell_g = hs.g[0];
  return report;
}

StepReport step_regularized(std::vector<double>& u, RegularizedFlux const& rf, double lambda, LeftBoundary left,
                            RightBoundary right) {
  check_cfl(rf, lambda);
  std::size_t const n = u.size();
  if (n == 0) throw ConfigError("a road needs at least one cell");
  std::vector<double> flux(n + 1);
  for (std::size_t k = 1; k < n; ++k) flux[k] = godunov_flux(rf, u[k - 1], u[k]);
  switch (left.kind) {
    case LeftBoundary::Kind::Ghost: flux[0] = godunov_flux(rf, left.value, u[0]); break;
    case LeftBoundary::Kind::PrescribedP:
    case LeftBoundary::Kind::TotalFlux: flux[0] = left.value; break;
    case LeftBoundary::Kind::Closed: flux[0] = 0.0; break;
  }
  switch (right.kind) {
    case RightBoundary::Kind::Ghost: flux[n] = godunov_flux(rf, u[n - 1], right.value); break;
    case RightBoundary::Kind::Coupled: flux[n] = right.value; break;
    case RightBoundary::Kind::Closed: flux[n] = 0.0; break;
  }
  StepReport report;
  for (std::size_t k = 0; k < n; ++k)
    u[k] = clamp_state(u[k] - lambda * (flux[k + 1] - flux[k]), rf.base().u_max(), report.clamped);
  report.flux_left = flux[0];
  report.flux_right = flux[n];
  return report;
}

}  // namespace discnet
