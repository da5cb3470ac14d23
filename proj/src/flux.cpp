#include "discnet/flux.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace discnet {

namespace {

constexpr double kDomainTol = 1e-12;
constexpr double kShapeTol = 1e-12;

std::string describe(double u) {
  std::ostringstream os;
  os.precision(17);
  os << u;
  return os.str();
}

}  // namespace

DiscFlux::DiscFlux(double d1, double d0, double e1, double e0, double u_star, double u_max)
    : d1_(d1), d0_(d0), e1_(e1), e0_(e0), u_star_(u_star), u_max_(u_max) {
  if (!(std::isfinite(d1) && std::isfinite(d0) && std::isfinite(e1) && std::isfinite(e0) &&
        std::isfinite(u_star) && std::isfinite(u_max)))
    throw ConfigError("flux parameters must be finite");
  if (!(u_max > 0.0)) throw ConfigError("flux: u_max must be positive");
  if (!(u_star > 0.0 && u_star < u_max)) throw ConfigError("flux: u_star must lie strictly inside (0, u_max)");
  if (!(d1 > 0.0)) throw ConfigError("flux: branch 1 must be increasing (d1 > 0)");
  if (!(e1 < 0.0)) throw ConfigError("flux: branch 2 must be decreasing (e1 < 0)");

  f_minus_ = branch1(u_star);
  f_plus_ = branch2(u_star);
  double const scale = std::max({std::abs(f_minus_), std::abs(f_plus_), d1 * u_max, 1e-300});
  if (std::abs(d0) > kShapeTol * scale) throw ConfigError("flux: f(0) must vanish (d0 = 0)");
  if (std::abs(branch2(u_max)) > kShapeTol * scale) throw ConfigError("flux: f(u_max) must vanish (e1*u_max + e0 = 0)");

  alpha_ = f_minus_ - f_plus_;
  if (alpha_ < -kShapeTol * scale) throw ConfigError("flux: the jump at u_star must be downward (alpha >= 0)");
  if (std::abs(alpha_) <= kShapeTol * scale) alpha_ = 0.0;
}

double DiscFlux::operator()(double u) const {
  u = checked(u);
  return (u <= u_star_ || at_critical(u)) ? branch1(u) : branch2(u);
}

bool DiscFlux::at_critical(double u) const { return std::abs(u - u_star_) <= kDomainTol * u_max_; }

double DiscFlux::checked(double u) const {
  if (!(u >= -kDomainTol && u <= u_max_ + kDomainTol))
    throw DomainError("density " + describe(u) + " outside [0, " + describe(u_max_) + "]");
  return std::clamp(u, 0.0, u_max_);
}

double DiscFlux::max_abs_slope() const { return std::max(std::abs(d1_), std::abs(e1_)); }

double eval(DiscFlux const& f, double u) { return f(u); }

double jump_magnitude(DiscFlux const& f) { return f.alpha(); }

double demand(DiscFlux const& f, double u) {
  u = f.checked(u);
  if (u < f.u_star() && !f.at_critical(u)) return f.branch1(u);
  return f.f_minus();
}

double supply(DiscFlux const& f, double u, TrafficAhead ahead) {
  u = f.checked(u);
  if (f.at_critical(u)) return ahead == TrafficAhead::Congested ? f.f_plus() : f.f_minus();
  if (u < f.u_star()) return f.f_minus();
  return f.branch2(u);
}

double eta(DiscFlux const& f, double u) {
  u = f.checked(u);
  if (f.at_critical(u)) return f.u_star();
  if (u < f.u_star()) {
    double const flux = f.branch1(u);
    if (flux <= f.f_plus()) return std::clamp(f.branch2_inverse(flux), f.u_star(), f.u_max());
    return f.u_star();
  }
  return std::clamp(f.branch1_inverse(f.branch2(u)), 0.0, f.u_star());
}

double gamma_intersection(DiscFlux const& f, double u_right) {
  u_right = f.checked(u_right);
  if (u_right <= f.u_star() || f.at_critical(u_right))
    throw DomainError("gamma_intersection requires a congested state above u_star, got " + describe(u_right));
  double const slope = (f.branch2(u_right) - f.f_plus()) / (u_right - f.u_star());
  return (f.f_plus() - slope * f.u_star() - f.d0()) / (f.d1() - slope);
}

double SplitFlux::p(double u) const {
  // p is continuous, so no tolerance band around u* is needed here
  u = f_.checked(u);
  if (u <= f_.u_star()) return f_.branch1(u);
  return f_.branch2(u) + f_.alpha();
}

double SplitFlux::g(double u) const {
  u = f_.checked(u);
  if (u <= f_.u_star() || f_.at_critical(u)) return 0.0;
  return -f_.alpha();
}

double SplitFlux::G(double lambda, double z) const { return z - lambda * g(z); }

double SplitFlux::g_inverse(double lambda, double z) const {
  double const shift = lambda * f_.alpha();
  if (!(z >= -kDomainTol && z <= f_.u_max() + shift + kDomainTol))
    throw DomainError("g_inverse argument " + describe(z) + " outside [0, u_max + lambda*alpha]");
  if (z < f_.u_star()) return std::max(z, 0.0);
  if (z < f_.u_star() + shift) return f_.u_star();
  return std::clamp(z - shift, f_.u_star(), f_.u_max());
}

SplitFlux split(DiscFlux const& f) { return SplitFlux(f); }

double g_inverse(SplitFlux const& sf, double lambda, double z) { return sf.g_inverse(lambda, z); }

RegularizedFlux::RegularizedFlux(DiscFlux const& f, double epsilon) : f_(f), epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon < f.u_max() - f.u_star()))
    throw ConfigError("regularization width must lie in (0, u_max - u_star), got " + describe(epsilon));
  mid_slope_ = -(f.f_minus() - f.branch2(f.u_star() + epsilon)) / epsilon;
}

double RegularizedFlux::operator()(double u) const {
  u = f_.checked(u);
  if (u <= f_.u_star()) return f_.branch1(u);
  if (u < f_.u_star() + epsilon_) return mid_slope_ * (u - f_.u_star()) + f_.f_minus();
  return f_.branch2(u);
}

double RegularizedFlux::demand(double u) const {
  u = f_.checked(u);
  return u <= f_.u_star() ? f_.branch1(u) : f_.f_minus();
}

double RegularizedFlux::supply(double u) const {
  u = f_.checked(u);
  return u <= f_.u_star() ? f_.f_minus() : (*this)(u);
}

double RegularizedFlux::max_abs_slope() const { return std::max(f_.max_abs_slope(), std::abs(mid_slope_)); }

RegularizedFlux regularize(DiscFlux const& f, double epsilon) { return RegularizedFlux(f, epsilon); }

}  // namespace discnet
