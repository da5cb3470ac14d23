#pragma once

#include <stdexcept>
#include <string>

namespace discnet {

/// Raised when a density or flux argument lies outside the admissible range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised for malformed scenarios, junction specifications and configs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the time step violates the stability bound of a scheme.
class CflError : public std::runtime_error {
 public:
  CflError(std::string const& what, double admissible_lambda)
      : std::runtime_error(what), admissible_lambda_(admissible_lambda) {}
  double admissible_lambda() const { return admissible_lambda_; }

 private:
  double admissible_lambda_;
};

/// State of the traffic beyond a boundary; only matters when the density there is exactly u*.
enum class TrafficAhead { FreeFlowing, Congested };

/// Piecewise-affine fundamental diagram with a single downward jump at u*.
///
/// Branch 1 is d1*u + d0 on [0, u*], branch 2 is e1*u + e0 on (u*, u_max].
/// At u* itself the flux takes the branch-1 value.
class DiscFlux {
 public:
  DiscFlux(double d1, double d0, double e1, double e0, double u_star, double u_max);

  double d1() const { return d1_; }
  double d0() const { return d0_; }
  double e1() const { return e1_; }
  double e0() const { return e0_; }
  double u_star() const { return u_star_; }
  double u_max() const { return u_max_; }

  /// Jump magnitude f(u*-) - f(u*+); snapped to exactly zero for continuous data.
  double alpha() const { return alpha_; }
  double f_minus() const { return f_minus_; }
  double f_plus() const { return f_plus_; }

  double branch1(double u) const { return d1_ * u + d0_; }
  double branch2(double u) const { return e1_ * u + e0_; }
  double branch1_inverse(double flux) const { return (flux - d0_) / d1_; }
  double branch2_inverse(double flux) const { return (flux - e0_) / e1_; }

  double operator()(double u) const;

  bool at_critical(double u) const;

  /// Validates u against [0, u_max], clamping rounding-level excursions.
  double checked(double u) const;

  double max_abs_slope() const;

 private:
  double d1_, d0_, e1_, e0_, u_star_, u_max_;
  double alpha_, f_minus_, f_plus_;
};

double eval(DiscFlux const& f, double u);
double jump_magnitude(DiscFlux const& f);
double demand(DiscFlux const& f, double u);
double supply(DiscFlux const& f, double u, TrafficAhead ahead = TrafficAhead::FreeFlowing);
double eta(DiscFlux const& f, double u);

/// Intersection of the chord from (u*, f(u*+)) to a congested state with branch 1.
double gamma_intersection(DiscFlux const& f, double u_right);

/// f = p + g with p continuous and g = -alpha * H(u - u*).
class SplitFlux {
 public:
  explicit SplitFlux(DiscFlux const& f) : f_(f) {}

  DiscFlux const& base() const { return f_; }
  double alpha() const { return f_.alpha(); }
  double u_star() const { return f_.u_star(); }

  double p(double u) const;
  double g(double u) const;

  /// G(z) = z - lambda * g(z), the update map of the implicit half step.
  double G(double lambda, double z) const;
  double g_inverse(double lambda, double z) const;

 private:
  DiscFlux f_;
};

SplitFlux split(DiscFlux const& f);
double g_inverse(SplitFlux const& sf, double lambda, double z);

/// Continuous flux whose jump is replaced by a steep segment on [u*, u*+epsilon].
class RegularizedFlux {
 public:
  RegularizedFlux(DiscFlux const& f, double epsilon);

  DiscFlux const& base() const { return f_; }
  double epsilon() const { return epsilon_; }
  double mid_slope() const { return mid_slope_; }

  double operator()(double u) const;
  double demand(double u) const;
  double supply(double u) const;
  double max_abs_slope() const;

 private:
  DiscFlux f_;
  double epsilon_;
  double mid_slope_;
};

RegularizedFlux regularize(DiscFlux const& f, double epsilon);

}  // namespace discnet
