#include "discnet/junction.hpp"

#include <algorithm>
#include <cmath>

namespace discnet {

namespace {

constexpr double kFluxTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool same(double a, double b) { return std::abs(a - b) <= kFluxTol * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

void expect_sizes(JunctionSpec const& spec, std::size_t n_in, std::size_t n_out) {
  if (n_in != static_cast<std::size_t>(incoming_count(spec)) ||
      n_out != static_cast<std::size_t>(outgoing_count(spec)))
    throw ConfigError(kind_name(spec) + " junction: wrong number of incoming/outgoing values");
}

std::vector<double> demands_of(DiscFlux const& f, std::span<double const> u) {
  std::vector<double> d;
  for (double v : u) d.push_back(demand(f, v));
  return d;
}

std::vector<double> supplies_of(DiscFlux const& f, std::span<double const> u, std::span<TrafficAhead const> ahead) {
  std::vector<double> s;
  for (std::size_t j = 0; j < u.size(); ++j)
    s.push_back(supply(f, u[j], j < ahead.size() ? ahead[j] : TrafficAhead::FreeFlowing));
  return s;
}

/// Raises an inflow onto p and records the matching boundary g. When the junction state is u*
/// the flux is capped at p(u*) and g takes an intermediate value.
void shift_incoming(DiscFlux const& f, JunctionTrace& t, std::size_t i) {
  double const flux = t.f_in[i];
  if (flux > f.f_plus()) {
    t.f_adj_in[i] = f.f_minus();
    t.g_boundary[i] = std::clamp(flux - f.f_minus(), -f.alpha(), 0.0);
  } else {
    t.f_adj_in[i] = flux + f.alpha();
    t.g_boundary[i] = -f.alpha();
  }
}

JunctionTrace make_trace(std::vector<double> f_in, std::vector<double> f_out) {
  JunctionTrace t;
  t.f_in = std::move(f_in);
  t.f_out = std::move(f_out);
  t.f_adj_in = t.f_in;
  t.f_adj_out = t.f_out;
  t.g_boundary.assign(t.f_in.size(), 0.0);
  return t;
}

}  // namespace

void validate(JunctionSpec const& spec) {
  std::visit(overloaded{[](OneToOne const&) {},
                        [](OneToTwo const& s) {
                          if (!(s.beta1 > 0.0 && s.beta1 < 1.0 && s.beta2 > 0.0 && s.beta2 < 1.0))
                            throw ConfigError("1to2 junction: beta entries must lie strictly inside (0, 1)");
                          if (std::abs(s.beta1 + s.beta2 - 1.0) > 1e-12)
                            throw ConfigError("1to2 junction: beta entries must sum to 1");
                        },
                        [](TwoToOne const& s) {
                          if (!(s.q > 0.0 && s.q < 1.0))
                            throw ConfigError("2to1 junction: right-of-way q must lie strictly inside (0, 1)");
                        }},
             spec);
}

int incoming_count(JunctionSpec const& spec) { return std::holds_alternative<TwoToOne>(spec) ? 2 : 1; }

int outgoing_count(JunctionSpec const& spec) { return std::holds_alternative<OneToTwo>(spec) ? 2 : 1; }

std::string kind_name(JunctionSpec const& spec) {
  return std::visit(overloaded{[](OneToOne const&) { return std::string("1to1"); },
                               [](OneToTwo const&) { return std::string("1to2"); },
                               [](TwoToOne const&) { return std::string("2to1"); }},
                    spec);
}

JunctionFluxes junction_fluxes_from(JunctionSpec const& spec, std::span<double const> demands,
                                    std::span<double const> supplies) {
  validate(spec);
  expect_sizes(spec, demands.size(), supplies.size());
  return std::visit(
      overloaded{[&](OneToOne const&) {
                   double const flux = std::min(demands[0], supplies[0]);
                   return JunctionFluxes{{flux}, {flux}};
                 },
                 [&](OneToTwo const& s) {
                   double const flux =
                       std::min({demands[0], supplies[0] / s.beta1, supplies[1] / s.beta2});
                   double const out1 = s.beta1 * flux;
                   return JunctionFluxes{{flux}, {out1, flux - out1}};
                 },
                 [&](TwoToOne const& s) {
                   double const f_max = std::min(demands[0] + demands[1], supplies[0]);
                   double z1 = s.q * f_max;
                   double z2 = (1.0 - s.q) * f_max;
                   if (z1 > demands[0]) {
                     z1 = demands[0];
                     z2 = f_max - z1;
                   } else if (z2 > demands[1]) {
                     z2 = demands[1];
                     z1 = f_max - z2;
                   }
                   return JunctionFluxes{{z1, z2}, {z1 + z2}};
                 }},
      spec);
}

JunctionFluxes junction_fluxes(DiscFlux const& f, JunctionSpec const& spec, std::span<double const> u0_in,
                               std::span<double const> u0_out, std::span<TrafficAhead const> ahead) {
  auto const d = demands_of(f, u0_in);
  auto const s = supplies_of(f, u0_out, ahead);
  return junction_fluxes_from(spec, d, s);
}

JunctionDensities junction_densities(DiscFlux const& f, JunctionSpec const& spec, std::span<double const> u0_in,
                                     std::span<double const> u0_out, JunctionFluxes const& fluxes,
                                     std::span<TrafficAhead const> ahead) {
  expect_sizes(spec, u0_in.size(), u0_out.size());
  expect_sizes(spec, fluxes.f_in.size(), fluxes.f_out.size());
  double const us = f.u_star();
  JunctionDensities out;

  for (std::size_t i = 0; i < u0_in.size(); ++i) {
    double const u0 = f.checked(u0_in[i]);
    double const flux = fluxes.f_in[i];
    if (flux > demand(f, u0) && !same(flux, demand(f, u0)))
      throw DomainError("incoming flux exceeds the demand of its road");
    if (u0 < us && !f.at_critical(u0) && same(flux, f(u0))) {
      out.in.push_back({u0, f(u0)});
    } else if (flux <= f.f_plus() || same(flux, f.f_plus())) {
      double const u = f.branch2_inverse(flux);
      out.in.push_back(f.at_critical(u) || u <= us ? RiemannState{us, flux} : RiemannState{std::min(u, f.u_max()), flux});
    } else {
      out.in.push_back({us, flux});
    }
  }

  for (std::size_t j = 0; j < u0_out.size(); ++j) {
    double const u0 = f.checked(u0_out[j]);
    double const flux = fluxes.f_out[j];
    TrafficAhead const a = j < ahead.size() ? ahead[j] : TrafficAhead::FreeFlowing;
    double const cap = supply(f, u0, a);
    if (flux > cap && !same(flux, cap)) throw DomainError("outgoing flux exceeds the supply of its road");
    if (f.at_critical(u0) && a == TrafficAhead::Congested && same(flux, f.f_plus())) {
      out.out.push_back({us, f.f_plus()});
    } else if (u0 > us && !f.at_critical(u0) && same(flux, f(u0))) {
      out.out.push_back({u0, f(u0)});
    } else {
      double const u = std::clamp(f.branch1_inverse(flux), 0.0, us);
      out.out.push_back(f.at_critical(u) ? RiemannState{us, f.f_minus()} : RiemannState{u, flux});
    }
  }
  return out;
}

JunctionTrace adjust_1to1(DiscFlux const& f, double d1, double s1) {
  double const flux = std::min(d1, s1);
  JunctionTrace t = make_trace({flux}, {flux});
  if (same(s1, d1) && !same(d1, f.f_minus())) {
    t.f_adj_out[0] += f.alpha();
  } else if (s1 < d1) {
    t.f_adj_out[0] += f.alpha();
    t.f_adj_in[0] += f.alpha();
    t.g_boundary[0] = -f.alpha();
  }
  return t;
}

JunctionTrace adjust_1to2(DiscFlux const& f, double d1, double s1, double s2, double beta1, double beta2,
                          AlgorithmVariant variant) {
  OneToTwo const spec{beta1, beta2};
  validate(spec);
  double const sup[2] = {s1, s2};
  double const beta[2] = {beta1, beta2};
  double const dem[1] = {d1};
  JunctionFluxes const fx = junction_fluxes_from(spec, dem, sup);
  JunctionTrace t = make_trace(fx.f_in, fx.f_out);
  double const flux = fx.f_in[0];
  double const fm = f.f_minus();
  double const a = f.alpha();

  if (variant == AlgorithmVariant::StrictPaper) {
    if (same(flux, d1)) {
      if (same(s1, d1) && !same(s1, fm)) t.f_adj_out[0] += a;
      else if (same(s2, d1) && !same(s2, fm)) t.f_adj_out[1] += a;
    } else if (same(flux, s1 / beta1) || same(flux, s2 / beta2)) {
      shift_incoming(f, t, 0);
      if (same(s1 / beta1, s2 * beta2) && s1 * beta1 < d1) {
        t.f_adj_out[0] += a;
        t.f_adj_out[1] += a;
      } else if (s1 / beta1 < s2 * beta2 && s1 * beta1 < d1) {
        t.f_adj_out[0] += a;
      } else if (s2 / beta2 < s1 * beta1 && s2 * beta2 < d1) {
        t.f_adj_out[1] += a;
      }
    }
    return t;
  }

  bool const demand_limited = same(flux, d1);
  if (!demand_limited) shift_incoming(f, t, 0);
  double const limit = demand_limited ? d1 : flux;
  for (int j = 0; j < 2; ++j)
    if (same(sup[j] / beta[j], limit) && !same(sup[j], fm)) t.f_adj_out[j] += a;
  return t;
}

JunctionTrace adjust_2to1(DiscFlux const& f, double d1, double d2, double s1, double q, AlgorithmVariant variant) {
  TwoToOne const spec{q};
  validate(spec);
  double const fm = f.f_minus();
  double const a = f.alpha();
  double const dem[2] = {d1, d2};

  if (variant == AlgorithmVariant::StrictPaper) {
    double const f_max = std::min(d1 + d2, s1);
    double z1 = q * f_max;
    double z2 = (1.0 - q) * f_max;
    if (z1 > d1) {
      z1 = d1;
      z2 = f_max - z2;
    } else if (z2 > d2) {
      z2 = d2;
      z1 = f_max - z1;
    }
    JunctionTrace t = make_trace({z1, z2}, {f_max});
    if (same(d1 + d2, s1) && !same(s1, fm)) {
      t.f_adj_out[0] += a;
    } else if (d1 + d2 < s1) {
      if (!same(s1, fm)) t.f_adj_out[0] += a;
      for (int i = 0; i < 2; ++i)
        if (t.f_in[i] < dem[i]) shift_incoming(f, t, static_cast<std::size_t>(i));
    }
    return t;
  }

  double const sup[1] = {s1};
  JunctionFluxes const fx = junction_fluxes_from(spec, dem, sup);
  JunctionTrace t = make_trace(fx.f_in, fx.f_out);
  if (same(d1 + d2, s1)) {
    if (!same(s1, fm)) t.f_adj_out[0] += a;
  } else if (d1 + d2 > s1) {
    if (!same(s1, fm)) t.f_adj_out[0] += a;
    for (int i = 0; i < 2; ++i)
      if (t.f_in[i] < dem[i] && !same(t.f_in[i], dem[i])) shift_incoming(f, t, static_cast<std::size_t>(i));
  }
  return t;
}

JunctionTrace adjust(DiscFlux const& f, JunctionSpec const& spec, std::span<double const> demands,
                     std::span<double const> supplies, AlgorithmVariant variant) {
  expect_sizes(spec, demands.size(), supplies.size());
  return std::visit(
      overloaded{[&](OneToOne const&) { return adjust_1to1(f, demands[0], supplies[0]); },
                 [&](OneToTwo const& s) {
                   return adjust_1to2(f, demands[0], supplies[0], supplies[1], s.beta1, s.beta2, variant);
                 },
                 [&](TwoToOne const& s) { return adjust_2to1(f, demands[0], demands[1], supplies[0], s.q, variant); }},
      spec);
}

double boundary_g(JunctionTrace const& trace, int incoming_index) {
  if (incoming_index < 0 || static_cast<std::size_t>(incoming_index) >= trace.g_boundary.size())
    throw std::out_of_range("boundary_g: incoming index out of range");
  return trace.g_boundary[static_cast<std::size_t>(incoming_index)];
}

}  // namespace discnet
