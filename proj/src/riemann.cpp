#include "discnet/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace discnet {

namespace {

constexpr double kTieTol = 1e-12;

Wave contact(double speed, double left, double right) {
  return Wave{WaveKind::Contact, speed, left, right, speed};
}

Wave shock(double speed, double left, double right) { return Wave{WaveKind::Shock, speed, left, right, speed}; }

double snap(DiscFlux const& f, double u) { return f.at_critical(u) ? f.u_star() : f.checked(u); }

}  // namespace

RiemannState state_of(DiscFlux const& f, double u) {
  u = snap(f, u);
  return RiemannState{u, f(u)};
}

WaveFan solve_riemann(DiscFlux const& f, double u_left, double u_right) {
  return solve_riemann(f, state_of(f, u_left), state_of(f, u_right));
}

WaveFan solve_riemann(DiscFlux const& f, RiemannState left, RiemannState right) {
  double const ul = snap(f, left.density);
  double const ur = snap(f, right.density);
  double const us = f.u_star();
  WaveFan fan{ul, ur, {}};
  if (ul == ur) return fan;

  bool const l_crit = ul == us;
  bool const r_crit = ur == us;
  double const fl = l_crit ? std::clamp(left.flux, f.f_plus(), f.f_minus()) : f(ul);
  double const fr = r_crit ? std::clamp(right.flux, f.f_plus(), f.f_minus()) : f(ur);

  if (l_crit) {
    // The zero wave that leaves u* is absorbed; what remains runs along the branch on the far side.
    if (ur < us) fan.waves.push_back(contact(f.d1(), us, ur));
    else fan.waves.push_back(contact(f.e1(), us, ur));
    return fan;
  }
  if (r_crit) {
    double const s = (fr - fl) / (ur - ul);
    bool const along_branch1 = ul < us && fr == f.f_minus();
    fan.waves.push_back(along_branch1 ? contact(f.d1(), ul, ur) : shock(s, ul, ur));
    return fan;
  }

  if (ul < us && ur < us) {
    fan.waves.push_back(contact(f.d1(), ul, ur));
  } else if (ul > us && ur > us) {
    fan.waves.push_back(contact(f.e1(), ul, ur));
  } else if (ur < us) {
    double const s = (fl - f.f_minus()) / (ul - us);
    fan.waves.push_back(shock(s, ul, us));
    fan.waves.push_back(contact(f.d1(), us, ur));
  } else {
    double const gamma = gamma_intersection(f, ur);
    if (gamma < ul) {
      double const s = (f.f_plus() - fl) / (us - ul);
      fan.waves.push_back(shock(s, ul, us));
      fan.waves.push_back(contact(f.e1(), us, ur));
    } else {
      fan.waves.push_back(shock((fr - fl) / (ur - ul), ul, ur));
    }
  }
  return fan;
}

double evaluate_fan(WaveFan const& fan, double xi) {
  for (Wave const& w : fan.waves) {
    double const tol = kTieTol * std::max(1.0, std::abs(w.speed));
    if (xi <= w.speed + tol) return w.left_state;
  }
  return fan.right_state;
}

}  // namespace discnet
