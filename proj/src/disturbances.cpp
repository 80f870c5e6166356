#include "adpasmc/disturbances.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adpasmc {

DisturbanceSample DisturbanceProfile::sample(double t) const {
  DisturbanceSample s;
  for (int i = 0; i < 3; ++i) {
    s.d_m(i) = d_m[i].value(t);
    s.d_u(i) = d_u[i].value(t);
  }
  s.d_v = d_v.value(t);
  return s;
}

DisturbanceProfile DisturbanceProfile::benchmark() {
  auto delayed = [](double start, Signal s) {
    return Signal::piecewise({{0.0, Signal::zero()}, {start, std::move(s)}});
  };
  DisturbanceProfile p;
  p.d_m = {delayed(5.0, Signal::sine(1.5, M_PI / 17.0, 0.0)),
           delayed(5.0, Signal::sine(0.8, M_PI / 15.0, 0.0)),
           delayed(5.0, Signal::sine(1.1, M_PI / 16.0, 0.0))};
  const Signal rate = Signal::sine(2.1, M_PI / 19.0, 0.0);
  p.d_u = {rate, rate, rate};
  p.d_v = delayed(6.0, Signal::sine(5.0, 0.2, 0.0));
  return p;
}

DisturbanceProfile DisturbanceProfile::none() { return DisturbanceProfile{}; }

double siso_d(double t) {
  if (!(t >= 0.0 && t < 30.0)) {
    throw std::out_of_range("siso_d: t = " + std::to_string(t) + " outside [0, 30)");
  }
  if (t < 10.0) return 2.0 / M_PI * std::sin(0.5 * M_PI * t);
  if (t < 20.0) return 3.0 / 32.0 * t * t - 1.25 * t;
  return 5.0 / M_PI * std::sin(0.5 * M_PI * t);
}

}  // namespace adpasmc
