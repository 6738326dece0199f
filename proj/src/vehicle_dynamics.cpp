#include "veccost/vehicle_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "veccost/errors.hpp"

namespace veccost {

void VehicleParams::Validate() const {
  if (!(l_r > 0.0) || !(l_f > 0.0)) {
    throw InputError("vehicle: l_r and l_f must be positive");
  }
  if (!(dt > 0.0)) throw InputError("vehicle: dt must be positive");
  if (!(v_min <= v_max)) throw InputError("vehicle: v_min must not exceed v_max");
  if (horizon < 1) throw InputError("vehicle: horizon must be at least 1");
  if (!(std::abs(steer_mag) < std::numbers::pi / 2)) {
    throw InputError("vehicle: steer_mag must be below pi/2");
  }
  for (double v : {l_r, l_f, dt, v_max, v_min, accel_mag, steer_mag}) {
    if (!std::isfinite(v)) throw InputError("vehicle: parameters must be finite");
  }
}

VehicleState Step(const VehicleState& s, const ControlInput& u,
                  const VehicleParams& p) {
  if (!(std::abs(u.delta) < std::numbers::pi / 2)) {
    throw DomainError("steering angle must satisfy |delta| < pi/2");
  }
  VehicleState next;
  next.x = s.x + s.v * std::cos(s.psi + s.beta) * p.dt;
  next.y = s.y + s.v * std::sin(s.psi + s.beta) * p.dt;
  next.v = std::clamp(s.v + u.accel * p.dt, p.v_min, p.v_max);
  next.psi = s.psi + s.v / p.l_r * std::sin(s.beta) * p.dt;
  next.beta = std::atan(p.l_r / (p.l_r + p.l_f) * std::tan(u.delta)) * p.dt;
  return next;
}

ActionSet MakeActionSet(const VehicleParams& p) {
  ActionSet out;
  std::size_t k = 0;
  for (double a : {-p.accel_mag, 0.0, p.accel_mag})
    for (double d : {-p.steer_mag, 0.0, p.steer_mag}) out[k++] = {a, d};
  return out;
}

Trajectory Rollout(const VehicleState& s, const ControlInput& u,
                   const VehicleParams& p) {
  Trajectory t;
  t.states.reserve(static_cast<std::size_t>(std::max(p.horizon, 0)) + 1);
  t.states.push_back(s);
  for (int k = 0; k < p.horizon; ++k) t.states.push_back(Step(t.states.back(), u, p));
  return t;
}

}  // namespace veccost
