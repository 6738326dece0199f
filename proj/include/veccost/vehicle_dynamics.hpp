#pragma once

#include <array>
#include <vector>

namespace veccost {

struct VehicleState {
  double x = 0.0;     // m
  double y = 0.0;     // m
  double v = 0.0;     // m/s
  double psi = 0.0;   // heading, rad
  double beta = 0.0;  // sideslip, rad
  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

struct ControlInput {
  double accel = 0.0;  // m/s^2
  double delta = 0.0;  // steering angle, rad
  friend bool operator==(const ControlInput&, const ControlInput&) = default;
};

struct VehicleParams {
  double l_r = 1.0;
  double l_f = 1.0;
  double dt = 0.1;
  double v_max = 10.0;
  double v_min = 0.0;
  double accel_mag = 2.0;
  double steer_mag = 0.3;
  int horizon = 10;

  // Throws InputError if any invariant fails.
  void Validate() const;
};

inline constexpr std::size_t kNumActions = 9;
using ActionSet = std::array<ControlInput, kNumActions>;

struct Trajectory {
  std::vector<VehicleState> states;  // horizon + 1, starting at the initial state
  const VehicleState& terminal() const { return states.back(); }
};

// One step of the discrete kinematic bicycle model:
//   x'    = x + v cos(psi + beta) dt
//   y'    = y + v sin(psi + beta) dt
//   v'    = clamp(v + a dt, v_min, v_max)
//   psi'  = psi + v / l_r sin(beta) dt
//   beta' = atan(l_r / (l_r + l_f) tan(delta)) dt
// Throws DomainError when |delta| >= pi/2.
VehicleState Step(const VehicleState& s, const ControlInput& u,
                  const VehicleParams& p);

// {-a, 0, +a} x {-delta, 0, +delta}, acceleration outer, steering inner.
ActionSet MakeActionSet(const VehicleParams& p);

// Holds u for p.horizon steps.
Trajectory Rollout(const VehicleState& s, const ControlInput& u,
                   const VehicleParams& p);

}  // namespace veccost
