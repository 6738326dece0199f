#pragma once

#include "veccost/vehicle_dynamics.hpp"

namespace veccost {

// Circular ring centred at the origin, driven counter-clockwise. Arc length
// is measured from the positive x axis.
struct Track {
  double radius = 20.0;
  double half_width = 3.0;

  // Throws InputError unless radius > half_width > 0.
  void Validate() const;

  double circumference() const;
  // Signed distance from the centreline, positive outside the ring.
  double LateralOffset(const VehicleState& s) const;
  bool OnTrack(const VehicleState& s) const;
  // Centreline state at arc length `arc`, heading along the direction of
  // travel.
  VehicleState PoseAt(double arc, double speed) const;
};

// Unwrapped arc length of the nearest centreline point. The angular
// increment from prev_progress is taken in (-pi, pi], so progress never
// jumps by more than half a lap between calls.
double Progress(const VehicleState& s, const Track& track,
                double prev_progress);

// Progress at the last state, unwrapped step by step from start_progress
// (the progress of states.front()).
double TerminalProgress(const Trajectory& t, const Track& track,
                        double start_progress);

int OffTrackCount(const Trajectory& t, const Track& track);

// Throws DimensionError when the trajectories differ in length.
bool DetectCollision(const Trajectory& a, const Trajectory& b, double radius);

}  // namespace veccost
