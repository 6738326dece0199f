#include "veccost/track.hpp"

#include <cmath>
#include <numbers>

#include "veccost/errors.hpp"

namespace veccost {

void Track::Validate() const {
  if (!(half_width > 0.0) || !(radius > half_width) || !std::isfinite(radius)) {
    throw InputError("track: require radius > half_width > 0");
  }
}

double Track::circumference() const { return 2.0 * std::numbers::pi * radius; }

double Track::LateralOffset(const VehicleState& s) const {
  return std::hypot(s.x, s.y) - radius;
}

bool Track::OnTrack(const VehicleState& s) const {
  return std::abs(LateralOffset(s)) <= half_width;
}

VehicleState Track::PoseAt(double arc, double speed) const {
  const double angle = arc / radius;
  VehicleState s;
  s.x = radius * std::cos(angle);
  s.y = radius * std::sin(angle);
  s.v = speed;
  s.psi = std::remainder(angle + std::numbers::pi / 2, 2.0 * std::numbers::pi);
  return s;
}

double Progress(const VehicleState& s, const Track& track,
                double prev_progress) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const double angle = std::atan2(s.y, s.x);
  double delta = std::remainder(angle - prev_progress / track.radius, kTwoPi);
  if (delta <= -std::numbers::pi) delta += kTwoPi;
  return prev_progress + delta * track.radius;
}

double TerminalProgress(const Trajectory& t, const Track& track,
                        double start_progress) {
  double p = start_progress;
  for (std::size_t k = 1; k < t.states.size(); ++k)
    p = Progress(t.states[k], track, p);
  return p;
}

int OffTrackCount(const Trajectory& t, const Track& track) {
  int count = 0;
  for (const auto& s : t.states) count += track.OnTrack(s) ? 0 : 1;
  return count;
}

bool DetectCollision(const Trajectory& a, const Trajectory& b, double radius) {
  if (a.states.size() != b.states.size()) {
    throw DimensionError("collision check: trajectory lengths differ");
  }
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    if (std::hypot(a.states[k].x - b.states[k].x,
                   a.states[k].y - b.states[k].y) < radius)
      return true;
  }
  return false;
}

}  // namespace veccost
