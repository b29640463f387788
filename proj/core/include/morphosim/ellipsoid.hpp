#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

namespace morphosim {

/// Spheroid with equatorial semi-axis a (= b) and polar semi-axis c whose
/// tips grow at the local Gaussian curvature: a' = 1/c^2, c' = c^2/a^4.
struct EllipsoidState {
  double a = 1.0;
  double c = 1.0;
  double t = 0.0;
};

/// One RK4 step of size dt.
EllipsoidState flow(const EllipsoidState& state, double dt);

/// a^-3 - c^-3, conserved by the flow.
double invariant(const EllipsoidState& state);

enum class EllipsoidShape { cigar, flat, sphere };

/// Sign of the invariant with a +-`band` window for the sphere.
EllipsoidShape classify(const EllipsoidState& state, double band = 1e-12);
const char* to_string(EllipsoidShape shape);

struct EllipsoidTrajectory {
  std::vector<EllipsoidState> states;
  bool blew_up = false;  // c reached the ceiling
  double blowup_time = std::numeric_limits<double>::infinity();
};

/// RK4 from `initial` to `t_end` (or until c >= ceiling).
EllipsoidTrajectory trajectory(const EllipsoidState& initial, double dt, double t_end,
                               double ceiling = 1e6);

/// a' = (a^-3 - delta)^(2/3), the equatorial equation after eliminating c.
/// RK4 with step dt; returns a at each step.
std::vector<double> reduced_equatorial(double a0, double delta, double dt, int steps);

/// CSV "t,a,c,delta".
void write_ellipsoid_csv(const EllipsoidTrajectory& traj, std::ostream& out);

}  // namespace morphosim
