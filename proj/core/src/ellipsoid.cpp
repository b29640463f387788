#include "morphosim/ellipsoid.hpp"

#include <cmath>
#include <ostream>

#include "morphosim/error.hpp"

namespace morphosim {

namespace {

struct Rate {
  double a;
  double c;
};

Rate rate(double a, double c) { return {1.0 / (c * c), c * c / (a * a * a * a)}; }

}  // namespace

EllipsoidState flow(const EllipsoidState& s, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("ellipsoid step must be positive");
  if (!(s.a > 0.0 && s.c > 0.0)) throw InvalidArgument("ellipsoid axes must be positive");
  const Rate k1 = rate(s.a, s.c);
  const Rate k2 = rate(s.a + 0.5 * dt * k1.a, s.c + 0.5 * dt * k1.c);
  const Rate k3 = rate(s.a + 0.5 * dt * k2.a, s.c + 0.5 * dt * k2.c);
  const Rate k4 = rate(s.a + dt * k3.a, s.c + dt * k3.c);
  return {s.a + dt * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a) / 6.0,
          s.c + dt * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c) / 6.0, s.t + dt};
}

double invariant(const EllipsoidState& s) {
  return 1.0 / (s.a * s.a * s.a) - 1.0 / (s.c * s.c * s.c);
}

EllipsoidShape classify(const EllipsoidState& state, double band) {
  const double delta = invariant(state);
  if (delta > band) return EllipsoidShape::cigar;
  if (delta < -band) return EllipsoidShape::flat;
  return EllipsoidShape::sphere;
}

const char* to_string(EllipsoidShape shape) {
  switch (shape) {
    case EllipsoidShape::cigar:
      return "cigar";
    case EllipsoidShape::flat:
      return "flat";
    case EllipsoidShape::sphere:
      return "sphere";
  }
  return "unknown";
}

EllipsoidTrajectory trajectory(const EllipsoidState& initial, double dt, double t_end,
                               double ceiling) {
  EllipsoidTrajectory traj;
  traj.states.push_back(initial);
  EllipsoidState s = initial;
  const long steps = std::lround((t_end - initial.t) / dt);
  for (long i = 0; i < steps; ++i) {
    s = flow(s, dt);
    if (!std::isfinite(s.c) || s.c >= ceiling) {
      traj.blew_up = true;
      traj.blowup_time = s.t;
      break;
    }
    traj.states.push_back(s);
  }
  return traj;
}

std::vector<double> reduced_equatorial(double a0, double delta, double dt, int steps) {
  auto f = [delta](double a) {
    const double base = 1.0 / (a * a * a) - delta;
    return base > 0.0 ? std::cbrt(base * base) : 0.0;
  };
  std::vector<double> out{a0};
  double a = a0;
  for (int i = 0; i < steps; ++i) {
    const double k1 = f(a);
    const double k2 = f(a + 0.5 * dt * k1);
    const double k3 = f(a + 0.5 * dt * k2);
    const double k4 = f(a + dt * k3);
    a += dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    out.push_back(a);
  }
  return out;
}

void write_ellipsoid_csv(const EllipsoidTrajectory& traj, std::ostream& out) {
  out << "t,a,c,delta\n";
  out.precision(17);
  for (const auto& s : traj.states) {
    out << s.t << ',' << s.a << ',' << s.c << ',' << invariant(s) << '\n';
  }
}

}  // namespace morphosim
