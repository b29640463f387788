#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace morphosim {

/// Uniform grid on [0, 1]: nodes x_i = i dx (i = 0..m+1) and shifted nodes
/// (cell centres) y_j = (j + 1/2) dx (j = 0..m), with dx = 1/(m+1).
class Grid {
 public:
  explicit Grid(int m);

  int m() const noexcept { return m_; }
  int cells() const noexcept { return m_ + 1; }
  int nodes() const noexcept { return m_ + 2; }
  double dx() const noexcept { return 1.0 / (m_ + 1); }

  double node(int i) const noexcept { return static_cast<double>(i) / (m_ + 1); }
  double center(int j) const noexcept { return (j + 0.5) / (m_ + 1); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int m_;
};

/// Simulation state of the generatrix: the angle derivative on cell centres,
/// the generatrix length and the time. The angle itself is the piecewise
/// linear primitive of `dphi` with phi(0) = 0.
struct WallProfile {
  Grid grid;
  std::vector<double> dphi;
  double length = 1.0;
  double time = 0.0;

  WallProfile(Grid g, std::vector<double> d, double len, double t = 0.0);

  /// phi = pi x: the sphere (3D) or the circle (2D).
  static WallProfile sphere(Grid g, double length);

  /// pi + sum_k a_k cos(k pi y) sampled on the cell centres.
  static WallProfile with_modes(Grid g, double length,
                                std::span<const std::pair<int, double>> modes);

  double min_dphi() const;
  double max_dphi() const;
};

/// Everything the solvers need about a profile, computed in one pass.
struct ProfileGeometry {
  std::vector<double> phi_nodes;     // m+2
  std::vector<double> phi_centers;   // m+1
  std::vector<double> icos_nodes;    // one-sided exact integral of cos(phi)
  std::vector<double> icos_centers;
  std::vector<double> isin_nodes;    // exact integral of sin(phi)
  double closure_defect = 0.0;       // signed Icos(1)

  // Pole-balanced Icos: Icos(x) - x Icos(1). Equal to Icos for a closed
  // profile; vanishes at both poles by construction.
  std::vector<double> balanced_icos_nodes;
  std::vector<double> balanced_icos_centers;
  std::vector<double> icosin_centers;  // balanced Icos / sin(phi) at centres
};

ProfileGeometry analyze(const WallProfile& profile);

/// Throws InvalidArgument if the profile is malformed, ParametrizationLoss if
/// dphi <= 0 somewhere.
void validate(const WallProfile& profile);

/// Icos(x_i) = int_0^{x_i} cos(phi), exact for the piecewise-linear phi.
std::vector<double> icos(const WallProfile& profile);

/// Icos(x_i) / sin(phi(x_i)); the pole limit 1/dphi at i = 0 and i = m+1.
double icosin(const WallProfile& profile, int node);

/// Signed closure defect int_0^1 cos(phi) dx.
double closure_defect(const WallProfile& profile);

struct Curvatures {
  std::vector<double> kappa_s;      // nodes
  std::vector<double> kappa_theta;  // nodes
};

/// Principal curvatures on the nodes: kappa_s = dphi / L,
/// kappa_theta = sin(phi) / (L Icos); both poles use kappa_theta = kappa_s.
Curvatures curvatures(const WallProfile& profile);

/// int K dA over the closed surface (4 pi for any closed profile), using
/// Simpson's rule on every cell.
double gauss_bonnet_integral(const WallProfile& profile);

struct RingPoint {
  double r;
  double z;
  double phi;
};

struct SurfaceMesh {
  std::vector<RingPoint> rings;  // one per node, pole to pole
  int azimuthal_res = 0;
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> faces;  // zero-based
  double closure_defect = 0.0;            // |r(1)| / L
  std::vector<std::string> warnings;
};

/// Revolves r = L Icos, z = L int sin(phi) around the z-axis. The two pole
/// rings collapse to single vertices.
SurfaceMesh reconstruct(const WallProfile& profile, int azimuthal_res,
                        double closure_tolerance = 1e-6);

/// Length of the generatrix recovered from the ring points (each cell is a
/// circular arc, so chords are converted back to arc length).
double generatrix_arclength(const SurfaceMesh& mesh);

void write_obj(const SurfaceMesh& mesh, std::ostream& out);

/// CSV with header "x,dphi,phi,r,z", one row per cell centre.
void write_profile_csv(const WallProfile& profile, std::ostream& out);

namespace detail {
// int_0^h cos(phi0 + slope t) dt and int_0^h sin(phi0 + slope t) dt.
double cos_integral(double phi0, double slope, double h);
double sin_integral(double phi0, double slope, double h);
}  // namespace detail

}  // namespace morphosim
