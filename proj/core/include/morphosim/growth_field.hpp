#pragma once

#include <span>
#include <vector>

#include "morphosim/geometry.hpp"

namespace morphosim {

/// Quasi-stationary density of growth material on the cell centres,
/// nondimensionalized so that the radial solution has mu = 1.
struct GrowthField {
  Grid grid;
  std::vector<double> mu;
  double sigma = 0.0;
};

/// -(sigma/pi^2) mu'' + mu = dphi / pi with zero-flux ends.
GrowthField solve_mu_2d(const WallProfile& profile, double sigma);

/// Laplace-Beltrami form on the surface of revolution:
/// -(sigma/pi^2) (1/Icos) (Icos mu')' + mu = dphi sin(phi) / (pi^2 Icos),
/// assembled in the symmetric weighted form with Icos-weighted Neumann ends.
GrowthField solve_mu_3d(const WallProfile& profile, double sigma);
GrowthField solve_mu_3d(const WallProfile& profile, const ProfileGeometry& geo,
                        double sigma);

/// The same operators with an arbitrary right-hand side on the cell centres
/// (manufactured solutions, verification).
std::vector<double> solve_elliptic_2d(const Grid& grid, double sigma,
                                      std::span<const double> source);
std::vector<double> solve_elliptic_3d(const Grid& grid, const ProfileGeometry& geo,
                                      double sigma, std::span<const double> source);

struct BoundaryFluxes {
  double left = 0.0;
  double right = 0.0;
};

/// Discrete diffusive fluxes through x = 0 and x = 1 as assembled by the
/// solvers (weighted by Icos in 3D).
BoundaryFluxes boundary_fluxes(const GrowthField& field, const ProfileGeometry* geo = nullptr);

/// sum_j mu_j w_j dx with w = balanced Icos at the centres; the discrete
/// 3D operator conserves this against the same weighted sum of the source.
double weighted_integral(std::span<const double> values, const ProfileGeometry& geo,
                         double dx);

}  // namespace morphosim
