#include "morphosim/growth_field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "morphosim/error.hpp"
#include "morphosim/tridiagonal.hpp"

namespace morphosim {

using std::numbers::pi;

namespace {

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("reduced diffusion sigma must be positive");
  }
}

}  // namespace

std::vector<double> solve_elliptic_2d(const Grid& grid, double sigma,
                                      std::span<const double> source) {
  check_sigma(sigma);
  const int n = grid.cells();
  const double c = sigma / (pi * pi * grid.dx() * grid.dx());
  std::vector<double> diag(n, 1.0), off(n - 1, -c);
  for (int j = 0; j < n; ++j) {
    if (j > 0) diag[j] += c;
    if (j + 1 < n) diag[j] += c;
  }
  return solve_tridiagonal(off, diag, off, source);
}

std::vector<double> solve_elliptic_3d(const Grid& grid, const ProfileGeometry& geo,
                                      double sigma, std::span<const double> source) {
  check_sigma(sigma);
  const int n = grid.cells();
  const double c = sigma / (pi * pi * grid.dx() * grid.dx());
  // Row j multiplied by Icos(y_j): symmetric, weights Icos(x_i) on the
  // interior nodes, zero at the poles.
  std::vector<double> diag(n), off(n - 1), rhs(n);
  for (int j = 0; j < n; ++j) {
    const double w = geo.balanced_icos_centers[j];
    if (!(w > 0.0)) {
      throw ParametrizationLoss("non-positive Icos at cell " + std::to_string(j), 0.0);
    }
    diag[j] = w;
    rhs[j] = w * source[j];
  }
  for (int i = 1; i < n; ++i) {
    const double w = geo.balanced_icos_nodes[i];
    if (!(w > 0.0)) {
      throw ParametrizationLoss("non-positive Icos at node " + std::to_string(i), 0.0);
    }
    diag[i - 1] += c * w;
    diag[i] += c * w;
    off[i - 1] = -c * w;
  }
  return solve_tridiagonal(off, diag, off, rhs);
}

GrowthField solve_mu_2d(const WallProfile& profile, double sigma) {
  std::vector<double> source(profile.dphi.size());
  for (std::size_t j = 0; j < source.size(); ++j) source[j] = profile.dphi[j] / pi;
  return {profile.grid, solve_elliptic_2d(profile.grid, sigma, source), sigma};
}

GrowthField solve_mu_3d(const WallProfile& profile, double sigma) {
  return solve_mu_3d(profile, analyze(profile), sigma);
}

GrowthField solve_mu_3d(const WallProfile& profile, const ProfileGeometry& geo,
                        double sigma) {
  check_sigma(sigma);
  const Grid& g = profile.grid;
  const int n = g.cells();
  const double c = sigma / (pi * pi * g.dx() * g.dx());
  // Same assembly as solve_elliptic_3d, but the weighted source
  // Icos * dphi sin(phi) / (pi^2 Icos) is formed without the division.
  std::vector<double> diag(n), off(n - 1), rhs(n);
  for (int j = 0; j < n; ++j) {
    const double w = geo.balanced_icos_centers[j];
    if (!(w > 0.0)) {
      throw ParametrizationLoss("non-positive Icos at cell " + std::to_string(j),
                                profile.time);
    }
    diag[j] = w;
    rhs[j] = profile.dphi[j] * std::sin(geo.phi_centers[j]) / (pi * pi);
  }
  for (int i = 1; i < n; ++i) {
    const double w = geo.balanced_icos_nodes[i];
    if (!(w > 0.0)) {
      throw ParametrizationLoss("non-positive Icos at node " + std::to_string(i),
                                profile.time);
    }
    diag[i - 1] += c * w;
    diag[i] += c * w;
    off[i - 1] = -c * w;
  }
  return {g, solve_tridiagonal(off, diag, off, rhs), sigma};
}

BoundaryFluxes boundary_fluxes(const GrowthField& field, const ProfileGeometry* geo) {
  // The assembled operator has no coupling across the ends: the flux through
  // a pole or a Neumann end is the weight there times the jump to a ghost
  // cell that does not exist, i.e. zero. 3D weights vanish at the poles.
  const double c = field.sigma / (pi * pi * field.grid.dx());
  const double w0 = geo ? geo->balanced_icos_nodes.front() : 0.0;
  const double w1 = geo ? geo->balanced_icos_nodes.back() : 0.0;
  return {c * w0 * field.mu.front(), -c * w1 * field.mu.back()};
}

double weighted_integral(std::span<const double> values, const ProfileGeometry& geo,
                         double dx) {
  double total = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    total += values[j] * geo.balanced_icos_centers[j] * dx;
  }
  return total;
}

}  // namespace morphosim
