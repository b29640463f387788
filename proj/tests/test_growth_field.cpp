#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <morphosim/error.hpp>
#include <morphosim/growth_field.hpp>
#include <morphosim/spectral.hpp>
#include <morphosim/tridiagonal.hpp>

#include "support.hpp"

using namespace morphosim;
using std::numbers::pi;

namespace {

std::vector<double> reversed(std::vector<double> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

// Dense assembly of the weighted Neumann operator, solved by LU.
std::vector<double> dense_elliptic(const std::vector<double>& w_cells,
                                   const std::vector<double>& w_nodes, double sigma, double dx,
                                   const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  const double c = sigma / (pi * pi * dx * dx);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b(n);
  for (int j = 0; j < n; ++j) {
    A(j, j) = w_cells[j];
    b(j) = w_cells[j] * f[j];
  }
  for (int i = 1; i < n; ++i) {
    A(i - 1, i - 1) += c * w_nodes[i];
    A(i, i) += c * w_nodes[i];
    A(i - 1, i) -= c * w_nodes[i];
    A(i, i - 1) -= c * w_nodes[i];
  }
  const Eigen::VectorXd x = A.partialPivLu().solve(b);
  return {x.data(), x.data() + n};
}

}  // namespace

TEST(Tridiagonal, MatchesDenseLu) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 40;
  std::vector<double> lo(n - 1), di(n), up(n - 1), rhs(n);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    di[i] = 3.0 + u(rng);
    rhs[i] = u(rng);
    A(i, i) = di[i];
    b(i) = rhs[i];
    if (i + 1 < n) {
      lo[i] = u(rng);
      up[i] = u(rng);
      A(i + 1, i) = lo[i];
      A(i, i + 1) = up[i];
    }
  }
  const std::vector<double> x = solve_tridiagonal(lo, di, up, rhs);
  const Eigen::VectorXd ref = A.partialPivLu().solve(b);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(x[i], ref(i), 1e-13);
}

TEST(Tridiagonal, SingularPivotThrows) {
  const std::vector<double> lo{1.0}, di{1.0, 1.0}, up{1.0}, rhs{1.0, 2.0};
  EXPECT_THROW(solve_tridiagonal(lo, di, up, rhs), NumericalError);
}

TEST(GrowthField, SphereHasUnitDensity) {
  const WallProfile p = WallProfile::sphere(Grid(100), 1.0);
  for (double sigma : {1e-3, 0.05, 1.0}) {
    for (double mu : solve_mu_2d(p, sigma).mu) EXPECT_NEAR(mu, 1.0, 1e-12);
    for (double mu : solve_mu_3d(p, sigma).mu) EXPECT_NEAR(mu, 1.0, 1e-10);
  }
}

TEST(GrowthField, TwoDimensionalModeResponse) {
  // dphi = pi + a cos(k pi y) drives mu = 1 + c_k cos(k pi y).
  const double sigma = 0.05, a = 0.1;
  for (int k = 1; k <= 4; ++k) {
    const std::pair<int, double> mode{k, a};
    const WallProfile p = WallProfile::with_modes(Grid(400), 1.0, std::span(&mode, 1));
    const GrowthField f = solve_mu_2d(p, sigma);
    const double ck = ck_from_ak_2d(a, sigma, k);
    for (int j = 0; j < p.grid.cells(); ++j) {
      EXPECT_NEAR(f.mu[j], 1.0 + ck * std::cos(k * pi * p.grid.center(j)), 2e-5) << "k=" << k;
    }
  }
}

TEST(GrowthField, MatchesDenseAssembly) {
  const WallProfile p = test::random_closed_profile(Grid(120), 1.0, 21);
  const ProfileGeometry geo = analyze(p);
  std::vector<double> f(p.grid.cells());
  for (int j = 0; j < p.grid.cells(); ++j) f[j] = std::exp(std::sin(3.0 * p.grid.center(j)));

  const std::vector<double> ones_c(p.grid.cells(), 1.0), ones_n(p.grid.nodes(), 1.0);
  EXPECT_LT(max_abs_diff(solve_elliptic_2d(p.grid, 0.07, f),
                         dense_elliptic(ones_c, ones_n, 0.07, p.grid.dx(), f)),
            1e-12);
  EXPECT_LT(max_abs_diff(solve_elliptic_3d(p.grid, geo, 0.07, f),
                         dense_elliptic(geo.balanced_icos_centers, geo.balanced_icos_nodes, 0.07,
                                        p.grid.dx(), f)),
            1e-11);
}

TEST(GrowthField, SecondOrderConvergence) {
  // -(sigma/pi^2) u'' + u = (1 + 4 sigma) cos(2 pi y) for u = cos(2 pi y).
  const double sigma = 0.1;
  auto error = [&](int m) {
    const Grid g(m);
    std::vector<double> f(g.cells());
    for (int j = 0; j < g.cells(); ++j) f[j] = (1.0 + 4.0 * sigma) * std::cos(2.0 * pi * g.center(j));
    const std::vector<double> u = solve_elliptic_2d(g, sigma, f);
    double e = 0.0;
    for (int j = 0; j < g.cells(); ++j) e = std::max(e, std::abs(u[j] - std::cos(2.0 * pi * g.center(j))));
    return e;
  };
  const double e1 = error(99), e2 = error(199);
  EXPECT_GT(std::log2(e1 / e2), 1.9);
}

TEST(GrowthField, MaximumPrinciple) {
  const WallProfile p = test::random_closed_profile(Grid(150), 1.0, 8, 0.1 * pi);
  const ProfileGeometry geo = analyze(p);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 5.0);
  std::vector<double> f(p.grid.cells());
  for (double& v : f) v = u(rng);
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  for (const auto& sol : {solve_elliptic_2d(p.grid, 0.03, f), solve_elliptic_3d(p.grid, geo, 0.03, f)}) {
    for (double v : sol) {
      EXPECT_GE(v, *lo - 1e-12);
      EXPECT_LE(v, *hi + 1e-12);
    }
  }
}

TEST(GrowthField, Linearity) {
  const WallProfile p = test::random_closed_profile(Grid(80), 1.0, 4);
  const ProfileGeometry geo = analyze(p);
  std::vector<double> f(p.grid.cells()), g(p.grid.cells()), h(p.grid.cells());
  for (int j = 0; j < p.grid.cells(); ++j) {
    const double y = p.grid.center(j);
    f[j] = std::cos(5.0 * y);
    g[j] = y * y;
    h[j] = 2.5 * f[j] - 0.7 * g[j];
  }
  const auto uf = solve_elliptic_3d(p.grid, geo, 0.2, f);
  const auto ug = solve_elliptic_3d(p.grid, geo, 0.2, g);
  const auto uh = solve_elliptic_3d(p.grid, geo, 0.2, h);
  for (int j = 0; j < p.grid.cells(); ++j) EXPECT_NEAR(uh[j], 2.5 * uf[j] - 0.7 * ug[j], 1e-13);
}

TEST(GrowthField, ReflectionSymmetry) {
  const WallProfile p = test::random_closed_profile(Grid(101), 1.0, 17, 0.08 * pi);
  const WallProfile q(p.grid, reversed(p.dphi), p.length);
  EXPECT_LT(max_abs_diff(solve_mu_2d(q, 0.05).mu, reversed(solve_mu_2d(p, 0.05).mu)), 1e-13);
  EXPECT_LT(max_abs_diff(solve_mu_3d(q, 0.05).mu, reversed(solve_mu_3d(p, 0.05).mu)), 1e-10);
}

TEST(GrowthField, WeightedConservationAndZeroFlux) {
  // Summing the weighted rows cancels every interior flux.
  const WallProfile p = test::random_closed_profile(Grid(90), 1.0, 12);
  const ProfileGeometry geo = analyze(p);
  const GrowthField mu = solve_mu_3d(p, geo, 0.05);
  std::vector<double> src(p.grid.cells());
  for (int j = 0; j < p.grid.cells(); ++j) {
    src[j] = p.dphi[j] * std::sin(geo.phi_centers[j]) / (pi * pi * geo.balanced_icos_centers[j]);
  }
  EXPECT_NEAR(weighted_integral(mu.mu, geo, p.grid.dx()),
              weighted_integral(src, geo, p.grid.dx()), 1e-13);
  const BoundaryFluxes flux = boundary_fluxes(mu, &geo);
  EXPECT_NEAR(flux.left, 0.0, 1e-14);
  EXPECT_NEAR(flux.right, 0.0, 1e-14);
}

TEST(GrowthField, RejectsNegativeDiffusion) {
  const WallProfile p = WallProfile::sphere(Grid(10), 1.0);
  EXPECT_THROW(solve_mu_2d(p, -1.0), InvalidArgument);
  EXPECT_THROW(solve_mu_3d(p, -1.0), InvalidArgument);
}
