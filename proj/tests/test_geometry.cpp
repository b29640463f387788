#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <morphosim/error.hpp>
#include <morphosim/geometry.hpp>

#include "support.hpp"

using namespace morphosim;
using std::numbers::pi;

TEST(Grid, NodesAndCentres) {
  const Grid g(9);
  EXPECT_EQ(g.cells(), 10);
  EXPECT_EQ(g.nodes(), 11);
  EXPECT_DOUBLE_EQ(g.dx(), 0.1);
  EXPECT_DOUBLE_EQ(g.node(0), 0.0);
  EXPECT_DOUBLE_EQ(g.node(10), 1.0);
  EXPECT_DOUBLE_EQ(g.center(0), 0.05);
  EXPECT_DOUBLE_EQ(g.center(9), 0.95);
}

TEST(Geometry, SphereIcosIsExact) {
  const WallProfile p = WallProfile::sphere(Grid(50), 1.0);
  const ProfileGeometry geo = analyze(p);
  for (int i = 0; i < p.grid.nodes(); ++i) {
    EXPECT_NEAR(geo.icos_nodes[i], std::sin(pi * p.grid.node(i)) / pi, 1e-14);
  }
  EXPECT_NEAR(closure_defect(p), 0.0, 1e-15);
  EXPECT_NEAR(icosin(p, 0), 1.0 / pi, 1e-15);
  EXPECT_NEAR(icosin(p, p.grid.nodes() - 1), 1.0 / pi, 1e-15);
}

TEST(Geometry, CellIntegralsKeepDigitsAtSmallSlope) {
  // The closed form divides by the slope; compare against long double.
  const long double phi0 = 0.7L, h = 0.01L;
  for (long double slope : {3.0L, 1e-3L, 1e-7L, 1e-12L}) {
    const long double c_ref = (std::sin(phi0 + slope * h) - std::sin(phi0)) / slope;
    const long double s_ref = (std::cos(phi0) - std::cos(phi0 + slope * h)) / slope;
    const double c = detail::cos_integral(0.7, static_cast<double>(slope), 0.01);
    const double s = detail::sin_integral(0.7, static_cast<double>(slope), 0.01);
    // long double itself loses ~1e-19/slope to cancellation.
    const double tol = 1e-16 + static_cast<double>(1e-19L / slope);
    EXPECT_NEAR(c, static_cast<double>(c_ref), tol) << "slope " << static_cast<double>(slope);
    EXPECT_NEAR(s, static_cast<double>(s_ref), tol) << "slope " << static_cast<double>(slope);
  }
  EXPECT_DOUBLE_EQ(detail::cos_integral(0.7, 0.0, 0.01), 0.01 * std::cos(0.7));
  EXPECT_DOUBLE_EQ(detail::sin_integral(0.7, 0.0, 0.01), 0.01 * std::sin(0.7));
}

TEST(Geometry, IcosAgainstAdaptiveQuadrature) {
  const WallProfile p = test::random_closed_profile(Grid(60), 1.3, 7);
  const ProfileGeometry geo = analyze(p);
  const Grid& g = p.grid;
  auto phi = [&](double x) {
    const int j = std::min(static_cast<int>(x / g.dx()), g.cells() - 1);
    return geo.phi_nodes[j] + p.dphi[j] * (x - g.node(j));
  };
  using boost::math::quadrature::gauss_kronrod;
  double acc = 0.0;
  for (int i = 1; i < g.nodes(); ++i) {
    // Integrate cell by cell so the kinks of phi sit on interval ends.
    acc += gauss_kronrod<double, 31>::integrate([&](double x) { return std::cos(phi(x)); },
                                                g.node(i - 1), g.node(i), 10, 1e-14);
    EXPECT_NEAR(geo.icos_nodes[i], acc, 1e-13) << "node " << i;
  }
}

TEST(Geometry, CurvaturesAgainstFiniteDifferences) {
  // Three-point circle through the reconstructed rings for kappa_s, and
  // sin(phi)/r with phi from central differences for kappa_theta.
  const WallProfile p = test::random_closed_profile(Grid(400), 2.0, 11, 0.1 * pi, 4);
  const Curvatures k = curvatures(p);
  const SurfaceMesh mesh = reconstruct(p, 8);
  double err_s = 0.0, err_t = 0.0;
  for (std::size_t i = 20; i + 20 < mesh.rings.size(); ++i) {
    const auto& a = mesh.rings[i - 1];
    const auto& b = mesh.rings[i];
    const auto& c = mesh.rings[i + 1];
    const double ab = std::hypot(b.r - a.r, b.z - a.z);
    const double bc = std::hypot(c.r - b.r, c.z - b.z);
    const double ca = std::hypot(a.r - c.r, a.z - c.z);
    const double cross = (b.r - a.r) * (c.z - a.z) - (b.z - a.z) * (c.r - a.r);
    const double kappa_fd = 2.0 * std::abs(cross) / (ab * bc * ca);
    err_s = std::max(err_s, std::abs(kappa_fd - k.kappa_s[i]) / k.kappa_s[i]);

    const double tangent = std::atan2(c.z - a.z, c.r - a.r);
    const double kt_fd = std::sin(tangent) / b.r;
    err_t = std::max(err_t, std::abs(kt_fd - k.kappa_theta[i]) / std::abs(k.kappa_theta[i]));
  }
  EXPECT_LT(err_s, 1e-3);
  EXPECT_LT(err_t, 1e-4);
}

TEST(Geometry, SpherePrincipalCurvaturesAreEqual) {
  const WallProfile p = WallProfile::sphere(Grid(40), 2.0);
  const Curvatures k = curvatures(p);
  for (int i = 0; i < p.grid.nodes(); ++i) {
    EXPECT_NEAR(k.kappa_s[i], pi / 2.0, 1e-13);
    EXPECT_NEAR(k.kappa_theta[i], pi / 2.0, 1e-12);
  }
}

TEST(Geometry, GaussBonnetOnRandomClosedProfiles) {
  for (int trial = 0; trial < 5; ++trial) {
    const WallProfile p = test::random_closed_profile(Grid(200), 1.0 + trial, 100 + trial);
    EXPECT_NEAR(gauss_bonnet_integral(p), 4.0 * pi, 1e-9);
  }
}

TEST(Geometry, ValidateRejectsFoldedProfile) {
  WallProfile p = WallProfile::sphere(Grid(10), 1.0);
  p.dphi[3] = -0.1;
  EXPECT_THROW(validate(p), ParametrizationLoss);
  p.dphi[3] = std::nan("");
  EXPECT_THROW(validate(p), Error);
}

TEST(Geometry, WallProfileRejectsWrongSize) {
  EXPECT_THROW(WallProfile(Grid(10), std::vector<double>(5, pi), 1.0), InvalidArgument);
}

TEST(Reconstruction, SphereIsRound) {
  const double L = 3.0;
  const WallProfile p = WallProfile::sphere(Grid(100), L);
  const SurfaceMesh mesh = reconstruct(p, 32);
  const double R = L / pi;
  for (const auto& v : mesh.vertices) {
    EXPECT_NEAR(std::hypot(v[0], v[1], v[2] - R), R, 1e-12);
  }
  EXPECT_NEAR(generatrix_arclength(mesh), L, 1e-12);
  EXPECT_TRUE(mesh.warnings.empty());
  // Two pole fans plus quads between the m interior rings.
  EXPECT_EQ(mesh.vertices.size(), 2u + 100u * 32u);
  EXPECT_EQ(mesh.faces.size(), 2u * 32u + 2u * 99u * 32u);
}

TEST(Reconstruction, OpenProfileWarns) {
  const std::pair<int, double> mode{1, 0.3};
  const WallProfile p = WallProfile::with_modes(Grid(50), 1.0, std::span(&mode, 1));
  const SurfaceMesh mesh = reconstruct(p, 16);
  EXPECT_GT(mesh.closure_defect, 1e-3);
  ASSERT_EQ(mesh.warnings.size(), 1u);
}

TEST(Reconstruction, ObjAndCsvOutput) {
  const WallProfile p = WallProfile::sphere(Grid(4), 1.0);
  const SurfaceMesh mesh = reconstruct(p, 3);
  std::ostringstream obj;
  write_obj(mesh, obj);
  int v = 0, f = 0;
  std::istringstream in(obj.str());
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++f;
  }
  EXPECT_EQ(v, static_cast<int>(mesh.vertices.size()));
  EXPECT_EQ(f, static_cast<int>(mesh.faces.size()));

  std::ostringstream csv;
  write_profile_csv(p, csv);
  std::istringstream rows(csv.str());
  std::string header;
  std::getline(rows, header);
  EXPECT_EQ(header, "x,dphi,phi,r,z");
  int n = 0;
  for (std::string line; std::getline(rows, line);) ++n;
  EXPECT_EQ(n, p.grid.cells());
}
