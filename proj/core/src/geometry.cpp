#include "morphosim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "morphosim/error.hpp"

namespace morphosim {

using std::numbers::pi;

namespace {

// Neumaier-compensated running sum; the far-pole values of Icos are divided
// by sin(phi) ~ dx, so accumulated rounding matters there.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

namespace detail {

double cos_integral(double phi0, double slope, double h) {
  const double a = slope * h;
  if (std::abs(a) < 1e-8) {
    return h * std::cos(phi0 + 0.5 * a) * (1.0 - a * a / 24.0);
  }
  return 2.0 * std::cos(phi0 + 0.5 * a) * std::sin(0.5 * a) / slope;
}

double sin_integral(double phi0, double slope, double h) {
  const double a = slope * h;
  if (std::abs(a) < 1e-8) {
    return h * std::sin(phi0 + 0.5 * a) * (1.0 - a * a / 24.0);
  }
  return 2.0 * std::sin(phi0 + 0.5 * a) * std::sin(0.5 * a) / slope;
}

}  // namespace detail

Grid::Grid(int m) : m_(m) {
  if (m < 1) {
    throw InvalidArgument("grid needs at least one interior cell, got m = " +
                          std::to_string(m));
  }
}

WallProfile::WallProfile(Grid g, std::vector<double> d, double len, double t)
    : grid(g), dphi(std::move(d)), length(len), time(t) {
  if (static_cast<int>(dphi.size()) != grid.cells()) {
    throw InvalidArgument("dphi has " + std::to_string(dphi.size()) +
                          " values, grid has " + std::to_string(grid.cells()) +
                          " cells");
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidArgument("generatrix length must be positive");
  }
}

WallProfile WallProfile::sphere(Grid g, double length) {
  return WallProfile(g, std::vector<double>(g.cells(), pi), length);
}

WallProfile WallProfile::with_modes(
    Grid g, double length, std::span<const std::pair<int, double>> modes) {
  std::vector<double> d(g.cells(), pi);
  for (int j = 0; j < g.cells(); ++j) {
    const double y = g.center(j);
    for (const auto& [k, a] : modes) d[j] += a * std::cos(k * pi * y);
  }
  return WallProfile(g, std::move(d), length);
}

double WallProfile::min_dphi() const {
  return *std::min_element(dphi.begin(), dphi.end());
}

double WallProfile::max_dphi() const {
  return *std::max_element(dphi.begin(), dphi.end());
}

void validate(const WallProfile& profile) {
  for (std::size_t j = 0; j < profile.dphi.size(); ++j) {
    const double s = profile.dphi[j];
    if (!std::isfinite(s)) {
      throw NumericalError("non-finite dphi in cell " + std::to_string(j));
    }
    if (s <= 0.0) {
      std::ostringstream msg;
      msg << "dphi = " << s << " <= 0 in cell " << j << " at t = "
          << profile.time;
      throw ParametrizationLoss(msg.str(), profile.time);
    }
  }
}

ProfileGeometry analyze(const WallProfile& profile) {
  const Grid& g = profile.grid;
  const int nc = g.cells();
  const int nn = g.nodes();
  const double dx = g.dx();
  const auto& s = profile.dphi;

  ProfileGeometry geo;
  geo.phi_nodes.resize(nn);
  geo.phi_centers.resize(nc);
  geo.icos_nodes.resize(nn);
  geo.icos_centers.resize(nc);
  geo.isin_nodes.resize(nn);

  CompensatedSum phi, ic, is;
  geo.phi_nodes[0] = 0.0;
  geo.icos_nodes[0] = 0.0;
  geo.isin_nodes[0] = 0.0;
  for (int j = 0; j < nc; ++j) {
    const double p0 = phi.value();
    geo.phi_centers[j] = p0 + 0.5 * dx * s[j];
    geo.icos_centers[j] = ic.value() + detail::cos_integral(p0, s[j], 0.5 * dx);
    phi.add(s[j] * dx);
    ic.add(detail::cos_integral(p0, s[j], dx));
    is.add(detail::sin_integral(p0, s[j], dx));
    geo.phi_nodes[j + 1] = phi.value();
    geo.icos_nodes[j + 1] = ic.value();
    geo.isin_nodes[j + 1] = is.value();
  }
  geo.closure_defect = geo.icos_nodes.back();

  geo.balanced_icos_nodes.resize(nn);
  geo.balanced_icos_centers.resize(nc);
  geo.icosin_centers.resize(nc);
  for (int i = 0; i < nn; ++i) {
    geo.balanced_icos_nodes[i] = geo.icos_nodes[i] - g.node(i) * geo.closure_defect;
  }
  geo.balanced_icos_nodes.front() = 0.0;
  geo.balanced_icos_nodes.back() = 0.0;
  for (int j = 0; j < nc; ++j) {
    geo.balanced_icos_centers[j] =
        geo.icos_centers[j] - g.center(j) * geo.closure_defect;
    geo.icosin_centers[j] =
        geo.balanced_icos_centers[j] / std::sin(geo.phi_centers[j]);
  }
  return geo;
}

std::vector<double> icos(const WallProfile& profile) {
  return analyze(profile).icos_nodes;
}

double icosin(const WallProfile& profile, int node) {
  const Grid& g = profile.grid;
  if (node < 0 || node >= g.nodes()) {
    throw InvalidArgument("node index out of range");
  }
  if (node == 0) return 1.0 / profile.dphi.front();
  if (node == g.nodes() - 1) return 1.0 / profile.dphi.back();
  const ProfileGeometry geo = analyze(profile);
  const double v = geo.icos_nodes[node] / std::sin(geo.phi_nodes[node]);
  if (!std::isfinite(v)) {
    throw NumericalError("Icosin is not finite at interior node " +
                         std::to_string(node));
  }
  return v;
}

double closure_defect(const WallProfile& profile) {
  return analyze(profile).closure_defect;
}

Curvatures curvatures(const WallProfile& profile) {
  const Grid& g = profile.grid;
  const int nn = g.nodes();
  const double L = profile.length;
  const auto& s = profile.dphi;
  const ProfileGeometry geo = analyze(profile);

  Curvatures k;
  k.kappa_s.resize(nn);
  k.kappa_theta.resize(nn);
  k.kappa_s.front() = s.front() / L;
  k.kappa_s.back() = s.back() / L;
  for (int i = 1; i < nn - 1; ++i) {
    k.kappa_s[i] = 0.5 * (s[i - 1] + s[i]) / L;
    k.kappa_theta[i] = std::sin(geo.phi_nodes[i]) / (L * geo.icos_nodes[i]);
  }
  k.kappa_theta.front() = k.kappa_s.front();
  k.kappa_theta.back() = k.kappa_s.back();
  return k;
}

double gauss_bonnet_integral(const WallProfile& profile) {
  // Inside a cell phi is linear, so kappa_s = dphi/L is constant and
  // kappa_theta * r = sin(phi)/L; the integrand K * 2 pi r * L is
  // 2 pi dphi sin(phi).
  const Grid& g = profile.grid;
  const double dx = g.dx();
  const ProfileGeometry geo = analyze(profile);
  double total = 0.0;
  for (int j = 0; j < g.cells(); ++j) {
    const double f0 = std::sin(geo.phi_nodes[j]);
    const double fm = std::sin(geo.phi_centers[j]);
    const double f1 = std::sin(geo.phi_nodes[j + 1]);
    total += 2.0 * pi * profile.dphi[j] * dx * (f0 + 4.0 * fm + f1) / 6.0;
  }
  return total;
}

SurfaceMesh reconstruct(const WallProfile& profile, int azimuthal_res,
                        double closure_tolerance) {
  if (azimuthal_res < 3) {
    throw InvalidArgument("azimuthal resolution must be at least 3");
  }
  const Grid& g = profile.grid;
  const int nn = g.nodes();
  const double L = profile.length;
  const ProfileGeometry geo = analyze(profile);

  SurfaceMesh mesh;
  mesh.azimuthal_res = azimuthal_res;
  mesh.rings.resize(nn);
  for (int i = 0; i < nn; ++i) {
    mesh.rings[i] = {L * geo.icos_nodes[i], L * geo.isin_nodes[i],
                     geo.phi_nodes[i]};
  }
  mesh.closure_defect = std::abs(geo.closure_defect);
  if (mesh.closure_defect > closure_tolerance) {
    std::ostringstream msg;
    msg << "closure defect " << mesh.closure_defect << " exceeds tolerance "
        << closure_tolerance;
    mesh.warnings.push_back(msg.str());
  }

  // Pole rings collapse to one vertex each.
  mesh.vertices.push_back({0.0, 0.0, mesh.rings.front().z});
  for (int i = 1; i < nn - 1; ++i) {
    for (int a = 0; a < azimuthal_res; ++a) {
      const double th = 2.0 * pi * a / azimuthal_res;
      const auto& rp = mesh.rings[i];
      mesh.vertices.push_back({rp.r * std::cos(th), rp.r * std::sin(th), rp.z});
    }
  }
  mesh.vertices.push_back({0.0, 0.0, mesh.rings.back().z});

  const int last = static_cast<int>(mesh.vertices.size()) - 1;
  const auto ring_vertex = [&](int ring, int a) {
    return 1 + (ring - 1) * azimuthal_res + (a % azimuthal_res);
  };
  for (int a = 0; a < azimuthal_res; ++a) {
    mesh.faces.push_back({0, ring_vertex(1, a + 1), ring_vertex(1, a)});
  }
  for (int i = 1; i < nn - 2; ++i) {
    for (int a = 0; a < azimuthal_res; ++a) {
      const int v00 = ring_vertex(i, a);
      const int v01 = ring_vertex(i, a + 1);
      const int v10 = ring_vertex(i + 1, a);
      const int v11 = ring_vertex(i + 1, a + 1);
      mesh.faces.push_back({v00, v01, v11});
      mesh.faces.push_back({v00, v11, v10});
    }
  }
  for (int a = 0; a < azimuthal_res; ++a) {
    mesh.faces.push_back({ring_vertex(nn - 2, a), ring_vertex(nn - 2, a + 1), last});
  }
  return mesh;
}

double generatrix_arclength(const SurfaceMesh& mesh) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < mesh.rings.size(); ++i) {
    const auto& p = mesh.rings[i];
    const auto& q = mesh.rings[i + 1];
    const double chord = std::hypot(q.r - p.r, q.z - p.z);
    const double half_turn = 0.5 * std::abs(q.phi - p.phi);
    const double factor =
        half_turn < 1e-8 ? 1.0 + half_turn * half_turn / 6.0
                         : half_turn / std::sin(half_turn);
    total += chord * factor;
  }
  return total;
}

void write_obj(const SurfaceMesh& mesh, std::ostream& out) {
  out << "# axisymmetric wall, " << mesh.rings.size() << " rings x "
      << mesh.azimuthal_res << "\n";
  out.precision(12);
  for (const auto& v : mesh.vertices) {
    out << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  }
  for (const auto& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

void write_profile_csv(const WallProfile& profile, std::ostream& out) {
  const Grid& g = profile.grid;
  const double dx = g.dx();
  const double L = profile.length;
  const ProfileGeometry geo = analyze(profile);
  out << "x,dphi,phi,r,z\n";
  out.precision(17);
  for (int j = 0; j < g.cells(); ++j) {
    const double z =
        geo.isin_nodes[j] + detail::sin_integral(geo.phi_nodes[j], profile.dphi[j], 0.5 * dx);
    out << g.center(j) << ',' << profile.dphi[j] << ',' << geo.phi_centers[j]
        << ',' << L * geo.icos_centers[j] << ',' << L * z << '\n';
  }
}

}  // namespace morphosim
