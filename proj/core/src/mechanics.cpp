#include "morphosim/mechanics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "morphosim/error.hpp"

namespace morphosim {

using std::numbers::pi;

CouplingFunction CouplingFunction::power(double exponent) {
  if (!std::isfinite(exponent)) throw InvalidArgument("coupling exponent must be finite");
  return CouplingFunction(
      [exponent](double mu) { return exponent == 0.0 ? 1.0 : std::pow(mu, exponent); },
      [exponent](double mu) {
        return exponent == 0.0 ? 0.0 : exponent * std::pow(mu, exponent - 1.0);
      },
      "power", exponent);
}

CouplingFunction CouplingFunction::custom(std::function<double(double)> f,
                                          std::function<double(double)> df,
                                          std::string name) {
  if (!f || !df) throw InvalidArgument("coupling function and derivative are required");
  return CouplingFunction(std::move(f), std::move(df), std::move(name), std::nullopt);
}

double degree_of_nonlinearity(const CouplingFunction& F, double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("degree of nonlinearity needs mu > 0");
  const double value = F(mu);
  if (value == 0.0) throw NumericalError("F(mu) = 0 in degree of nonlinearity");
  return F.derivative(mu) * mu / value;
}

void ModelParams::validate() const {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw InvalidArgument(msg);
  };
  require(P > 0.0 && std::isfinite(P), "P: turgor pressure must be positive");
  require(nu > 0.0 && nu < 1.0, "nu: Poisson ratio must lie in (0, 1)");
  if (inflating) {
    require(gamma > 0.0, "gamma: must be positive in inflating mode");
    require(alpha > 0.0, "alpha: must be positive in inflating mode");
    require(beta > 0.0, "beta: must be positive in inflating mode");
  } else {
    require(sigma > 0.0 && std::isfinite(sigma), "sigma: must be positive");
  }
  const double f1 = F(1.0);
  require(std::isfinite(f1) && f1 > 0.0, "F: must be positive at mu = 1");
}

double ModelParams::reduced_diffusion(double L) const {
  if (!inflating) return sigma;
  return gamma * pi * pi / (alpha * L * L);
}

double ModelParams::radial_density(double L) const {
  if (!inflating) return 1.0;
  return dim == Dimension::three ? beta * pi * pi / (alpha * L * L) : beta * pi / (alpha * L);
}

double ModelParams::radial_extensibility(double L) const {
  return inflating ? F(radial_density(L)) : 1.0;
}

std::vector<double> ModelParams::extensibility(const GrowthField& field, double L) const {
  std::vector<double> psi(field.mu.size());
  if (inflating) {
    const double scale = radial_density(L);
    for (std::size_t j = 0; j < psi.size(); ++j) psi[j] = F(scale * field.mu[j]);
  } else {
    const double f1 = F(1.0);
    for (std::size_t j = 0; j < psi.size(); ++j) psi[j] = F(field.mu[j]) / f1;
  }
  for (std::size_t j = 0; j < psi.size(); ++j) {
    if (!std::isfinite(psi[j])) {
      throw NumericalError("non-finite extensibility in cell " + std::to_string(j));
    }
  }
  return psi;
}

Stresses stresses_from_curvatures(const Curvatures& k, double P) {
  Stresses st;
  const std::size_t n = k.kappa_s.size();
  st.sigma_s.resize(n);
  st.sigma_theta.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    st.sigma_s[i] = P / (2.0 * k.kappa_theta[i]);
    st.sigma_theta[i] = st.sigma_s[i] * (2.0 - k.kappa_s[i] / k.kappa_theta[i]);
  }
  return st;
}

Stresses stresses(const WallProfile& profile, double P) {
  return stresses_from_curvatures(curvatures(profile), P);
}

Lambdas lambdas(const WallProfile& profile, std::span<const double> psi,
                const ModelParams& params) {
  return lambdas(profile, analyze(profile), psi, params);
}

Lambdas lambdas(const WallProfile& profile, const ProfileGeometry& geo,
                std::span<const double> psi, const ModelParams& params) {
  const std::size_t n = profile.dphi.size();
  if (psi.size() != n) throw InvalidArgument("psi must live on the cell centres");
  const double nu = params.nu;
  Lambdas out;
  out.lambda1.resize(n);
  out.lambda2.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double I = geo.icosin_centers[j];
    if (!std::isfinite(I)) {
      throw NumericalError("non-finite Icosin in cell " + std::to_string(j));
    }
    const double s = profile.dphi[j];
    const double pre = 0.5 * params.P * profile.length * psi[j];
    const double I2 = I * I;
    const double I3 = I2 * I;
    out.lambda1[j] = pre * ((1.0 - 2.0 * nu) * I + 2.0 * (nu - 1.0) * I2 * s + I3 * s * s);
    out.lambda2[j] = pre * ((2.0 - nu) * I2 - I3 * s);
  }
  return out;
}

Velocities recover_velocities(const WallProfile& profile, std::span<const double> psi,
                              const ModelParams& params) {
  const Grid& g = profile.grid;
  const int nn = g.nodes();
  const double L = profile.length;
  Velocities v;
  v.v_n.assign(nn, 0.0);
  v.v_tau.assign(nn, 0.0);

  auto psi_node = [&](int i) {
    if (i == 0) return psi.front();
    if (i == nn - 1) return psi.back();
    return 0.5 * (psi[i - 1] + psi[i]);
  };

  if (params.dim == Dimension::two) {
    for (int i = 0; i < nn; ++i) {
      const double s = i == 0 ? profile.dphi.front()
                       : i == nn - 1 ? profile.dphi.back()
                                     : 0.5 * (profile.dphi[i - 1] + profile.dphi[i]);
      v.v_n[i] = params.P * psi_node(i) * L * L / (s * s);
    }
    return v;
  }

  const ProfileGeometry geo = analyze(profile);
  const Lambdas lam = lambdas(profile, geo, psi, params);
  const Curvatures k = curvatures(profile);
  const Stresses st = stresses_from_curvatures(k, params.P);

  // v_tau = sin(phi) int_0^x L Lambda1 / sin(phi); Lambda1 carries a sin
  // factor near the poles, so the integrand is finite on the centres.
  // v_n = H - cot(phi) v_tau from the hoop kinematics; cot(phi) v_tau is
  // formed as cos(phi) times the integral. This sign is the one the
  // evolution equation is built on.
  std::vector<double> integral(nn, 0.0);
  for (int i = 1; i < nn; ++i) {
    integral[i] = integral[i - 1] +
                  L * lam.lambda1[i - 1] / std::sin(geo.phi_centers[i - 1]) * g.dx();
    v.v_tau[i] = std::sin(geo.phi_nodes[i]) * integral[i];
  }
  v.v_tau.back() = 0.0;
  for (int i = 0; i < nn; ++i) {
    const double strain_theta =
        psi_node(i) * (st.sigma_theta[i] - params.nu * st.sigma_s[i]);
    v.v_n[i] = strain_theta / k.kappa_theta[i] - std::cos(geo.phi_nodes[i]) * integral[i];
  }
  return v;
}

}  // namespace morphosim
